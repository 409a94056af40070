import logging
import sys

import click
import pandas as pd
from tabulate import tabulate

from config import load_config
from runner import bench, measure_both, run_scenario
from src.data import resolve_timing_table
from src.executor import build_kernel_graph, kernel_order, optimize_assignment, write_timings
from src.executor.graph import INDICATOR
from src.executor.timings import HOMOGENEOUS, read_totals
from utils.logger import setup_component_loggers
from utils.reporter import render_report

logger = logging.getLogger("Runner")


def _configure(level: str = "INFO") -> None:
    setup_component_loggers(level=getattr(logging, level))


def _fail(e: Exception) -> None:
    logger.exception(f"❌ 예외 발생: {e}")
    sys.exit(1)


@click.group()
def cli():
    """p-adaptive DG shallow water solver + two-lane kernel scheduler"""


@cli.command()
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
def run(config_path):
    """설정 파일대로 시나리오 실행"""
    try:
        config = load_config(config_path)
        _configure(config.log_level)
        logger.info("🔧 시스템 실행 시작")
        report, snapshots = run_scenario(config)
        click.echo(render_report(report))
        for path in snapshots:
            click.echo(f"snapshot: {path}")
    except Exception as e:
        _fail(e)


@cli.command()
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None, help="timing CSV 저장 경로")
def measure(config_path, out_path):
    """두 lane 각각에서 kernel 별 시간 측정"""
    try:
        config = load_config(config_path)
        _configure(config.log_level)
        timings, reports = measure_both(config)
        for report in reports:
            click.echo(render_report(report))
        if out_path:
            write_timings(timings, out_path, p_pair=config.p_pair, distribution=HOMOGENEOUS)
    except Exception as e:
        _fail(e)


@cli.command()
@click.argument("timings", type=str)
@click.option("--p-pair", default="0-1", show_default=True)
@click.option("--unseparated", is_flag=True, help="비분리 그래프 (edge, elem_rhs)")
@click.option("--affinity/--no-affinity", default=False, show_default=True,
              help="같은 차수 수준의 kernel 을 한 lane 에 묶어 탐색")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None, help="배정 CSV 저장 경로")
def optimize(timings, p_pair, unseparated, affinity, out_path):
    """timing CSV (또는 fixture:<name>) 로부터 최적 lane 배정"""
    try:
        _configure()
        table = resolve_timing_table(timings, p_pair)
        graph = build_kernel_graph(separated=not unseparated, dynamic=INDICATOR in table.kernels())
        schedule = optimize_assignment(graph, table, affinity=affinity)

        rows = [(k, lane, table.mean(k, lane)) for k, lane in schedule.assignment.items()]
        click.echo(tabulate(rows, headers=["kernel", "lane", "mean_ms"], tablefmt="github", floatfmt=".2f"))
        click.echo(f"\n예측 makespan: {schedule.makespan:.2f} ms")
        kernels = kernel_order(graph)
        click.echo("단일 lane 예측: " + ", ".join(f"{lane} {table.total(lane, kernels):.2f} ms" for lane in ("A", "B")))
        if not timings.startswith("fixture:"):
            totals = read_totals(timings, p_pair)
            if totals:
                click.echo(tabulate([(d, lane, v) for (d, lane), v in sorted(totals.items())],
                                    headers=["distribution", "lane", "measured_total_ms"], tablefmt="github"))
        if out_path:
            df = pd.DataFrame(rows, columns=["kernel", "lane", "mean_ms"])
            df["predicted_makespan_ms"] = schedule.makespan
            df.to_csv(out_path, index=False)
    except Exception as e:
        _fail(e)


@cli.command("bench")
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--fractions", default="8,16,32,64", show_default=True, help="정적 고차 비율 1/k 의 k 목록")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
def bench_command(config_path, fractions, out_path):
    """비율별 동종 A / 동종 B / 이종 / 비분리 비교표"""
    try:
        config = load_config(config_path)
        _configure(config.log_level)
        ks = [int(k) for k in fractions.split(",") if k.strip()]
        df = bench(config, ks)
        click.echo(tabulate(df, headers="keys", tablefmt="github", showindex=False, floatfmt=".3f"))
        if out_path:
            df.to_csv(out_path, index=False)
    except Exception as e:
        _fail(e)


if __name__ == "__main__":
    cli()
