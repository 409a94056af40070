import os
from typing import Dict

import pandas as pd
from tabulate import tabulate

from src.executor.executor import TimingReport


def generate_report(report: TimingReport) -> Dict:
    """
    실행 결과 요약 리포트 생성

    :param report: execute_schedule / measure_kernels 결과
    :return: 리포트 딕셔너리
    """
    schedule = report.schedule
    summary = {
        "실행 모드": report.mode,
        "substep 수": len(report.substep_ms),
        "substep 평균": f"{report.mean_substep_ms:.3f} ms",
        "예측 makespan": f"{report.predicted_ms:.3f} ms" if report.predicted_ms else "-",
        "초기 질량": f"{report.mass_initial:.12g}",
        "최종 질량": f"{report.mass_final:.12g}",
        "질량 상대 변화": f"{report.mass_drift:.3e}",
        "min depth clamp": report.clamp_count,
    }
    if schedule is not None:
        summary["lane A"] = ", ".join(schedule.kernels_on("A")) or "-"
        summary["lane B"] = ", ".join(schedule.kernels_on("B")) or "-"
    if report.adaptivity:
        fractions = [s["fraction"] for s in report.adaptivity]
        summary["고차 비율 (평균)"] = f"{sum(fractions) / len(fractions):.4f}"
        summary["고차 비율 (최종)"] = f"{fractions[-1]:.4f}"
    if report.warnings:
        summary["경고"] = report.warnings
    return summary


def render_report(report: TimingReport) -> str:
    """터미널 출력용 표"""
    summary = generate_report(report)
    rows = [(k, "\n".join(v) if isinstance(v, list) else v) for k, v in summary.items()]
    text = tabulate(rows, tablefmt="simple")
    if len(report.kernel_stats):
        stats = report.kernel_stats.to_frame().drop(columns=["p_pair", "distribution"])
        text += "\n\n" + tabulate(stats, headers="keys", tablefmt="github", showindex=False, floatfmt=".4f")
    return text


def report_frame(report: TimingReport) -> pd.DataFrame:
    """substep 별 wall time + 예측값 (CSV 저장용)"""
    return pd.DataFrame({
        "substep": range(len(report.substep_ms)),
        "mode": report.mode,
        "wall_ms": report.substep_ms,
        "predicted_ms": report.predicted_ms,
    })


def write_report(report: TimingReport, path: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    report_frame(report).to_csv(path, index=False)
    return path
