import logging
import os
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import networkx as nx
import numpy as np
import pandas as pd

from config import RunConfig
from src.adaptivity import IndicatorThresholds, OrderField
from src.basis import BasisTables, ReferenceBasis, build_reference_basis, build_tensors, num_basis, project_function
from src.data import resolve_timing_table
from src.dg import ElevationForcing, PhysParams, State, element_means
from src.executor import (KernelExecutor, LaneTimings, Schedule, SolverContext, TimingReport, build_kernel_graph,
                          execute_schedule, LaneInterface, make_lanes, measure_kernels, optimize_assignment,
                          parallel_kernels)
from src.mesh import Mesh, generate_perturbed_uniform_mesh
from src.scenarios import BaseScenario, get_scenario
from src.timestep import Stepper
from utils.reporter import write_report

logger = logging.getLogger("Runner")


@dataclass
class Simulation:
    config: RunConfig
    scenario: BaseScenario
    mesh: Mesh
    basis: ReferenceBasis
    tables: BasisTables
    graph: nx.DiGraph
    ctx: SolverContext

    @property
    def state(self) -> State:
        return self.ctx.state

    def stepper(self, lanes) -> Stepper:
        return Stepper(KernelExecutor(self.graph, self.ctx, lanes))


def initial_order_field(config: RunConfig, n_elements: int) -> OrderField:
    if not config.adaptive:
        return OrderField.uniform(n_elements, config.full_order)
    if config.fraction is not None:
        return OrderField.static_fraction(n_elements, config.base_order, config.full_order, config.fraction)
    # dynamic 이거나 fraction 이 없으면 모두 base 에서 시작
    return OrderField(base=config.base_order, full=config.full_order,
                      orders=np.full(n_elements, config.base_order))


def phys_params(config: RunConfig) -> PhysParams:
    return PhysParams(g=config.g, f_c=config.f_c, friction_law=config.friction_law,
                      friction_k=config.friction_k, force_x=config.force_x, force_y=config.force_y,
                      h_min=config.h_min)


def build_simulation(config: RunConfig, forcing: Optional[ElevationForcing] = None) -> Simulation:
    """
    격자, basis 텐서, 초기 상태 (L2 투영), kernel 그래프를 준비하고 초기 상태에 min depth -> uH=q -> BC 적용
    """
    logger.info(f"🔧 시뮬레이션 준비: {config.scenario}, nx={config.nx}, p={config.p_pair}")
    scenario = get_scenario(config.scenario, config.bathymetry)
    mesh = generate_perturbed_uniform_mesh(config.nx, config.domain, config.perturbation, config.seed,
                                           scenario.boundary_rule())
    basis = build_reference_basis(config.full_order)
    tables = build_tensors(basis, mesh)
    k = num_basis(config.full_order)

    hb = project_function(scenario.bathymetry_field, mesh, basis)
    mesh = mesh.with_bathymetry(hb)
    state = State.allocate(mesh.n_elements, mesh.n_edges, mesh.boundary_edges.size, k, hb)
    state.c[:, 0] = project_function(scenario.initial_elevation, mesh, basis)
    state.c[:, 1] = project_function(lambda x, y: scenario.initial_momentum(x, y)[0], mesh, basis)
    state.c[:, 2] = project_function(lambda x, y: scenario.initial_momentum(x, y)[1], mesh, basis)

    order_field = initial_order_field(config, mesh.n_elements)
    state.c *= order_field.mode_mask(k)

    separated = config.adaptive and not config.unseparated
    graph = build_kernel_graph(separated=separated, dynamic=config.dynamic)
    thresholds = (IndicatorThresholds(config.theta_refine, config.theta_coarsen, config.max_fraction)
                  if config.dynamic else None)
    ctx = SolverContext(mesh=mesh, tables=tables, params=phys_params(config), order_field=order_field,
                        state=state, dt=config.dt, flux_kernels=parallel_kernels(graph),
                        forcing=forcing or scenario.forcing(), thresholds=thresholds)
    ctx.prime()
    logger.info(f"✅ 준비 완료: {mesh.n_elements} elements, 고차 {order_field.full_count()}개, "
                f"kernels={graph.number_of_nodes()}")
    return Simulation(config, scenario, mesh, basis, tables, graph, ctx)


def write_snapshot(sim: Simulation, path: str) -> str:
    """element_id,cx,cy,xi_mean,U_mean,V_mean,order"""
    means = element_means(sim.state, sim.tables)
    centroids = sim.mesh.centroids()
    df = pd.DataFrame({
        "element_id": np.arange(sim.mesh.n_elements),
        "cx": centroids[:, 0],
        "cy": centroids[:, 1],
        "xi_mean": means["xi_mean"],
        "U_mean": means["U_mean"],
        "V_mean": means["V_mean"],
        "order": sim.ctx.order_field.orders,
    })
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    df.to_csv(path, index=False)
    logger.info(f"✅ snapshot 저장: {path}")
    return path


def _t0_path(path: str) -> str:
    root, ext = os.path.splitext(path)
    return f"{root}_t0{ext or '.csv'}"


@contextmanager
def open_lanes(config: RunConfig) -> Iterator[Dict[str, LaneInterface]]:
    lanes = make_lanes(config.lane_a_chunk, config.lane_b_chunk)
    try:
        yield lanes
    finally:
        for lane in lanes.values():
            lane.shutdown()


def measure(config: RunConfig, lane: str) -> TimingReport:
    """새 시뮬레이션에서 한 lane 의 kernel 측정"""
    sim = build_simulation(config)
    with open_lanes(config) as lanes:
        return measure_kernels(sim.stepper(lanes), lane, config.warmup_substeps, config.measured_substeps)


def measure_both(config: RunConfig) -> Tuple[LaneTimings, List[TimingReport]]:
    reports = [measure(config, lane) for lane in ("A", "B")]
    return reports[0].kernel_stats.merge(reports[1].kernel_stats), reports


def select_schedule(config: RunConfig, graph: nx.DiGraph) -> Tuple[Schedule, List[str]]:
    """mode 에 맞는 배정, 부가 경고 목록"""
    warnings: List[str] = []
    if config.mode == "lane_A":
        return Schedule.homogeneous(graph, "A"), warnings
    if config.mode == "lane_B":
        return Schedule.homogeneous(graph, "B"), warnings
    if config.mode == "heterogeneous":
        timings = resolve_timing_table(config.timings_csv, config.p_pair)
    else:
        timings, reports = measure_both(config)
        for r in reports:
            warnings.extend(r.warnings)
    return optimize_assignment(graph, timings, affinity=config.affinity), warnings


def run_scenario(config: RunConfig) -> Tuple[TimingReport, List[str]]:
    """
    설정대로 실행하고 snapshot / report 를 기록

    :return: (TimingReport, 작성된 snapshot 경로)
    """
    sim = build_simulation(config)
    schedule, warnings = select_schedule(config, sim.graph)
    snapshots: List[str] = []
    if config.snapshot_csv:
        snapshots.append(write_snapshot(sim, _t0_path(config.snapshot_csv)))

    with open_lanes(config) as lanes:
        report = execute_schedule(sim.stepper(lanes), schedule, config.steps, mode=config.mode)
    report.warnings.extend(warnings)

    if config.snapshot_csv:
        snapshots.append(write_snapshot(sim, config.snapshot_csv))
    if config.report_csv:
        write_report(report, config.report_csv)
    return report, snapshots


def bench(config: RunConfig, fractions: Iterable[int] = (8, 16, 32, 64)) -> pd.DataFrame:
    """
    정적 적응 비율별 비교: 동종 A, 동종 B, 최적 이종, 비분리 (더 빠른 lane)
    """
    rows = []
    substeps = config.measured_substeps
    steps = max(1, substeps // 2)
    for fraction in fractions:
        cfg = config.model_copy(update={"scenario": "dam_break_static", "fraction": fraction,
                                        "unseparated": False})
        timings, reports = measure_both(cfg)
        graph = build_kernel_graph(separated=True, dynamic=False)
        schedule = optimize_assignment(graph, timings, affinity=cfg.affinity)

        hetero = _timed_run(cfg, schedule, steps)
        faster = "A" if reports[0].mean_substep_ms <= reports[1].mean_substep_ms else "B"
        flat_cfg = cfg.model_copy(update={"unseparated": True})
        flat_graph = build_kernel_graph(separated=False, dynamic=False)
        flat = _timed_run(flat_cfg, Schedule.homogeneous(flat_graph, faster), steps)

        rows.append({
            "fraction": f"1/{fraction}",
            "homogeneous_A_ms": reports[0].mean_substep_ms,
            "homogeneous_B_ms": reports[1].mean_substep_ms,
            "predicted_ms": schedule.makespan,
            "heterogeneous_ms": hetero.mean_substep_ms,
            "unseparated_ms": flat.mean_substep_ms,
            "unseparated_lane": faster,
            "lane_A_kernels": ",".join(schedule.kernels_on("A")),
        })
    return pd.DataFrame(rows)


def _timed_run(config: RunConfig, schedule: Schedule, steps: int) -> TimingReport:
    sim = build_simulation(config)
    with open_lanes(config) as lanes:
        return execute_schedule(sim.stepper(lanes), schedule, steps, mode="bench")
