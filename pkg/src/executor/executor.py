import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import networkx as nx
import numpy as np

from src.dg.diagnostics import total_mass
from src.errors import (ConfigError, DepthDegeneracyError, InvariantViolationError, LaneExecutionError,
                        NonFiniteStateError)
from src.executor.graph import INDICATOR, kernel_order, parallel_kernels, sequential_kernels
from src.executor.kernels import KERNELS, SolverContext
from src.executor.lane_interface import LaneInterface
from src.executor.scheduler import Schedule
from src.executor.timings import KernelStat, LaneTimings
from src.timestep.stepper import Stepper
from utils.benchmarks import KernelTimer, timer_resolution_ms

logger = logging.getLogger("Executor")

# lane 래핑 없이 그대로 전달하는 수치/설정 오류
PASSTHROUGH = (DepthDegeneracyError, InvariantViolationError, NonFiniteStateError, ConfigError)


@dataclass
class TimingReport:
    """
    한 실행의 측정 결과

    :param substep_ms: substep 별 wall time
    :param kernel_stats: kernel x lane 측정치 (동기화 측정일 때)
    """

    mode: str
    schedule: Optional[Schedule] = None
    substep_ms: List[float] = field(default_factory=list)
    kernel_stats: LaneTimings = field(default_factory=LaneTimings)
    clamp_count: int = 0
    mass_initial: float = 0.0
    mass_final: float = 0.0
    adaptivity: List[dict] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def mean_substep_ms(self) -> float:
        return float(np.mean(self.substep_ms)) if self.substep_ms else 0.0

    @property
    def predicted_ms(self) -> Optional[float]:
        return self.schedule.makespan if self.schedule is not None else None

    @property
    def mass_drift(self) -> float:
        if self.mass_initial == 0.0:
            return abs(self.mass_final)
        return abs(self.mass_final - self.mass_initial) / abs(self.mass_initial)


class KernelExecutor:
    """
    kernel 그래프를 lane 위에서 substep 단위로 실행

    병렬 phase 의 kernel 은 lane 별로 제출 순서대로 직렬 실행되고, 서로 다른 lane 은 동시에 돈다.
    rk_substep_additions 전에 barrier 가 있다.
    """

    def __init__(self, graph: nx.DiGraph, ctx: SolverContext, lanes: Dict[str, LaneInterface]):
        self.graph = graph
        self.ctx = ctx
        self.lanes = lanes
        self._parallel = parallel_kernels(graph)
        self._sequential = sequential_kernels(graph)

    def _call(self, kernel: str, lane: LaneInterface) -> None:
        try:
            KERNELS[kernel](self.ctx, lane.chunk_size)
        except PASSTHROUGH:
            raise
        except Exception as e:
            raise LaneExecutionError(kernel, lane.name, e) from e

    def _run(self, kernel: str, schedule: Schedule) -> None:
        lane = self.lanes[schedule.lane_of(kernel)]
        lane.submit(self._call, kernel, lane).result()

    def run_substep(self, schedule: Schedule) -> None:
        submitted = []
        for k in self._parallel:
            lane = self.lanes[schedule.lane_of(k)]
            submitted.append(lane.submit(self._call, k, lane))
        # barrier
        for future in submitted:
            future.result()
        for k in self._sequential:
            self._run(k, schedule)

    def run_substep_timed(self, schedule: Schedule, timer: KernelTimer) -> None:
        """kernel 마다 동기화하며 측정 (겹침 없음)"""
        for k in kernel_order(self.graph):
            if k == INDICATOR and self.ctx.stage != 2:
                continue
            start = time.perf_counter_ns()
            self._run(k, schedule)
            timer.record(k, schedule.lane_of(k), time.perf_counter_ns() - start)


def measure_kernels(stepper: Stepper, lane: str, warmup_substeps: int, measured_substeps: int) -> TimingReport:
    """
    모든 kernel 을 한 lane 에 두고 kernel 마다 동기화하며 측정, warmup 은 통계에서 제외
    """
    if measured_substeps < 1 or warmup_substeps < 0:
        raise ValueError("measured_substeps >= 1, warmup_substeps >= 0 이어야 합니다.")
    executor = stepper.executor
    schedule = Schedule.homogeneous(executor.graph, lane)
    report = TimingReport(mode=f"measure_{lane}", schedule=schedule)
    report.mass_initial = total_mass(stepper.ctx.state, stepper.ctx.tables)

    for _ in range(warmup_substeps):
        stepper.substep(schedule)
    timer = KernelTimer()
    for _ in range(measured_substeps):
        start = time.perf_counter_ns()
        stepper.substep(schedule, timer)
        report.substep_ms.append((time.perf_counter_ns() - start) / 1e6)

    for (kernel, lane_name), (mean, std, count) in timer.summary().items():
        report.kernel_stats.set(kernel, lane_name, KernelStat(mean, std, count))
    _finish(report, stepper)

    resolution = timer_resolution_ms()
    smallest = min((s.mean_ms for s in report.kernel_stats.stats.values()), default=0.0)
    if smallest > 0.0 and resolution > 0.01 * smallest:
        message = f"타이머 해상도 {resolution:.2e} ms 가 최소 kernel 평균 {smallest:.3e} ms 의 1% 를 넘습니다."
        report.warnings.append(message)
        logger.warning(f"⚠️ {message}")
    logger.info(f"✅ lane {lane} 측정 완료: {measured_substeps} substeps, 평균 {report.mean_substep_ms:.3f} ms")
    return report


def execute_schedule(stepper: Stepper, schedule: Schedule, steps: int, mode: str = "heterogeneous") -> TimingReport:
    """배정대로 steps 만큼 실행 (같은 phase 의 다른 lane kernel 은 겹쳐 실행)"""
    report = TimingReport(mode=mode, schedule=schedule)
    report.mass_initial = total_mass(stepper.ctx.state, stepper.ctx.tables)
    report.substep_ms = stepper.run(schedule, steps)
    _finish(report, stepper)
    logger.info(f"✅ {mode} 실행 완료: {steps} steps, substep 평균 {report.mean_substep_ms:.3f} ms")
    return report


def _finish(report: TimingReport, stepper: Stepper) -> None:
    ctx = stepper.ctx
    report.mass_final = total_mass(ctx.state, ctx.tables)
    report.clamp_count = ctx.state.clamp_count
    report.adaptivity = [s.__dict__.copy() for s in ctx.order_field.history]
