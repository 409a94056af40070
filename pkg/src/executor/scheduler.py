import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from src.executor.graph import kernel_order, parallel_kernels, sequential_kernels
from src.executor.timings import LaneTimings

logger = logging.getLogger("Scheduler")

LANES = ("A", "B")


@dataclass(frozen=True)
class Schedule:
    """kernel -> lane 배정과 예측 makespan [ms]"""

    assignment: Dict[str, str]
    makespan: float

    def lane_of(self, kernel: str) -> str:
        return self.assignment[kernel]

    def kernels_on(self, lane: str) -> List[str]:
        return [k for k, v in self.assignment.items() if v == lane]

    @classmethod
    def homogeneous(cls, graph: nx.DiGraph, lane: str, timings: LaneTimings = None) -> "Schedule":
        assignment = {k: lane for k in kernel_order(graph)}
        span = makespan(graph, assignment, timings) if timings is not None else 0.0
        return cls(assignment=assignment, makespan=span)


def makespan(graph: nx.DiGraph, assignment: Dict[str, str], timings: LaneTimings) -> float:
    """
    병렬 phase: lane 별 합의 최댓값, 이후 순차 kernel 은 배정된 lane 의 시간을 더한다
    """
    phase = {lane: 0.0 for lane in LANES}
    for k in parallel_kernels(graph):
        phase[assignment[k]] += timings.mean(k, assignment[k])
    total = max(phase.values())
    for k in sequential_kernels(graph):
        total += timings.mean(k, assignment[k])
    return total


def _feasible(kernels: Sequence[str], lanes: Tuple[str, ...], groups) -> bool:
    position = {k: i for i, k in enumerate(kernels)}
    for group in groups:
        if len({lanes[position[k]] for k in group}) > 1:
            return False
    return True


def enumerate_assignments(kernels: Sequence[str]):
    """
    모든 2^n 배정, lane A 개수가 적은 순 (동률이면 B 쪽 배정이 먼저 나온다)
    """
    n = len(kernels)
    masks = sorted(range(1 << n), key=lambda m: (bin(m).count("1"), m))
    for mask in masks:
        yield tuple("A" if mask >> i & 1 else "B" for i in range(n))


def optimize_assignment(graph: nx.DiGraph, timings: LaneTimings, affinity: bool = False) -> Schedule:
    """
    makespan 최소 배정을 완전 탐색으로 찾는다

    :param affinity: True 이면 graph.graph["affinity"] 그룹을 한 lane 에 묶는다 (기본은 제약 없는 최적)
    :raises TimingInputError: timing 누락
    """
    kernels = kernel_order(graph)
    timings.require(kernels, LANES)
    groups = graph.graph.get("affinity", []) if affinity else []

    best = None
    checked = 0
    for lanes in enumerate_assignments(kernels):
        if groups and not _feasible(kernels, lanes, groups):
            continue
        checked += 1
        assignment = dict(zip(kernels, lanes))
        span = makespan(graph, assignment, timings)
        if best is None or span < best.makespan:
            best = Schedule(assignment=assignment, makespan=span)

    logger.info(f"✅ 최적 배정: makespan={best.makespan:.2f} ms "
                f"(A: {best.kernels_on('A')}, 후보 {checked}개)")
    return best
