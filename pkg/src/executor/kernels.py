"""
substep kernel 구현과 solver 공유 상태

병렬 phase 의 kernel 은 각자 residual 버퍼에 쓰고, rk_substep_additions 가
고정된 순서로 합친다. 순차 kernel 은 state 를 직접 갱신한다.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from src.adaptivity.indicator import IndicatorThresholds, indicator_kernel
from src.adaptivity.order_field import OrderField, apply_order_change
from src.adaptivity.ranges import base_ranges, correction_ranges, full_range
from src.basis.tensors import BasisTables
from src.dg.auxiliary import solve_auxiliary
from src.dg.boundary import ElevationForcing, compute_ghosts
from src.dg.edge import EdgeSet, build_edge_set, compute_lambda, edge_flux_kernel
from src.dg.element import element_flux_kernel
from src.dg.min_depth import min_depth_kernel
from src.dg.params import PhysParams
from src.dg.rhs import rhs_kernel
from src.dg.state import State
from src.errors import NonFiniteStateError
from src.executor import graph as names
from src.mesh.mesh import Mesh
from src.timestep.ssp_rk import rk_substep_update

logger = logging.getLogger("Executor")


def split(indices: np.ndarray, chunk: Optional[int]) -> List[np.ndarray]:
    if chunk is None or indices.size <= chunk:
        return [indices]
    return [indices[i:i + chunk] for i in range(0, indices.size, chunk)]


@dataclass
class SolverContext:
    """
    한 시뮬레이션의 불변 데이터 + 가변 state

    :param flux_kernels: residual 합산 순서 (그래프의 병렬 kernel 순서)
    """

    mesh: Mesh
    tables: BasisTables
    params: PhysParams
    order_field: OrderField
    state: State
    dt: float
    flux_kernels: List[str]
    forcing: Optional[ElevationForcing] = None
    thresholds: Optional[IndicatorThresholds] = None
    stage: int = 1
    step: int = 0
    t_n: float = 0.0
    c_n: Optional[np.ndarray] = None
    buffers: Dict[str, np.ndarray] = field(default_factory=dict)
    _cache: Dict[tuple, list] = field(default_factory=dict)
    _version: int = 0

    def __post_init__(self):
        shape = self.state.c.shape
        for name in self.flux_kernels:
            self.buffers[name] = np.zeros(shape)
        self.c_n = self.state.c.copy()
        self.t_n = self.state.t

    # --- 작업 분할 ---
    def elements(self, chunk: Optional[int]) -> List[np.ndarray]:
        key = ("elements", chunk)
        if key not in self._cache:
            self._cache[key] = split(np.arange(self.mesh.n_elements), chunk)
        return self._cache[key]

    def correction_elements(self, chunk: Optional[int]) -> List[np.ndarray]:
        key = ("correction_elements", chunk, self._version)
        if key not in self._cache:
            self._cache[key] = split(self.order_field.full_elements(), chunk)
        return self._cache[key]

    def edge_sets(self, chunk: Optional[int]) -> List[EdgeSet]:
        key = ("edges", chunk)
        if key not in self._cache:
            self._cache[key] = [build_edge_set(self.mesh, e) for e in split(np.arange(self.mesh.n_edges), chunk)]
        return self._cache[key]

    def correction_edge_sets(self, chunk: Optional[int]) -> List[EdgeSet]:
        """고차 element 에 닿는 edge"""
        key = ("correction_edges", chunk, self._version)
        if key not in self._cache:
            full = self.order_field.orders == self.order_field.full
            ea = self.mesh.edge_elements[:, 0]
            eb = self.mesh.edge_elements[:, 1]
            touching = full[ea] | ((eb >= 0) & full[np.maximum(eb, 0)])
            edges = np.flatnonzero(touching)
            self._cache[key] = [build_edge_set(self.mesh, e) for e in split(edges, chunk)]
        return self._cache[key]

    def order_changed(self) -> None:
        self._version += 1
        self._cache = {k: v for k, v in self._cache.items() if len(k) < 3}

    # --- step 경계 ---
    def begin_step(self) -> None:
        self.c_n = self.state.c.copy()
        self.t_n = self.state.t

    @property
    def stage_time(self) -> float:
        """두 stage 의 출력 모두 t_n + dt 시각의 값"""
        return self.t_n + self.dt

    def prime(self) -> None:
        """초기 상태에 min depth -> uH=q -> BC 적용"""
        min_depth_kernel(self.state, self.tables, self.params.h_min)
        solve_auxiliary(self.state, self.tables, self.order_field.orders)
        self.refresh_boundary(self.state.t)
        self.c_n = self.state.c.copy()
        self.t_n = self.state.t

    def refresh_boundary(self, t: float) -> None:
        compute_ghosts(self.mesh, self.state, self.tables, self.forcing, t)
        self.state.lam[:] = compute_lambda(self.mesh, self.state, self.tables, self.params.g)

    @property
    def base_range(self):
        of = self.order_field
        return base_ranges(of.base) if of.adaptive else full_range(of.full)


# --- 병렬 phase kernel ---
def edge_base(ctx: SolverContext, chunk: Optional[int]) -> None:
    out = ctx.buffers[names.EDGE_BASE]
    for edge_set in ctx.edge_sets(chunk):
        edge_flux_kernel(ctx.mesh, ctx.state, ctx.tables, edge_set, ctx.base_range, out, ctx.params.g)


def edge_correction(ctx: SolverContext, chunk: Optional[int]) -> None:
    if not ctx.order_field.adaptive:
        return
    out = ctx.buffers[names.EDGE_CORRECTION]
    parts = correction_ranges(ctx.order_field.base, ctx.order_field.full)
    for edge_set in ctx.correction_edge_sets(chunk):
        for ranges in parts:
            edge_flux_kernel(ctx.mesh, ctx.state, ctx.tables, edge_set, ranges, out, ctx.params.g)


def elem_rhs_base(ctx: SolverContext, chunk: Optional[int]) -> None:
    out = ctx.buffers[names.ELEM_RHS_BASE]
    ranges = ctx.base_range
    for elements in ctx.elements(chunk):
        element_flux_kernel(ctx.state, ctx.tables, elements, ranges, out, ctx.params.g)
        rhs_kernel(ctx.state, ctx.params, ctx.tables, elements, ranges, out)


def elem_rhs_correction(ctx: SolverContext, chunk: Optional[int]) -> None:
    if not ctx.order_field.adaptive:
        return
    out = ctx.buffers[names.ELEM_RHS_CORRECTION]
    parts = correction_ranges(ctx.order_field.base, ctx.order_field.full)
    for elements in ctx.correction_elements(chunk):
        for ranges in parts:
            element_flux_kernel(ctx.state, ctx.tables, elements, ranges, out, ctx.params.g)
            rhs_kernel(ctx.state, ctx.params, ctx.tables, elements, ranges, out)


def edge_full(ctx: SolverContext, chunk: Optional[int]) -> None:
    out = ctx.buffers[names.EDGE]
    ranges = full_range(ctx.order_field.full)
    for edge_set in ctx.edge_sets(chunk):
        edge_flux_kernel(ctx.mesh, ctx.state, ctx.tables, edge_set, ranges, out, ctx.params.g)


def elem_rhs_full(ctx: SolverContext, chunk: Optional[int]) -> None:
    out = ctx.buffers[names.ELEM_RHS]
    ranges = full_range(ctx.order_field.full)
    for elements in ctx.elements(chunk):
        element_flux_kernel(ctx.state, ctx.tables, elements, ranges, out, ctx.params.g)
        rhs_kernel(ctx.state, ctx.params, ctx.tables, elements, ranges, out)


# --- 순차 kernel ---
def rk_substep_additions(ctx: SolverContext, chunk: Optional[int]) -> None:
    """residual 버퍼 합산 (고정 순서) + 활성 모드 마스크 + SSP-RK2 갱신"""
    state = ctx.state
    mask = ctx.order_field.mode_mask(state.size)
    for elements in ctx.elements(chunk):
        residual = np.zeros((elements.size,) + state.c.shape[1:])
        for name in ctx.flux_kernels:
            residual += ctx.buffers[name][elements]
        residual *= mask[elements]
        state.c[elements] = rk_substep_update(ctx.stage, ctx.c_n[elements], state.c[elements], residual, ctx.dt)
    for name in ctx.flux_kernels:
        ctx.buffers[name][:] = 0.0

    if not np.isfinite(state.c).all():
        bad = int(np.flatnonzero(~np.isfinite(state.c).all(axis=(1, 2)))[0])
        raise NonFiniteStateError(step=ctx.step, element=bad)
    if ctx.stage == 2:
        state.t = ctx.t_n + ctx.dt


def min_depth(ctx: SolverContext, chunk: Optional[int]) -> None:
    clamped = 0
    for elements in ctx.elements(chunk):
        clamped += min_depth_kernel(ctx.state, ctx.tables, ctx.params.h_min, elements)
    if clamped:
        logger.warning(f"⚠️ step {ctx.step}: min depth clamp {clamped}개")


def solve_uh(ctx: SolverContext, chunk: Optional[int]) -> None:
    for elements in ctx.elements(chunk):
        solve_auxiliary(ctx.state, ctx.tables, ctx.order_field.orders, elements)


def bc_computation(ctx: SolverContext, chunk: Optional[int]) -> None:
    ctx.refresh_boundary(ctx.stage_time)


def indicator(ctx: SolverContext, chunk: Optional[int]) -> None:
    """step 당 한 번 (두 번째 substep 끝)"""
    if ctx.stage != 2 or ctx.thresholds is None:
        return
    of = ctx.order_field
    before = of.orders.copy()
    decisions = indicator_kernel(ctx.mesh, ctx.state, ctx.tables, of, ctx.thresholds)
    stats = apply_order_change(ctx.state, of, decisions, ctx.step)
    if stats.refined or stats.coarsened:
        changed = np.flatnonzero(before != of.orders)
        solve_auxiliary(ctx.state, ctx.tables, of.orders, changed)
        ctx.refresh_boundary(ctx.state.t)
        ctx.order_changed()


KERNELS: Dict[str, Callable[[SolverContext, Optional[int]], None]] = {
    names.EDGE_BASE: edge_base,
    names.EDGE_CORRECTION: edge_correction,
    names.ELEM_RHS_BASE: elem_rhs_base,
    names.ELEM_RHS_CORRECTION: elem_rhs_correction,
    names.EDGE: edge_full,
    names.ELEM_RHS: elem_rhs_full,
    names.RK_SUBSTEP: rk_substep_additions,
    names.MIN_DEPTH: min_depth,
    names.SOLVE_UH: solve_uh,
    names.BC_COMPUTATION: bc_computation,
    names.INDICATOR: indicator,
}
