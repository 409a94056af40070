import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from src.basis.tensors import BasisTables
from src.dg.flux import momentum_pairs
from src.dg.index_range import IndexRange
from src.dg.state import QU, QV, XI, State
from src.errors import InvariantViolationError
from src.mesh.mesh import Mesh

logger = logging.getLogger("DGKernels")


@dataclass(frozen=True)
class EdgeSet:
    """
    (local edge a, local edge b, orientation) 조합별로 묶인 edge 집합

    한 그룹 안에서 각 side 의 element 는 중복되지 않는다 (element 마다 local edge 가 하나).
    boundary 그룹은 (local edge, edge ids, ghost 행) 이다.
    """

    edges: np.ndarray
    interior: List[Tuple[int, int, int, np.ndarray]]
    boundary: List[Tuple[int, np.ndarray, np.ndarray]]

    @property
    def size(self) -> int:
        return int(self.edges.size)


def ghost_rows(mesh: Mesh) -> np.ndarray:
    """edge id -> ghost 배열 행 (내부 edge 는 -1)"""
    rows = np.full(mesh.n_edges, -1, dtype=np.int64)
    b = mesh.boundary_edges
    rows[b] = np.arange(b.size)
    return rows


def edge_orientation(mesh: Mesh, edges: np.ndarray) -> np.ndarray:
    """side1 이 공유 edge 를 side0 와 반대로 지나면 1"""
    eb = mesh.edge_elements[edges, 1]
    lb = mesh.edge_local[edges, 1]
    start_b = mesh.elements[eb, lb]
    return (start_b == mesh.edge_vertices[edges, 1]).astype(np.int64)


def build_edge_set(mesh: Mesh, edges: np.ndarray = None) -> EdgeSet:
    edges = np.arange(mesh.n_edges) if edges is None else np.asarray(edges, dtype=np.int64)
    inner = edges[mesh.edge_elements[edges, 1] >= 0]
    outer = edges[mesh.edge_elements[edges, 1] < 0]

    interior = []
    if inner.size:
        key = mesh.edge_local[inner, 0] * 6 + mesh.edge_local[inner, 1] * 2 + edge_orientation(mesh, inner)
        for combo in np.unique(key):
            idx = inner[key == combo]
            interior.append((int(combo // 6), int(combo // 2 % 3), int(combo % 2), idx))

    boundary = []
    rows = ghost_rows(mesh)
    for la in range(3):
        idx = outer[mesh.edge_local[outer, 0] == la]
        if idx.size:
            boundary.append((la, idx, rows[idx]))
    return EdgeSet(edges=edges, interior=interior, boundary=boundary)


def _constant_part(c: np.ndarray, w: np.ndarray, hb: np.ndarray, factor: np.ndarray,
                   n: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """상수 모드로부터 (H̄, |ū·n|)"""
    depth = (c[:, XI, 0] + hb[:, 0]) * factor
    speed = np.abs(w[:, 0, 0] * n[:, 0] + w[:, 1, 0] * n[:, 1]) * factor
    return depth, speed


def compute_lambda(mesh: Mesh, state: State, tables: BasisTables, g: float) -> np.ndarray:
    """
    edge 별 λ = max|ū·n| + sqrt(g max H̄), 상수 모드만 사용

    경계 edge 는 내부 element 와 ghost 상태에 대해 최대를 취한다.

    :raises InvariantViolationError: H̄ <= 0
    """
    n = mesh.edge_normal
    ea = mesh.edge_elements[:, 0]
    eb = mesh.edge_elements[:, 1]
    mean = tables.mean_factor

    depth_a, speed_a = _constant_part(state.c[ea], state.u[ea], state.hb[ea], mean[ea], n)
    depth_b = np.empty_like(depth_a)
    speed_b = np.empty_like(speed_a)

    idx = np.flatnonzero(eb >= 0)
    depth_b[idx], speed_b[idx] = _constant_part(state.c[eb[idx]], state.u[eb[idx]], state.hb[eb[idx]],
                                                mean[eb[idx]], n[idx])
    bnd = np.flatnonzero(eb < 0)
    if bnd.size:
        rows = ghost_rows(mesh)[bnd]
        depth_b[bnd], speed_b[bnd] = _constant_part(state.ghost_c[rows], state.ghost_u[rows],
                                                    state.hb[ea[bnd]], mean[ea[bnd]], n[bnd])

    bad = (depth_a <= 0.0) | (depth_b <= 0.0)
    if np.any(bad):
        k = int(np.flatnonzero(bad)[0])
        raise InvariantViolationError(f"edge {k}: H <= 0 상태에서 λ 계산 (min depth 미적용)")
    return np.maximum(speed_a, speed_b) + np.sqrt(g * np.maximum(depth_a, depth_b))


def _side_terms(c, w, hb, n, lam, sign, im, pm, g):
    """
    한 side 의 선형 항 (법선 flux + 부호 있는 penalty) 과 운동량 곱 항

    :return: linear (n, 3, K), pairs_u (n, K, K), pairs_v (n, K, K)
    """
    nx = n[:, 0:1]
    ny = n[:, 1:2]
    lam_s = sign * lam[:, None]
    linear = np.empty_like(c)
    linear[:, XI] = (c[:, QU] * nx + c[:, QV] * ny + lam_s * c[:, XI]) * im
    linear[:, QU] = lam_s * c[:, QU] * im
    linear[:, QV] = lam_s * c[:, QV] * im
    ux, uy, vx, vy = momentum_pairs(c[:, XI], c[:, QU], c[:, QV], w[:, 0], w[:, 1], hb, g)
    nx3 = nx[:, :, None]
    ny3 = ny[:, :, None]
    return linear, (ux * nx3 + uy * ny3) * pm, (vx * nx3 + vy * ny3) * pm


def _tested(E2: np.ndarray, E3: np.ndarray, linear: np.ndarray, pu: np.ndarray, pv: np.ndarray,
            s_trial: np.ndarray) -> np.ndarray:
    """⟨F_S, φ_q^T⟩ / (L s_T), (n, 3, K)"""
    k = E2.shape[0]
    out = np.einsum("qi,eri->erq", E2, linear) * s_trial[:, None, None]
    e3 = E3.reshape(k, -1).T
    s2 = (s_trial ** 2)[:, None]
    out[:, QU] += (pu.reshape(pu.shape[0], -1) @ e3) * s2
    out[:, QV] += (pv.reshape(pv.shape[0], -1) @ e3) * s2
    return out


def edge_flux_kernel(mesh: Mesh, state: State, tables: BasisTables, edge_set: EdgeSet,
                     ranges: IndexRange, out: np.ndarray, g: float) -> None:
    """
    Lax-Friedrichs flux F = ½[(A(c⁻)+A(c⁺))·n + λ(c⁻ - c⁺)] 의 edge 적분

    side0 에는 -⟨F, φ_q⟩, side1 에는 +⟨F, φ_q⟩ 를 더한다. 경계 edge 의 c⁺ 는 ghost.
    λ 는 state.lam (bc_computation 에서 계산) 을 사용한다.
    """
    if edge_set.size == 0:
        return
    k = min(ranges.width, state.size)
    ref = tables.reference
    tm = ranges.test_mask(k)
    im = ranges.trial_mask(k)
    pm = ranges.pair_mask(k)
    E2 = ref.E2[..., :k, :k]
    E3 = ref.E3[..., :k, :k, :k]

    for la, lb, orient, idx in edge_set.interior:
        ea = mesh.edge_elements[idx, 0]
        eb = mesh.edge_elements[idx, 1]
        n = mesh.edge_normal[idx]
        lam = state.lam[idx]
        sa = tables.scale[ea]
        sb = tables.scale[eb]
        half_l = 0.5 * mesh.edge_length[idx]

        side_a = _side_terms(state.c[ea, :, :k], state.u[ea, :, :k], state.hb[ea, :k], n, lam, 1.0, im, pm, g)
        side_b = _side_terms(state.c[eb, :, :k], state.u[eb, :, :k], state.hb[eb, :k], n, lam, -1.0, im, pm, g)

        flux_a = _tested(E2[la, la, 0], E3[la, la, 0], *side_a, sa) \
            + _tested(E2[la, lb, orient], E3[la, lb, orient], *side_b, sb)
        flux_b = _tested(E2[lb, la, orient], E3[lb, la, orient], *side_a, sa) \
            + _tested(E2[lb, lb, 0], E3[lb, lb, 0], *side_b, sb)

        # 그룹 안에서 ea, eb 는 각각 중복 없음
        out[ea, :, :k] -= (half_l * sa)[:, None, None] * flux_a * tm
        out[eb, :, :k] += (half_l * sb)[:, None, None] * flux_b * tm

    for la, idx, rows in edge_set.boundary:
        ea = mesh.edge_elements[idx, 0]
        n = mesh.edge_normal[idx]
        lam = state.lam[idx]
        sa = tables.scale[ea]
        half_l = 0.5 * mesh.edge_length[idx]
        hb = state.hb[ea, :k]

        side_a = _side_terms(state.c[ea, :, :k], state.u[ea, :, :k], hb, n, lam, 1.0, im, pm, g)
        ghost = _side_terms(state.ghost_c[rows, :, :k], state.ghost_u[rows, :, :k], hb, n, lam, -1.0,
                            im, pm, g)
        flux_a = _tested(E2[la, la, 0], E3[la, la, 0], *side_a, sa) \
            + _tested(E2[la, la, 0], E3[la, la, 0], *ghost, sa)
        out[ea, :, :k] -= (half_l * sa)[:, None, None] * flux_a * tm
