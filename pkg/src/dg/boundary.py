import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.basis.tensors import BasisTables
from src.dg.state import QU, QV, XI, State
from src.errors import ConfigError
from src.mesh.mesh import BoundaryTag, Mesh


@dataclass(frozen=True)
class ElevationForcing:
    """
    open-sea 경계의 수면 ξ̂(t)

    period 가 없으면 상수 mean, 있으면 amplitude*sin(2πt/period) + mean
    """

    mean: float = 0.0
    amplitude: float = 0.0
    period: Optional[float] = None

    def __post_init__(self):
        if self.period is not None and self.period <= 0.0:
            raise ValueError("조석 주기는 양수여야 합니다.")

    def value(self, t: float) -> float:
        if self.period is None:
            return self.mean
        return self.amplitude * math.sin(2.0 * math.pi * t / self.period) + self.mean


def boundary_ghost(tag: int, c: np.ndarray, u: np.ndarray, normal: np.ndarray, sqrt_area: np.ndarray,
                   elevation: float = 0.0):
    """
    경계 edge ghost 상태 (내부 element 의 basis 계수로 표현)

    land: ξ⁺ = ξ, q⁺ = q - 2(q·n)n, u⁺ 도 동일하게 반사
    open sea: ξ⁺ = ξ̂ (상수), q⁺ = q, u⁺ = u

    :param c: (n, 3, K) 내부 element 계수
    :param u: (n, 2, K)
    :param normal: (n, 2) 외향 단위 법선
    :return: ghost_c, ghost_u
    """
    try:
        tag = BoundaryTag(tag)
    except ValueError:
        raise ConfigError(f"알 수 없는 경계 태그: {tag}")
    if tag == BoundaryTag.LAND:
        nx = normal[:, 0:1]
        ny = normal[:, 1:2]
        gc = c.copy()
        qn = c[:, QU] * nx + c[:, QV] * ny
        gc[:, QU] = c[:, QU] - 2.0 * qn * nx
        gc[:, QV] = c[:, QV] - 2.0 * qn * ny
        gu = u.copy()
        un = u[:, 0] * nx + u[:, 1] * ny
        gu[:, 0] = u[:, 0] - 2.0 * un * nx
        gu[:, 1] = u[:, 1] - 2.0 * un * ny
        return gc, gu
    if tag == BoundaryTag.OPEN_SEA:
        gc = c.copy()
        gc[:, XI] = 0.0
        gc[:, XI, 0] = elevation * np.reshape(sqrt_area, -1)
        return gc, u.copy()
    raise ConfigError(f"알 수 없는 경계 태그: {tag}")


def compute_ghosts(mesh: Mesh, state: State, tables: BasisTables,
                   forcing: Optional[ElevationForcing] = None, t: float = 0.0) -> None:
    """모든 경계 edge 의 ghost 를 state.ghost_c / ghost_u 에 기록"""
    bnd = mesh.boundary_edges
    if bnd.size == 0:
        return
    ea = mesh.edge_elements[bnd, 0]
    tags = mesh.edge_tag[bnd]
    elevation = forcing.value(t) if forcing is not None else 0.0
    for tag in np.unique(tags):
        rows = np.flatnonzero(tags == tag)
        if tag == BoundaryTag.OPEN_SEA and forcing is None:
            raise ConfigError("open-sea 경계에 수면 강제 조건 (ElevationForcing) 이 없습니다.")
        e = ea[rows]
        gc, gu = boundary_ghost(int(tag), state.c[e], state.u[e], mesh.edge_normal[bnd[rows]],
                                tables.sqrt_area[e][:, None], elevation)
        state.ghost_c[rows] = gc
        state.ghost_u[rows] = gu
