import logging
from dataclasses import dataclass

import numpy as np

from src.adaptivity.order_field import Decision, OrderField
from src.basis.tensors import BasisTables
from src.dg.state import XI, State
from src.errors import ConfigError
from src.mesh.mesh import Mesh

logger = logging.getLogger("Adaptivity")


@dataclass(frozen=True)
class IndicatorThresholds:
    """
    정규화된 ξ 도약 기준

    :param refine: η > refine 인 base element 를 올린다
    :param coarsen: η < coarsen 인 full element 를 내린다 (coarsen < refine, 히스테리시스)
    :param max_fraction: full 차수 element 비율 상한, 넘치면 η 가 큰 순서로 자리를 준다
    """

    refine: float = 1e-3
    coarsen: float = 2e-4
    max_fraction: float = 0.08

    def __post_init__(self):
        if self.coarsen >= self.refine:
            raise ConfigError(f"theta_coarsen ({self.coarsen}) 은 theta_refine ({self.refine}) 보다 작아야 합니다.")
        if self.coarsen < 0.0:
            raise ConfigError("theta_coarsen 은 음수일 수 없습니다.")
        if not 0.0 < self.max_fraction <= 1.0:
            raise ConfigError(f"max_fraction 은 (0, 1] 범위여야 합니다: {self.max_fraction}")

    def budget(self, n_elements: int) -> int:
        return int(np.floor(self.max_fraction * n_elements + 1e-12))


def jump_indicator(mesh: Mesh, state: State, tables: BasisTables) -> np.ndarray:
    """
    element 별 η = max_edges |ξ⁻ 의 edge 평균 - ξ⁺ 의 edge 평균| / H_ref · (ℓ̄ / |E|)

    H_ref 는 element 평균 수심의 최댓값, ℓ̄ 은 격자의 평균 edge 길이. 경계 edge 는 제외.
    """
    inner = mesh.interior_edges
    ea = mesh.edge_elements[inner, 0]
    eb = mesh.edge_elements[inner, 1]
    E1 = tables.reference.E1[:, :state.size]
    la = mesh.edge_local[inner, 0]
    lb = mesh.edge_local[inner, 1]
    mean_a = tables.scale[ea] * np.einsum("ek,ek->e", state.c[ea, XI], E1[la])
    mean_b = tables.scale[eb] * np.einsum("ek,ek->e", state.c[eb, XI], E1[lb])

    depth = (state.c[:, XI, 0] + state.hb[:, 0]) * tables.mean_factor
    h_ref = float(depth.max())
    length_ratio = float(mesh.edge_length.mean()) / mesh.edge_length[inner]
    jump = np.abs(mean_a - mean_b) / h_ref * length_ratio

    eta = np.zeros(state.n_elements)
    np.maximum.at(eta, ea, jump)
    np.maximum.at(eta, eb, jump)
    return eta


def indicator_kernel(mesh: Mesh, state: State, tables: BasisTables, order_field: OrderField,
                     thresholds: IndicatorThresholds) -> np.ndarray:
    """
    element 별 Decision 배열

    히스테리시스로 full 로 두고 싶은 element 집합을 정하고, max_fraction 을 넘으면
    η 내림차순 (같으면 index 오름차순) 으로 상한까지만 남긴다. 밀려난 full element 는 LOWER.
    """
    eta = jump_indicator(mesh, state, tables)
    at_base = order_field.orders == order_field.base
    at_full = (order_field.orders == order_field.full) & ~at_base
    wanted = (at_full & (eta >= thresholds.coarsen)) | (at_base & (eta > thresholds.refine))

    budget = thresholds.budget(state.n_elements)
    candidates = np.flatnonzero(wanted)
    if candidates.size > budget:
        ranked = candidates[np.lexsort((candidates, -eta[candidates]))]
        wanted = np.zeros_like(wanted)
        wanted[ranked[:budget]] = True
        logger.debug(f"⚠️ 고차 후보 {candidates.size}개 중 상한 {budget}개만 유지")

    decisions = np.full(state.n_elements, Decision.KEEP, dtype=np.int64)
    decisions[wanted & at_base] = Decision.RAISE
    decisions[~wanted & at_full] = Decision.LOWER
    return decisions
