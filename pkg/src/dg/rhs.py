import numpy as np

from src.basis.tensors import BasisTables
from src.dg.flux import contract_triple
from src.dg.index_range import IndexRange
from src.dg.params import FrictionLaw, PhysParams
from src.dg.state import QU, QV, XI, State


def rhs_kernel(state: State, params: PhysParams, tables: BasisTables, elements: np.ndarray,
               ranges: IndexRange, out: np.ndarray) -> None:
    """
    (r, φ_q)_Ωe 를 out 에 더한다

    r = (0, -τ u + f_c V + g ξ ∂x h_b + F_x, -τ v - f_c U + g ξ ∂y h_b + F_y).
    마찰의 속도 (linear 의 u, quadratic 의 |u|) 는 상수 모드만 사용한다.
    """
    if elements.size == 0:
        return
    k = min(ranges.width, state.size)
    tm = ranges.test_mask(k)
    diag = tm * ranges.trial_mask(k)

    c = state.c[elements, :, :k]
    w = state.u[elements, :, :k]
    hb = state.hb[elements, :k]
    mean = tables.mean_factor[elements]
    u_bar = state.u[elements, :, 0] * mean[:, None]

    fu = params.f_c * c[:, QV]
    fv = -params.f_c * c[:, QU]
    if params.friction_k > 0.0:
        if params.friction_law == FrictionLaw.LINEAR:
            depth = c[:, XI] + hb
            fu = fu - params.friction_k * u_bar[:, 0:1] * depth
            fv = fv - params.friction_k * u_bar[:, 1:2] * depth
        else:
            speed = np.hypot(u_bar[:, 0], u_bar[:, 1])[:, None]
            fu = fu - params.friction_k * speed * w[:, 0]
            fv = fv - params.friction_k * speed * w[:, 1]
    out[elements, QU, :k] += fu * diag
    out[elements, QV, :k] += fv * diag

    if (params.force_x or params.force_y) and diag[0]:
        area_root = tables.sqrt_area[elements]
        out[elements, QU, 0] += params.force_x * area_root
        out[elements, QV, 0] += params.force_y * area_root

    if k > 1 and np.any(hb[:, 1:]):
        # g Σ ξ_i hb_j ∫ φ_q φ_i ∂φ_j,  SX̂[j,q,i] 를 (q, i, j) 로 재배열
        ref = tables.reference
        sx = ref.SX[:k, :k, :k].transpose(1, 2, 0)
        sy = ref.SY[:k, :k, :k].transpose(1, 2, 0)
        pairs = np.einsum("ei,ej->eij", c[:, XI], hb) * ranges.pair_mask(k)
        a = contract_triple(sx, pairs)
        b = contract_triple(sy, pairs)
        G = tables.grad_map[elements]
        s = tables.scale[elements][:, None] * params.g
        out[elements, QU, :k] += s * (G[:, 0, 0:1] * a + G[:, 0, 1:2] * b) * tm
        out[elements, QV, :k] += s * (G[:, 1, 0:1] * a + G[:, 1, 1:2] * b) * tm
