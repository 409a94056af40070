import numpy as np

from src.basis.tensors import BasisTables
from src.dg.flux import contract_triple, momentum_pairs, to_reference
from src.dg.index_range import IndexRange
from src.dg.state import QU, QV, XI, State


def element_flux_kernel(state: State, tables: BasisTables, elements: np.ndarray, ranges: IndexRange,
                        out: np.ndarray, g: float) -> None:
    """
    (A(c, u), ∇φ_q)_Ωe 를 out 에 더한다

    :param elements: 중복 없는 element 인덱스
    :param ranges: test / trial 범위, trial 전개는 IndexRange 규칙으로 잘린다
    :param out: (ne, 3, K) residual 버퍼
    """
    if elements.size == 0:
        return
    k = min(ranges.width, state.size)
    ref = tables.reference
    tm = ranges.test_mask(k)
    im = ranges.trial_mask(k)
    pm = ranges.pair_mask(k)

    c = state.c[elements, :, :k]
    w = state.u[elements, :, :k]
    hb = state.hb[elements, :k]
    G = tables.grad_map[elements]
    s = tables.scale[elements][:, None]

    # 질량 행: A = q (선형)
    fx, fy = to_reference(G, c[:, QU] * im, c[:, QV] * im)
    mass = fx @ ref.DX[:k, :k].T + fy @ ref.DY[:k, :k].T

    SX = ref.SX[:k, :k, :k]
    SY = ref.SY[:k, :k, :k]
    ux, uy, vx, vy = momentum_pairs(c[:, XI], c[:, QU], c[:, QV], w[:, 0], w[:, 1], hb, g)
    fx, fy = to_reference(G, ux * pm, uy * pm)
    mom_u = s * (contract_triple(SX, fx) + contract_triple(SY, fy))
    fx, fy = to_reference(G, vx * pm, vy * pm)
    mom_v = s * (contract_triple(SX, fx) + contract_triple(SY, fy))

    out[elements, XI, :k] += mass * tm
    out[elements, QU, :k] += mom_u * tm
    out[elements, QV, :k] += mom_v * tm
