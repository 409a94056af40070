import numpy as np

from src.basis.tensors import BasisTables
from src.dg.state import QU, QV, XI, State


def min_depth_kernel(state: State, tables: BasisTables, h_min: float, elements: np.ndarray = None) -> int:
    """
    H̄ < h_min 인 element 는 ξ 상수 모드를 올려 H̄ = h_min 으로 맞추고 고차 ξ, U, V 를 0 으로

    :return: 이번 호출의 clamp 수 (state.clamp_count 에도 누적)
    """
    elements = np.arange(state.n_elements) if elements is None else elements
    root = tables.sqrt_area[elements]
    depth = (state.c[elements, XI, 0] + state.hb[elements, 0]) / root
    clamped = elements[depth < h_min]
    if clamped.size:
        state.c[clamped, XI, 0] = h_min * tables.sqrt_area[clamped] - state.hb[clamped, 0]
        state.c[clamped, XI, 1:] = 0.0
        state.c[clamped, QU, 1:] = 0.0
        state.c[clamped, QV, 1:] = 0.0
    state.clamp_count += int(clamped.size)
    return int(clamped.size)
