from typing import Dict

import numpy as np

from src.basis.tensors import BasisTables
from src.dg.state import QU, QV, XI, State


def total_mass(state: State, tables: BasisTables) -> float:
    """Σ_e ∫ ξ, 직교정규성에 의해 상수 모드만으로 충분"""
    return float(np.sum(state.c[:, XI, 0] * tables.sqrt_area))


def element_means(state: State, tables: BasisTables) -> Dict[str, np.ndarray]:
    factor = tables.mean_factor
    return {
        "xi_mean": state.c[:, XI, 0] * factor,
        "U_mean": state.c[:, QU, 0] * factor,
        "V_mean": state.c[:, QV, 0] * factor,
        "H_mean": (state.c[:, XI, 0] + state.hb[:, 0]) * factor,
    }
