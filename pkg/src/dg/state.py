from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.errors import NonFiniteStateError

XI, QU, QV = 0, 1, 2


@dataclass
class State:
    """
    element 별 모드 계수

    :param c: (ne, 3, K) ξ, U, V 계수
    :param u: (ne, 2, K) u, v 계수 (보조 방정식 uH = q 의 해)
    :param hb: (ne, K) bathymetry 계수 (시간 불변)
    :param ghost_c: (nB, 3, K) 경계 edge ghost 계수, 내부 element basis 기준
    :param ghost_u: (nB, 2, K)
    :param lam: (nE,) edge 별 Lax-Friedrichs 계수
    """

    c: np.ndarray
    u: np.ndarray
    hb: np.ndarray
    ghost_c: np.ndarray
    ghost_u: np.ndarray
    lam: np.ndarray
    t: float = 0.0
    clamp_count: int = field(default=0)

    @classmethod
    def allocate(cls, n_elements: int, n_edges: int, n_boundary: int, size: int,
                 hb: Optional[np.ndarray] = None) -> "State":
        hb_arr = np.zeros((n_elements, size))
        if hb is not None:
            hb = np.asarray(hb, dtype=float)
            k = min(size, hb.shape[1])
            hb_arr[:, :k] = hb[:, :k]
        return cls(
            c=np.zeros((n_elements, 3, size)),
            u=np.zeros((n_elements, 2, size)),
            hb=hb_arr,
            ghost_c=np.zeros((n_boundary, 3, size)),
            ghost_u=np.zeros((n_boundary, 2, size)),
            lam=np.zeros(n_edges),
        )

    @property
    def n_elements(self) -> int:
        return self.c.shape[0]

    @property
    def size(self) -> int:
        return self.c.shape[2]

    def copy(self) -> "State":
        return State(c=self.c.copy(), u=self.u.copy(), hb=self.hb, ghost_c=self.ghost_c.copy(),
                     ghost_u=self.ghost_u.copy(), lam=self.lam.copy(), t=self.t,
                     clamp_count=self.clamp_count)

    def check_finite(self, step: int = -1) -> None:
        """NaN/Inf 가 있으면 NonFiniteStateError"""
        bad = ~np.isfinite(self.c).all(axis=(1, 2)) | ~np.isfinite(self.u).all(axis=(1, 2))
        if np.any(bad):
            raise NonFiniteStateError(step=step, element=int(np.flatnonzero(bad)[0]))
