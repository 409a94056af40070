from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from src.basis.polynomials import K_OF_P, MAX_ORDER

K_MAX = K_OF_P[MAX_ORDER]


@dataclass(frozen=True)
class IndexRange:
    """
    test / trial 인덱스 범위 (1-based, 양끝 포함)

    trial 규칙: 단일 인덱스 항은 그 인덱스, 두 전개의 곱 (i, j) 는 max(i, j) 가
    범위 안에 있을 때 포함된다.
    """

    q_lo: int
    q_hi: int
    i_lo: int
    i_hi: int

    def __post_init__(self):
        for lo, hi, name in ((self.q_lo, self.q_hi, "test"), (self.i_lo, self.i_hi, "trial")):
            if not 1 <= lo <= hi <= K_MAX:
                raise ValueError(f"{name} 범위가 올바르지 않습니다: [{lo}, {hi}]")

    @property
    def width(self) -> int:
        """커널이 다뤄야 하는 계수 개수"""
        return max(self.q_hi, self.i_hi)

    def test_mask(self, k: int) -> np.ndarray:
        return _interval_mask(self.q_lo, self.q_hi, k)

    def trial_mask(self, k: int) -> np.ndarray:
        return _interval_mask(self.i_lo, self.i_hi, k)

    def pair_mask(self, k: int) -> np.ndarray:
        return _pair_mask(self.i_lo, self.i_hi, k)

    def __str__(self) -> str:
        return f"[{self.q_lo},{self.q_hi}]x[{self.i_lo},{self.i_hi}]"


@lru_cache(maxsize=None)
def _interval_mask(lo: int, hi: int, k: int) -> np.ndarray:
    idx = np.arange(1, k + 1)
    mask = ((idx >= lo) & (idx <= hi)).astype(float)
    mask.setflags(write=False)
    return mask


@lru_cache(maxsize=None)
def _pair_mask(lo: int, hi: int, k: int) -> np.ndarray:
    idx = np.arange(1, k + 1)
    top = np.maximum(idx[:, None], idx[None, :])
    mask = ((top >= lo) & (top <= hi)).astype(float)
    mask.setflags(write=False)
    return mask
