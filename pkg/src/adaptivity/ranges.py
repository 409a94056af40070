from typing import Tuple

from src.basis.polynomials import K_OF_P
from src.dg.index_range import IndexRange


def _check(b: int, p: int) -> None:
    if b not in (0, 1, 2) or p != b + 1:
        raise ValueError(f"차수 조합이 올바르지 않습니다: b={b}, p={p} (p = b+1, b <= 2)")


def full_range(p: int) -> IndexRange:
    k = K_OF_P[p]
    return IndexRange(1, k, 1, k)


def base_ranges(b: int) -> IndexRange:
    """모든 element 에서 계산하는 차수 b 부분"""
    if b not in (0, 1, 2):
        raise ValueError(f"base 차수는 0..2 이어야 합니다: b={b}")
    return full_range(b)


def correction_ranges(b: int, p: int) -> Tuple[IndexRange, IndexRange]:
    """
    차수 p element 에만 더하는 보정

    part 1: test [1, K(b)] x trial [K(b)+1, K(p)]
    part 2: test [K(b)+1, K(p)] x trial [1, K(p)]
    """
    _check(b, p)
    kb, kp = K_OF_P[b], K_OF_P[p]
    return IndexRange(1, kb, kb + 1, kp), IndexRange(kb + 1, kp, 1, kp)
