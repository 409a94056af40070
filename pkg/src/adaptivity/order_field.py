import logging
from dataclasses import dataclass, field
from enum import IntEnum
from typing import List

import numpy as np

from src.basis.polynomials import K_OF_P
from src.dg.state import State

logger = logging.getLogger("Adaptivity")


class Decision(IntEnum):
    LOWER = -1
    KEEP = 0
    RAISE = 1


@dataclass(frozen=True)
class StepStats:
    step: int
    full_count: int
    fraction: float
    refined: int
    coarsened: int


@dataclass
class OrderField:
    """
    element 별 활성 차수 (base 또는 full)

    :param base: 모든 element 가 계산하는 차수 b
    :param full: 고차 element 의 차수 p (= b+1, 비적응이면 b)
    :param orders: (ne,) 활성 차수
    """

    base: int
    full: int
    orders: np.ndarray
    history: List[StepStats] = field(default_factory=list)

    def __post_init__(self):
        if self.full not in (self.base, self.base + 1) or not 0 <= self.base <= 3 or self.full > 3:
            raise ValueError(f"차수 조합이 올바르지 않습니다: b={self.base}, p={self.full}")
        self.orders = np.asarray(self.orders, dtype=np.int64)
        if np.any((self.orders != self.base) & (self.orders != self.full)):
            raise ValueError("활성 차수는 base 또는 full 이어야 합니다.")

    @classmethod
    def uniform(cls, n_elements: int, p: int) -> "OrderField":
        return cls(base=p, full=p, orders=np.full(n_elements, p))

    @classmethod
    def static_fraction(cls, n_elements: int, base: int, full: int, every: int) -> "OrderField":
        """index ≡ 0 (mod every) 인 element 를 full 차수로"""
        if every < 1:
            raise ValueError("fraction 은 1 이상이어야 합니다.")
        orders = np.full(n_elements, base)
        orders[::every] = full
        return cls(base=base, full=full, orders=orders)

    @property
    def adaptive(self) -> bool:
        return self.full > self.base

    @property
    def n_elements(self) -> int:
        return self.orders.size

    def full_elements(self) -> np.ndarray:
        return np.flatnonzero(self.orders == self.full)

    def full_count(self) -> int:
        return int(np.count_nonzero(self.orders == self.full))

    def fraction(self) -> float:
        return self.full_count() / max(1, self.n_elements)

    def active_modes(self) -> np.ndarray:
        """(ne,) K(활성 차수)"""
        table = np.array([K_OF_P[p] for p in range(4)])
        return table[self.orders]

    def mode_mask(self, size: int) -> np.ndarray:
        """(ne, 1, size) 활성 모드 마스크"""
        return (np.arange(size)[None, :] < self.active_modes()[:, None]).astype(float)[:, None, :]

    def mean_fraction(self, after_step: int = 0) -> float:
        values = [s.fraction for s in self.history if s.step >= after_step]
        return float(np.mean(values)) if values else self.fraction()


def apply_order_change(state: State, order_field: OrderField, decisions: np.ndarray, step: int = 0) -> StepStats:
    """
    RAISE: 모드 K(b)+1..K(p) 를 0 으로 초기화하고 활성화, LOWER: 같은 모드를 0 으로

    하위 모드 계수는 건드리지 않는다.
    """
    decisions = np.asarray(decisions)
    kb, kp = K_OF_P[order_field.base], K_OF_P[order_field.full]
    raise_ids = np.flatnonzero((decisions == Decision.RAISE) & (order_field.orders == order_field.base))
    lower_ids = np.flatnonzero((decisions == Decision.LOWER) & (order_field.orders == order_field.full))
    if order_field.adaptive:
        changed = np.concatenate([raise_ids, lower_ids])
        state.c[changed, :, kb:kp] = 0.0
        state.u[changed, :, kb:kp] = 0.0
        order_field.orders[raise_ids] = order_field.full
        order_field.orders[lower_ids] = order_field.base
    else:
        raise_ids = lower_ids = np.empty(0, dtype=np.int64)

    stats = StepStats(step=step, full_count=order_field.full_count(), fraction=order_field.fraction(),
                      refined=int(raise_ids.size), coarsened=int(lower_ids.size))
    order_field.history.append(stats)
    logger.debug(f"🔧 step {step}: 고차 {stats.full_count} ({stats.fraction:.4f}), "
                 f"+{stats.refined} / -{stats.coarsened}")
    return stats
