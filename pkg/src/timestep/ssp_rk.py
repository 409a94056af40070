from dataclasses import dataclass

import numpy as np

SUBSTEPS_PER_STEP = 2


@dataclass(frozen=True)
class TimeLoopConfig:
    """
    :param dt: 시간 간격 [s]
    :param steps: step 수 (step 당 substep 2회)
    """

    dt: float
    steps: int
    t0: float = 0.0

    def __post_init__(self):
        if not self.dt > 0.0:
            raise ValueError(f"dt 는 양수여야 합니다: {self.dt}")
        if self.steps < 1:
            raise ValueError(f"steps 는 1 이상이어야 합니다: {self.steps}")

    @property
    def substeps(self) -> int:
        return SUBSTEPS_PER_STEP * self.steps

    @property
    def t_end(self) -> float:
        return self.t0 + self.dt * self.steps


def rk_substep_update(stage: int, c_n: np.ndarray, c_stage: np.ndarray, residual: np.ndarray,
                      dt: float) -> np.ndarray:
    """
    SSP-RK2

    stage 1: c1 = cn + dt L(cn)
    stage 2: cn+1 = ½ cn + ½ (c1 + dt L(c1))
    """
    if stage == 1:
        return c_n + dt * residual
    if stage == 2:
        return 0.5 * c_n + 0.5 * (c_stage + dt * residual)
    raise ValueError(f"stage 는 1 또는 2 입니다: {stage}")
