from dataclasses import dataclass
from enum import Enum


class FrictionLaw(str, Enum):
    LINEAR = "linear"          # τ_bf = k·H
    QUADRATIC = "quadratic"    # τ_bf = k·|u|


@dataclass(frozen=True)
class PhysParams:
    """
    물리 상수

    :param g: 중력가속도 [m/s²]
    :param f_c: Coriolis 계수 [1/s]
    :param friction_k: 마찰 계수 (linear: 1/s, quadratic: 무차원)
    :param force_x: body force x [m²/s²]
    :param h_min: 최소 수심 [m]
    """

    g: float = 1.0
    f_c: float = 1e-5
    friction_law: FrictionLaw = FrictionLaw.LINEAR
    friction_k: float = 1e-4
    force_x: float = 0.0
    force_y: float = 0.0
    h_min: float = 1e-3

    def __post_init__(self):
        if self.g <= 0.0:
            raise ValueError("g 는 양수여야 합니다.")
        if self.h_min <= 0.0:
            raise ValueError("h_min 은 양수여야 합니다.")
        if self.friction_k < 0.0:
            raise ValueError("friction_k 는 음수일 수 없습니다.")
        object.__setattr__(self, "friction_law", FrictionLaw(self.friction_law))
