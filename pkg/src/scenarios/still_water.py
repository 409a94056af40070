import numpy as np

from src.scenarios.base import BaseScenario


class StillWater(BaseScenario):
    """호수 정지 상태 ξ ≡ level"""

    name = "still_water"

    def __init__(self, bathymetry: float = 0.5, level: float = 1.0):
        super().__init__(bathymetry)
        self.level = level

    def initial_elevation(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.full_like(x, self.level, dtype=float)
