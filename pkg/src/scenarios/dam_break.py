import numpy as np

from src.scenarios.base import BaseScenario

CENTER = (2.5, 2.5)
RADIUS = 0.5


class DamBreak(BaseScenario):
    """
    원형 댐 붕괴: 반경 0.5 원판 안에서 ξ = 2 + 0.5 exp(-15 r²), 밖에서 ξ = 1, U = V = 0
    """

    name = "dam_break"

    def initial_elevation(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        r2 = (x - CENTER[0]) ** 2 + (y - CENTER[1]) ** 2
        return np.where(r2 < RADIUS ** 2, 2.0 + 0.5 * np.exp(-15.0 * r2), 1.0)

    @staticmethod
    def analytic_mass(domain_area: float = 25.0) -> float:
        """∫ξ = area + π r² + (π/30)(1 - e^{-15 r²})"""
        return domain_area + np.pi * RADIUS ** 2 + np.pi / 30.0 * (1.0 - np.exp(-15.0 * RADIUS ** 2))
