from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from src.dg.boundary import ElevationForcing
from src.mesh.generator import BoundaryRule, land_everywhere


class BaseScenario(ABC):
    def __init__(self, bathymetry: float = 0.5):
        """
        :param bathymetry: 상수 h_b [m]
        """
        self.bathymetry = bathymetry

    name: str = "base"

    @abstractmethod
    def initial_elevation(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """초기 수면 ξ(x, y), 하위 클래스에서 구현"""

    def initial_momentum(self, x: np.ndarray, y: np.ndarray):
        """초기 (U, V), 기본값 정지 상태"""
        return np.zeros_like(x), np.zeros_like(y)

    def bathymetry_field(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.full_like(x, self.bathymetry, dtype=float)

    def boundary_rule(self) -> BoundaryRule:
        return land_everywhere

    def forcing(self) -> Optional[ElevationForcing]:
        return None
