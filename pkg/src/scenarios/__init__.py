from src.scenarios.base import BaseScenario
from src.scenarios.dam_break import DamBreak
from src.scenarios.still_water import StillWater


def get_scenario(name: str, bathymetry: float = 0.5) -> BaseScenario:
    if name.startswith("dam_break"):
        return DamBreak(bathymetry)
    if name == "still_water":
        return StillWater(bathymetry)
    raise ValueError(f"지원되지 않는 시나리오: {name}")
