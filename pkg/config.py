#config
"""
실행 설정: `key = value` 텍스트 <-> RunConfig (pydantic)
"""
from typing import Dict, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.errors import ConfigError

Scenario = Literal["dam_break_static", "dam_break_dynamic", "still_water"]
Mode = Literal["lane_A", "lane_B", "heterogeneous", "measure_then_optimize"]


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    # scenario / mesh
    scenario: Scenario = "still_water"
    nx: int = Field(16, ge=1)
    perturbation: float = Field(0.2, ge=0.0, lt=0.5)
    seed: int = 0
    domain_x0: float = 0.0
    domain_x1: float = 5.0
    domain_y0: float = 0.0
    domain_y1: float = 5.0

    # orders / adaptivity
    base_order: int = Field(0, ge=0, le=3)
    full_order: int = Field(1, ge=0, le=3)
    unseparated: bool = False
    fraction: Optional[int] = Field(None, ge=1)
    theta_refine: float = Field(1e-3, ge=0.0)
    theta_coarsen: float = Field(2e-4, ge=0.0)
    max_fraction: float = Field(0.08, gt=0.0, le=1.0)

    # time loop
    dt: float = Field(1e-5, gt=0.0)
    steps: int = Field(100, ge=1)

    # physics (dam break 기본값)
    g: float = Field(1.0, gt=0.0)
    f_c: float = 1e-5
    friction_law: Literal["linear", "quadratic"] = "linear"
    friction_k: float = Field(1e-4, ge=0.0)
    force_x: float = 0.0
    force_y: float = 0.0
    h_min: float = Field(1e-3, gt=0.0)
    bathymetry: float = 0.5

    # execution
    mode: Mode = "lane_A"
    lane_a_chunk: Optional[int] = Field(4096, ge=1)
    lane_b_chunk: Optional[int] = Field(None, ge=1)
    warmup_substeps: int = Field(10, ge=0)
    measured_substeps: int = Field(200, ge=1)
    affinity: bool = False

    # outputs
    timings_csv: Optional[str] = None
    snapshot_csv: Optional[str] = None
    report_csv: Optional[str] = None
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"

    @model_validator(mode="after")
    def _check_combination(self):
        if self.full_order not in (self.base_order, self.base_order + 1):
            raise ValueError(f"full_order 는 base_order 또는 base_order+1 이어야 합니다 "
                             f"({self.base_order}, {self.full_order})")
        if self.theta_coarsen >= self.theta_refine:
            raise ValueError("theta_coarsen 은 theta_refine 보다 작아야 합니다.")
        if self.domain_x1 <= self.domain_x0 or self.domain_y1 <= self.domain_y0:
            raise ValueError("domain 범위가 올바르지 않습니다.")
        if self.scenario == "dam_break_dynamic":
            if self.fraction is not None:
                raise ValueError("fraction 은 정적 적응 (dam_break_static, still_water) 에서만 쓸 수 있습니다.")
            if self.full_order != self.base_order + 1:
                raise ValueError("dam_break_dynamic 은 full_order = base_order + 1 이 필요합니다.")
        if self.scenario == "dam_break_static" and self.adaptive and self.fraction is None:
            raise ValueError("dam_break_static 에는 fraction 이 필요합니다.")
        if self.fraction is not None and not self.adaptive:
            raise ValueError("fraction 은 full_order = base_order + 1 일 때만 의미가 있습니다.")
        if self.mode == "heterogeneous" and self.timings_csv is None:
            raise ValueError("heterogeneous 모드에는 timings_csv 가 필요합니다.")
        return self

    @property
    def adaptive(self) -> bool:
        return self.full_order > self.base_order

    @property
    def dynamic(self) -> bool:
        return self.scenario == "dam_break_dynamic"

    @property
    def p_pair(self) -> str:
        return f"{self.base_order}-{self.full_order}"

    @property
    def domain(self) -> Tuple[float, float, float, float]:
        return self.domain_x0, self.domain_x1, self.domain_y0, self.domain_y1


def _coerce(raw: str):
    value = raw.strip()
    if value.lower() in ("none", "null"):
        return None
    return value


def parse_config(text: str) -> RunConfig:
    """
    UTF-8 `key = value` 텍스트 파싱, `#` 이후는 주석

    :raises ConfigError: 알 수 없는 key, 형식 오류, 일관성 오류 (line 번호 포함, 전체 오류는 0)
    """
    values: Dict[str, object] = {}
    lines: Dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"'key = value' 형식이 아닙니다: {body!r}", lineno)
        key, raw = (s.strip() for s in body.split("=", 1))
        if key not in RunConfig.model_fields:
            raise ConfigError(f"알 수 없는 key: {key}", lineno)
        if key in values:
            raise ConfigError(f"중복된 key: {key}", lineno)
        values[key] = _coerce(raw)
        lines[key] = lineno

    try:
        return RunConfig.model_validate(values)
    except ValidationError as e:
        err = e.errors()[0]
        loc = err.get("loc") or ()
        field = loc[0] if loc else None
        raise ConfigError(f"{field or 'config'}: {err.get('msg')}", lines.get(field, 0)) from e


def _format(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_config(config: RunConfig) -> str:
    """parse_config 로 되읽을 수 있는 정규 텍스트"""
    return "".join(f"{key} = {_format(getattr(config, key))}\n" for key in RunConfig.model_fields)


def load_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as f:
        return parse_config(f.read())
