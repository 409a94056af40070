import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import pandas as pd

from src.errors import TimingInputError

logger = logging.getLogger("Executor")

COLUMNS = ["kernel", "p_pair", "distribution", "lane", "mean_ms", "stddev_ms", "samples"]
HOMOGENEOUS = "homogeneous"
HETEROGENEOUS = "heterogeneous"
TOTAL = "total"


@dataclass(frozen=True)
class KernelStat:
    mean_ms: float
    stddev_ms: float = 0.0
    samples: int = 1

    def __post_init__(self):
        if self.mean_ms < 0.0 or self.stddev_ms < 0.0:
            raise TimingInputError(f"시간은 음수일 수 없습니다: {self.mean_ms}")
        if self.samples < 1:
            raise TimingInputError(f"sample 수는 1 이상이어야 합니다: {self.samples}")


class LaneTimings:
    """
    kernel x lane 실행 시간표

    :param stats: {(kernel, lane): KernelStat}
    """

    def __init__(self, stats: Optional[Dict[Tuple[str, str], KernelStat]] = None):
        self.stats: Dict[Tuple[str, str], KernelStat] = dict(stats or {})

    def set(self, kernel: str, lane: str, stat: KernelStat) -> None:
        self.stats[(kernel, lane)] = stat

    def get(self, kernel: str, lane: str) -> KernelStat:
        try:
            return self.stats[(kernel, lane)]
        except KeyError:
            raise TimingInputError(f"timing 누락: kernel={kernel}, lane={lane}")

    def mean(self, kernel: str, lane: str) -> float:
        return self.get(kernel, lane).mean_ms

    def kernels(self) -> List[str]:
        return sorted({k for k, _ in self.stats})

    def lanes(self) -> List[str]:
        return sorted({lane for _, lane in self.stats})

    def require(self, kernels: Iterable[str], lanes: Iterable[str] = ("A", "B")) -> None:
        """모든 kernel 이 모든 lane 에 있는지 확인"""
        for kernel in kernels:
            for lane in lanes:
                self.get(kernel, lane)

    def total(self, lane: str, kernels: Iterable[str]) -> float:
        return sum(self.mean(k, lane) for k in kernels)

    def merge(self, other: "LaneTimings") -> "LaneTimings":
        merged = dict(self.stats)
        merged.update(other.stats)
        return LaneTimings(merged)

    def to_frame(self, p_pair: str = "", distribution: str = HOMOGENEOUS) -> pd.DataFrame:
        rows = [{"kernel": k, "p_pair": p_pair, "distribution": distribution, "lane": lane,
                 "mean_ms": s.mean_ms, "stddev_ms": s.stddev_ms, "samples": s.samples}
                for (k, lane), s in sorted(self.stats.items())]
        return pd.DataFrame(rows, columns=COLUMNS)

    def __len__(self) -> int:
        return len(self.stats)


def timings_from_frame(df: pd.DataFrame, p_pair: Optional[str] = None,
                       distribution: Optional[str] = HOMOGENEOUS) -> LaneTimings:
    """
    CSV 행을 LaneTimings 로, total 행은 제외

    :param p_pair: "0-1" 등, None 이면 전체 (중복 시 오류)
    """
    missing = [c for c in COLUMNS if c not in df.columns]
    if missing:
        raise TimingInputError(f"timing 테이블에 컬럼이 없습니다: {missing}")
    df = df[df["kernel"] != TOTAL]
    if p_pair is not None:
        df = df[df["p_pair"].astype(str) == str(p_pair)]
    if distribution is not None:
        df = df[df["distribution"] == distribution]
    if df.empty:
        raise TimingInputError(f"선택된 timing 행이 없습니다 (p_pair={p_pair}, distribution={distribution})")

    timings = LaneTimings()
    for row in df.itertuples(index=False):
        key = (str(row.kernel), str(row.lane))
        if key in timings.stats:
            raise TimingInputError(f"중복된 timing 행: {key}")
        try:
            stat = KernelStat(float(row.mean_ms), float(row.stddev_ms), int(row.samples))
        except (TypeError, ValueError) as e:
            raise TimingInputError(f"timing 값 형식 오류 {key}: {e}") from e
        timings.set(*key, stat)
    return timings


def read_timings(path: str, p_pair: Optional[str] = None,
                 distribution: Optional[str] = HOMOGENEOUS) -> LaneTimings:
    try:
        df = pd.read_csv(path, dtype={"p_pair": str})
    except FileNotFoundError:
        raise TimingInputError(f"timing 파일이 없습니다: {path}")
    timings = timings_from_frame(df, p_pair, distribution)
    logger.info(f"✅ timing 로드: {path} ({len(timings)} 항목)")
    return timings


def read_totals(path: str, p_pair: str) -> Dict[Tuple[str, str], float]:
    """{(distribution, lane): 측정 총 시간}"""
    df = pd.read_csv(path, dtype={"p_pair": str})
    df = df[(df["kernel"] == TOTAL) & (df["p_pair"] == str(p_pair))]
    return {(r.distribution, r.lane): float(r.mean_ms) for r in df.itertuples(index=False)}


def write_timings(timings: LaneTimings, path: str, p_pair: str = "",
                  distribution: str = HOMOGENEOUS) -> None:
    timings.to_frame(p_pair, distribution).to_csv(path, index=False)
    logger.info(f"✅ timing 저장: {path}")
