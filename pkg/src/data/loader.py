import os
from typing import Optional

from src.errors import TimingInputError
from src.executor.timings import HOMOGENEOUS, LaneTimings, read_timings

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))),
                           "data", "timings")
FIXTURE_PREFIX = "fixture:"


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURE_DIR, f"{name}.csv")


def load_timing_table(p_pair: str, source: str = "csv", filepath: Optional[str] = None,
                      distribution: Optional[str] = HOMOGENEOUS) -> LaneTimings:
    """
    kernel 시간표 로드

    :param source: "fixture" (data/timings/<filepath>.csv) 또는 "csv" (임의 경로)
    :param filepath: fixture 이름 또는 CSV 경로
    """
    if source == "fixture":
        if not filepath:
            raise TimingInputError("fixture 소스를 사용할 경우 fixture 이름이 필요합니다.")
        path = fixture_path(filepath)
    elif source == "csv":
        if filepath is None or not os.path.exists(filepath):
            raise TimingInputError(f"CSV 소스를 사용할 경우 유효한 filepath가 필요합니다: {filepath}")
        path = filepath
    else:
        raise TimingInputError(f"지원되지 않는 timing 소스: {source}")
    return read_timings(path, p_pair, distribution)


def resolve_timing_table(reference: str, p_pair: str) -> LaneTimings:
    """'fixture:<name>' 이면 내장 fixture, 아니면 CSV 경로"""
    if reference.startswith(FIXTURE_PREFIX):
        return load_timing_table(p_pair, "fixture", reference[len(FIXTURE_PREFIX):])
    return load_timing_table(p_pair, "csv", reference)
