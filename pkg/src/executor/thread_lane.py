from concurrent.futures import Future, ThreadPoolExecutor
from typing import Any, Callable, Optional

from src.executor.lane_interface import LaneInterface


class ThreadLane(LaneInterface):
    """
    worker 스레드 1개짜리 lane

    lane 간 차이는 chunk 크기뿐이다 (작은 chunk: 캐시 친화적 CPU 흉내, None: 전체 배열 일괄 처리).
    """

    def __init__(self, name: str, chunk_size: Optional[int] = None):
        if chunk_size is not None and chunk_size < 1:
            raise ValueError("chunk_size 는 1 이상이어야 합니다.")
        self.name = name
        self._chunk_size = chunk_size
        self._pool = ThreadPoolExecutor(max_workers=1, thread_name_prefix=f"lane-{name}")

    @property
    def chunk_size(self) -> Optional[int]:
        return self._chunk_size

    def submit(self, fn: Callable[..., Any], *args, **kwargs) -> Future:
        return self._pool.submit(fn, *args, **kwargs)

    def shutdown(self) -> None:
        self._pool.shutdown(wait=True)

    def __repr__(self) -> str:
        return f"ThreadLane(name={self.name!r}, chunk_size={self._chunk_size})"


def make_lanes(chunk_a: Optional[int] = 4096, chunk_b: Optional[int] = None):
    """기본 lane 쌍 {'A': ..., 'B': ...}"""
    return {"A": ThreadLane("A", chunk_a), "B": ThreadLane("B", chunk_b)}
