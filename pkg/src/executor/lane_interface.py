from abc import ABC, abstractmethod
from concurrent.futures import Future
from typing import Any, Callable, Optional


class LaneInterface(ABC):
    """
    kernel 을 실행하는 독립 실행 컨텍스트 (CPU/가속기 역할)
    """

    name: str

    @property
    @abstractmethod
    def chunk_size(self) -> Optional[int]:
        """kernel 이 한 번에 처리할 element/edge 수 (None 이면 전체)"""

    @abstractmethod
    def submit(self, fn: Callable[..., Any], *args, **kwargs) -> Future:
        """비동기 실행, 같은 lane 의 작업은 제출 순서대로 직렬 실행"""

    def run(self, fn: Callable[..., Any], *args, **kwargs) -> Any:
        """동기 실행"""
        return self.submit(fn, *args, **kwargs).result()

    @abstractmethod
    def shutdown(self) -> None:
        """worker 정리"""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        self.shutdown()
