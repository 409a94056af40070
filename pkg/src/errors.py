"""
솔버 전역 예외 정의

입력/설정 오류는 ValueError 계열, 실행 중 수치 오류는 RuntimeError 계열로 둔다.
"""
from typing import Optional


class ConfigError(ValueError):
    """설정 파일 오류 (line=0 이면 파일 전체 일관성 오류)"""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        prefix = f"line {line}: " if line else ""
        super().__init__(f"{prefix}{message}")


class MeshStructureError(ValueError):
    """비다양체 edge, 방향 불일치, 뒤집힌 element 등 격자 구조 오류"""


class UnsupportedOrderError(ValueError):
    """지원하지 않는 다항식 차수 (p > 3)"""


class DomainError(ValueError):
    """기준 삼각형 밖의 점에서 basis 를 평가하려 할 때"""


class TimingInputError(ValueError):
    """kernel timing 테이블 누락/형식 오류"""


class DepthDegeneracyError(RuntimeError):
    """uH = q 시스템이 특이하거나 pivot 이 양수가 아님"""

    def __init__(self, element: int, detail: str = ""):
        self.element = element
        super().__init__(f"element {element}: 수심 퇴화로 보조 시스템을 풀 수 없음 {detail}".strip())


class InvariantViolationError(RuntimeError):
    """min depth 이후에도 H <= 0 인 상태로 λ 계산 시도"""


class NonFiniteStateError(RuntimeError):
    """RK 갱신 후 NaN/Inf 발생"""

    def __init__(self, step: int, element: Optional[int]):
        self.step = step
        self.element = element
        super().__init__(f"step {step}, element {element}: 계수에 NaN/Inf 발생")


class LaneExecutionError(RuntimeError):
    """lane 위에서 kernel 실행 실패"""

    def __init__(self, kernel: str, lane: str, cause: BaseException):
        self.kernel = kernel
        self.lane = lane
        super().__init__(f"kernel '{kernel}' 실행 실패 (lane {lane}): {cause}")
