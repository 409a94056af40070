import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np

from src.errors import DomainError, UnsupportedOrderError

logger = logging.getLogger("Basis")

MAX_ORDER = 3
K_OF_P: Dict[int, int] = {0: 1, 1: 3, 2: 6, 3: 10}
REFERENCE_AREA = 0.5

# 총차수 순서의 단항식 지수 (a, b) -> x^a y^b
MONOMIALS: List[Tuple[int, int]] = [(d - k, k) for d in range(MAX_ORDER + 1) for k in range(d + 1)]


def num_basis(p: int) -> int:
    if p not in K_OF_P:
        raise UnsupportedOrderError(f"지원하지 않는 차수: p={p} (0..{MAX_ORDER})")
    return K_OF_P[p]


def degree_of_index(i: int) -> int:
    """0-based basis 인덱스의 총차수"""
    return MONOMIALS[i][0] + MONOMIALS[i][1]


def monomial_integral(a: int, b: int) -> Fraction:
    """기준 삼각형 위 정확 적분: a! b! / (a+b+2)!"""
    return Fraction(math.factorial(a) * math.factorial(b), math.factorial(a + b + 2))


@dataclass(frozen=True)
class ReferenceBasis:
    """
    기준 삼각형 위 계층적 L2-정규직교 basis

    coefficients[i, m] 은 phi_i 의 단항식 MONOMIALS[m] 계수. 하삼각이므로
    앞의 K(b) 개 함수가 곧 차수 b basis 이다.
    """

    p_max: int
    coefficients: np.ndarray

    @property
    def size(self) -> int:
        return self.coefficients.shape[0]

    def poly2d(self, i: int) -> np.ndarray:
        """phi_i 를 P[a, b] (x^a y^b 계수) 형태로 반환"""
        P = np.zeros((MAX_ORDER + 1, MAX_ORDER + 1))
        for m, (a, b) in enumerate(MONOMIALS[:self.size]):
            P[a, b] = self.coefficients[i, m]
        return P

    def evaluate(self, points: np.ndarray, p: int = None) -> np.ndarray:
        """(npts, K(p)) 값 행렬"""
        k = self.size if p is None else num_basis(p)
        points = np.atleast_2d(points)
        V = _monomial_matrix(points, self.size)
        return V @ self.coefficients[:k].T

    def gradient(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """기준 좌표 도함수 (d/dx̂, d/dŷ), 각각 (npts, K)"""
        points = np.atleast_2d(points)
        x, y = points[:, 0], points[:, 1]
        dx = np.zeros((points.shape[0], self.size))
        dy = np.zeros_like(dx)
        for m, (a, b) in enumerate(MONOMIALS[:self.size]):
            if a > 0:
                dx[:, m] = a * x ** (a - 1) * y ** b
            if b > 0:
                dy[:, m] = b * x ** a * y ** (b - 1)
        return dx @ self.coefficients.T, dy @ self.coefficients.T

    @property
    def constant_value(self) -> float:
        return float(self.coefficients[0, 0])


def _monomial_matrix(points: np.ndarray, k: int) -> np.ndarray:
    x, y = points[:, 0], points[:, 1]
    return np.column_stack([x ** a * y ** b for a, b in MONOMIALS[:k]])


def build_reference_basis(p_max: int) -> ReferenceBasis:
    """
    단항식에 대한 Gram-Schmidt (유리수 정확 연산) 로 정규직교 basis 생성

    :param p_max: 0..3
    """
    k = num_basis(p_max)
    gram = [[monomial_integral(MONOMIALS[m][0] + MONOMIALS[n][0], MONOMIALS[m][1] + MONOMIALS[n][1])
             for n in range(k)] for m in range(k)]

    def inner(u: List[Fraction], v: List[Fraction]) -> Fraction:
        return sum((u[m] * gram[m][n] * v[n] for m in range(k) for n in range(k)
                    if u[m] and v[n]), Fraction(0))

    ortho: List[List[Fraction]] = []
    norms: List[Fraction] = []
    for i in range(k):
        vec = [Fraction(int(m == i)) for m in range(k)]
        for prev, nrm in zip(ortho, norms):
            proj = inner(vec, prev) / nrm
            vec = [v - proj * w for v, w in zip(vec, prev)]
        ortho.append(vec)
        norms.append(inner(vec, vec))

    coefficients = np.array([[float(v) / math.sqrt(float(nrm)) for v in vec]
                             for vec, nrm in zip(ortho, norms)])
    logger.debug(f"🔧 기준 basis 생성: p_max={p_max}, K={k}")
    return ReferenceBasis(p_max=p_max, coefficients=coefficients)


def eval_basis(basis: ReferenceBasis, p: int, point, tol: float = 1e-12) -> np.ndarray:
    """
    기준 삼각형(닫힌 집합) 안의 한 점에서 처음 K(p) 개 basis 값

    :raises DomainError: 점이 기준 삼각형 밖
    """
    x, y = float(point[0]), float(point[1])
    if x < -tol or y < -tol or x + y > 1.0 + tol:
        raise DomainError(f"점 ({x}, {y}) 이 기준 삼각형 밖에 있습니다.")
    if num_basis(p) > basis.size:
        raise UnsupportedOrderError(f"basis 는 p={basis.p_max} 까지만 생성되었습니다.")
    return basis.evaluate(np.array([[x, y]]), p)[0]
