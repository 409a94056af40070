"""
기준 도형 위의 Gauss 적분 규칙 (setup 단계와 검증 전용, 시간 루프에서는 쓰지 않음)
"""
import math
from typing import Tuple

import numpy as np
from scipy.special import roots_jacobi, roots_legendre


def line_rule(degree: int) -> Tuple[np.ndarray, np.ndarray]:
    """[0,1] 위 Gauss-Legendre, degree 차 다항식까지 정확"""
    n = max(1, math.ceil((degree + 1) / 2))
    x, w = roots_legendre(n)
    return 0.5 * (x + 1.0), 0.5 * w


def triangle_rule(degree: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    기준 삼각형 (0,0),(1,0),(0,1) 위의 collapsed Gauss 규칙

    x = a(1-b), y = b 로 정사각형을 접고 (1-b) 가중치는 Gauss-Jacobi(1,0) 이 흡수한다.

    :return: points (n,2), weights (n,) (합 = 1/2)
    """
    n = max(1, math.ceil((degree + 1) / 2))
    a, wa = roots_legendre(n)
    b, wb = roots_jacobi(n, 1.0, 0.0)
    a = 0.5 * (a + 1.0)
    wa = 0.5 * wa
    b = 0.5 * (b + 1.0)
    wb = 0.25 * wb
    A, B = np.meshgrid(a, b, indexing="ij")
    WA, WB = np.meshgrid(wa, wb, indexing="ij")
    points = np.column_stack([(A * (1.0 - B)).ravel(), B.ravel()])
    return points, (WA * WB).ravel()
