"""물리 flux A(c, u) 의 모드 곱 표현 (element/edge 커널 공용)"""
from typing import Tuple

import numpy as np


def momentum_pairs(xi: np.ndarray, U: np.ndarray, V: np.ndarray, u: np.ndarray, v: np.ndarray,
                   hb: np.ndarray, g: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    운동량 flux 의 (i, j) 모드 곱 계수, 각 (n, K, K)

    U 행: x = U u + g/2 ξ² + g ξ h_b,  y = U v
    V 행: x = V u,                      y = V v + g/2 ξ² + g ξ h_b
    """
    pressure = 0.5 * g * np.einsum("ei,ej->eij", xi, xi) + g * np.einsum("ei,ej->eij", xi, hb)
    ux = np.einsum("ei,ej->eij", U, u) + pressure
    uy = np.einsum("ei,ej->eij", U, v)
    vx = np.einsum("ei,ej->eij", V, u)
    vy = np.einsum("ei,ej->eij", V, v) + pressure
    return ux, uy, vx, vy


def to_reference(G: np.ndarray, fx: np.ndarray, fy: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    물리 flux 성분 -> 기준 좌표 성분 (G = J^{-T}, element 별 상수)

    ∫ F·∇φ_q = s ∫ (F̂x ∂x̂φ̂_q + F̂y ∂ŷφ̂_q) det J 이므로 F̂ = G^T F
    """
    extra = (1,) * (fx.ndim - 1)
    g00 = G[:, 0, 0].reshape(-1, *extra)
    g01 = G[:, 0, 1].reshape(-1, *extra)
    g10 = G[:, 1, 0].reshape(-1, *extra)
    g11 = G[:, 1, 1].reshape(-1, *extra)
    return g00 * fx + g10 * fy, g01 * fx + g11 * fy


def contract_triple(T: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Σ_ij T[q,i,j] P[e,i,j] -> (e, q)"""
    k = T.shape[0]
    return P.reshape(P.shape[0], -1) @ T.reshape(k, -1).T
