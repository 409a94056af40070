import logging
from functools import lru_cache

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from src.basis.polynomials import K_OF_P, degree_of_index, num_basis
from src.basis.tensors import BasisTables
from src.dg.state import QU, QV, XI, State
from src.errors import DepthDegeneracyError

logger = logging.getLogger("DGKernels")


@lru_cache(maxsize=None)
def depth_truncation(p: int) -> np.ndarray:
    """
    mask[n, i, j] = 1 if n < K(p, i, j)

    K(p, i, j) = min(K(p), K(deg(max(i, j)))), i = j = 1 이면 1
    """
    k = num_basis(p)
    top = np.maximum.outer(np.arange(k), np.arange(k))
    limit = np.vectorize(lambda m: min(K_OF_P[p], K_OF_P[degree_of_index(int(m))]))(top)
    mask = (np.arange(k)[:, None, None] < limit[None, :, :]).astype(float)
    mask.setflags(write=False)
    return mask


def depth_matrices(state: State, tables: BasisTables, elements: np.ndarray, p: int) -> np.ndarray:
    """(n, K(p), K(p)) 행렬 H_ij = ∫ (ξ_trunc + h_b) φ_i φ_j"""
    k = num_basis(p)
    M3 = tables.reference.M3[:k, :k, :k]
    trunc = M3 * depth_truncation(p)
    xi = state.c[elements, XI, :k]
    hb = state.hb[elements, :k]
    H = np.einsum("en,nij->eij", xi, trunc) + np.einsum("en,nij->eij", hb, M3)
    return H * tables.scale[elements][:, None, None]


def solve_single(H: np.ndarray, rhs: np.ndarray, element: int) -> np.ndarray:
    """LU 분해로 한 element 의 시스템을 푼다"""
    if np.any(np.diag(H) <= 0.0):
        raise DepthDegeneracyError(element, "(대각 성분 <= 0)")
    lu, piv = lu_factor(H, check_finite=False)
    if np.any(np.diag(lu) == 0.0):
        raise DepthDegeneracyError(element, "(특이 행렬)")
    return lu_solve((lu, piv), rhs, check_finite=False)


def solve_auxiliary(state: State, tables: BasisTables, orders: np.ndarray,
                    elements: np.ndarray = None) -> None:
    """
    uH = q 를 풀어 state.u 갱신, element 는 자신의 활성 차수 크기 시스템만 푼다

    :param orders: (ne,) 활성 차수
    :raises DepthDegeneracyError: 대각 <= 0 또는 특이 행렬
    """
    elements = np.arange(state.n_elements) if elements is None else elements
    for p in np.unique(orders[elements]):
        group = elements[orders[elements] == p]
        k = num_basis(int(p))
        H = depth_matrices(state, tables, group, int(p))
        diag = np.diagonal(H, axis1=1, axis2=2)
        bad = np.any(diag <= 0.0, axis=1)
        if np.any(bad):
            raise DepthDegeneracyError(int(group[np.flatnonzero(bad)[0]]), "(대각 성분 <= 0)")
        rhs = np.stack([state.c[group, QU, :k], state.c[group, QV, :k]], axis=2)
        try:
            sol = np.linalg.solve(H, rhs)
        except np.linalg.LinAlgError:
            sol = np.stack([solve_single(H[m], rhs[m], int(e)) for m, e in enumerate(group)])
        state.u[group, :, :k] = sol.transpose(0, 2, 1)
        state.u[group, :, k:] = 0.0
