"""
quadrature-free 스킴에서 쓰는 모든 적분 텐서

element 텐서는 다항식 곱/미분 후 단항식 정확 적분으로 계산하고,
edge 텐서는 차수 3*p_max 까지 정확한 Gauss-Legendre 규칙으로 계산한다.
물리 element 로의 변환은 스케일 s_e = 1/sqrt(det J_e) 와 G_e = J_e^{-T} 로 이루어진다.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import convolve2d

from src.basis.polynomials import ReferenceBasis
from src.basis.quadrature import line_rule
from src.mesh.mesh import Mesh

logger = logging.getLogger("Basis")

REFERENCE_VERTICES = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])

_MAXDEG = 12
_MONOMIAL_INTEGRALS = np.array([[math.factorial(a) * math.factorial(b) / math.factorial(a + b + 2)
                                 for b in range(_MAXDEG + 1)] for a in range(_MAXDEG + 1)])


def _integrate(P: np.ndarray) -> float:
    n, m = P.shape
    return float(np.sum(P * _MONOMIAL_INTEGRALS[:n, :m]))


def _dx(P: np.ndarray) -> np.ndarray:
    out = np.zeros_like(P)
    out[:-1, :] = P[1:, :] * np.arange(1, P.shape[0])[:, None]
    return out


def _dy(P: np.ndarray) -> np.ndarray:
    out = np.zeros_like(P)
    out[:, :-1] = P[:, 1:] * np.arange(1, P.shape[1])[None, :]
    return out


def edge_points(local_edge: int, t: np.ndarray, reverse: bool = False) -> np.ndarray:
    """기준 삼각형 local edge 위의 점, t in [0,1], reverse 이면 1-t 로 진행"""
    s = 1.0 - t if reverse else t
    a = REFERENCE_VERTICES[local_edge]
    b = REFERENCE_VERTICES[(local_edge + 1) % 3]
    return a[None, :] + s[:, None] * (b - a)[None, :]


@dataclass(frozen=True)
class ReferenceTensors:
    """
    기준 삼각형 텐서 (인덱스는 0-based)

    DX[q,i]      = ∫ ∂x̂φ_q φ_i
    SX[q,i,j]    = ∫ ∂x̂φ_q φ_i φ_j
    M2[q,i]      = ∫ φ_q φ_i
    M3[q,i,j]    = ∫ φ_q φ_i φ_j
    E1[l,i]      = ∫_0^1 φ_i(edge l) dt
    E2[lT,lS,o,q,i]   = ∫_0^1 φ_q(edge lT, t) φ_i(edge lS, t') dt
    E3[lT,lS,o,q,i,j] = ∫_0^1 φ_q(edge lT, t) φ_i φ_j(edge lS, t') dt
    (o=1 이면 t' = 1-t)
    """

    p_max: int
    phi1: float
    DX: np.ndarray
    DY: np.ndarray
    SX: np.ndarray
    SY: np.ndarray
    M2: np.ndarray
    M3: np.ndarray
    E1: np.ndarray
    E2: np.ndarray
    E3: np.ndarray

    @property
    def size(self) -> int:
        return self.M2.shape[0]


@dataclass(frozen=True)
class BasisTables:
    """
    기준 텐서 + element 별 기하 인자

    :param scale: (ne,) s_e = 1/sqrt(det J_e), φ_e = s_e φ̂ ∘ F_e^{-1}
    :param grad_map: (ne,2,2) J_e^{-T}
    :param sqrt_area: (ne,) sqrt(|Ω_e|), 상수 함수 1 의 계수
    """

    reference: ReferenceTensors
    scale: np.ndarray
    grad_map: np.ndarray
    sqrt_area: np.ndarray

    @property
    def p_max(self) -> int:
        return self.reference.p_max

    @property
    def size(self) -> int:
        return self.reference.size

    @property
    def mean_factor(self) -> np.ndarray:
        """계수 c_1 -> element 평균값 (s_e φ̂_1 = 1/sqrt|Ω_e|)"""
        return 1.0 / self.sqrt_area


def build_reference_tensors(basis: ReferenceBasis) -> ReferenceTensors:
    k = basis.size
    polys = [basis.poly2d(i) for i in range(k)]
    dxs = [_dx(P) for P in polys]
    dys = [_dy(P) for P in polys]

    M2 = np.array([[_integrate(convolve2d(polys[q], polys[i])) for i in range(k)] for q in range(k)])
    DX = np.array([[_integrate(convolve2d(dxs[q], polys[i])) for i in range(k)] for q in range(k)])
    DY = np.array([[_integrate(convolve2d(dys[q], polys[i])) for i in range(k)] for q in range(k)])

    pair = [[convolve2d(polys[i], polys[j]) for j in range(k)] for i in range(k)]
    M3 = np.empty((k, k, k))
    SX = np.empty((k, k, k))
    SY = np.empty((k, k, k))
    for q in range(k):
        for i in range(k):
            for j in range(i, k):
                m = _integrate(convolve2d(pair[i][j], polys[q]))
                sx = _integrate(convolve2d(pair[i][j], dxs[q]))
                sy = _integrate(convolve2d(pair[i][j], dys[q]))
                M3[q, i, j] = M3[q, j, i] = m
                SX[q, i, j] = SX[q, j, i] = sx
                SY[q, i, j] = SY[q, j, i] = sy

    t, w = line_rule(3 * max(basis.p_max, 1))
    values = {(l, o): basis.evaluate(edge_points(l, t, reverse=bool(o))) for l in range(3) for o in range(2)}
    E1 = np.array([w @ values[(l, 0)] for l in range(3)])
    E2 = np.empty((3, 3, 2, k, k))
    E3 = np.empty((3, 3, 2, k, k, k))
    for lt in range(3):
        vt = values[(lt, 0)]
        for ls in range(3):
            for o in range(2):
                vs = values[(ls, o)]
                E2[lt, ls, o] = np.einsum("n,nq,ni->qi", w, vt, vs)
                E3[lt, ls, o] = np.einsum("n,nq,ni,nj->qij", w, vt, vs, vs)

    return ReferenceTensors(p_max=basis.p_max, phi1=basis.constant_value,
                            DX=DX, DY=DY, SX=SX, SY=SY, M2=M2, M3=M3, E1=E1, E2=E2, E3=E3)


def build_tensors(basis: ReferenceBasis, mesh: Mesh) -> BasisTables:
    """
    :param basis: build_reference_basis 결과
    :param mesh: 검증된 격자
    """
    reference = build_reference_tensors(basis)
    tables = BasisTables(
        reference=reference,
        scale=1.0 / np.sqrt(mesh.det_jacobian),
        grad_map=mesh.inv_jacobian_t.copy(),
        sqrt_area=np.sqrt(mesh.element_area),
    )
    logger.info(f"✅ 적분 텐서 준비 완료: p_max={basis.p_max}, K={reference.size}, elements={mesh.n_elements}")
    return tables
