from typing import Callable

import numpy as np

from src.basis.polynomials import ReferenceBasis
from src.basis.quadrature import triangle_rule
from src.mesh.mesh import Mesh

# f(x, y) -> values, 배열 입력
ScalarField = Callable[[np.ndarray, np.ndarray], np.ndarray]


def project_function(f: ScalarField, mesh: Mesh, basis: ReferenceBasis, p: int = None,
                     degree: int = 12) -> np.ndarray:
    """
    element 별 L2 투영, c_i = ∫_Ωe f φ_i

    :return: (ne, K(p)) 계수
    """
    points, weights = triangle_rule(degree)
    phi = basis.evaluate(points, p)                       # (nq, K)
    p0 = mesh.vertices[mesh.elements[:, 0]]               # (ne, 2)
    x = p0[:, None, :] + np.einsum("eab,nb->ena", mesh.jacobian, points)
    values = np.asarray(f(x[..., 0], x[..., 1]), dtype=float)
    values = np.broadcast_to(values, x.shape[:2])
    return np.sqrt(mesh.det_jacobian)[:, None] * np.einsum("en,n,nk->ek", values, weights, phi)
