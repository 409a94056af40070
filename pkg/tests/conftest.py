import numpy as np
import pytest

from src.basis import build_reference_basis, build_tensors, num_basis
from src.dg import State
from src.mesh import generate_perturbed_uniform_mesh


@pytest.fixture(scope="session")
def basis3():
    return build_reference_basis(3)


@pytest.fixture(scope="session")
def small_mesh():
    """nx=4, 32 elements"""
    return generate_perturbed_uniform_mesh(4, perturbation=0.2, seed=7)


@pytest.fixture(scope="session")
def mesh128():
    return generate_perturbed_uniform_mesh(8, perturbation=0.2, seed=3)


@pytest.fixture(scope="session")
def small_tables(small_mesh, basis3):
    return build_tensors(basis3, small_mesh)


@pytest.fixture(scope="session")
def tables128(mesh128, basis3):
    return build_tensors(basis3, mesh128)


def random_state(mesh, tables, p: int, seed: int = 0, amplitude: float = 0.1) -> State:
    """
    ξ ≈ 1, h_b ≈ 0.5 (선형 기울기 포함) 근처의 유계 난수 상태, 차수 p 까지의 모드만 채운다
    """
    rng = np.random.default_rng(seed)
    size = tables.size
    k = num_basis(p)
    state = State.allocate(mesh.n_elements, mesh.n_edges, mesh.boundary_edges.size, size)
    root = tables.sqrt_area[:, None]
    state.c[:, 0, 0] = 1.0 * root[:, 0]
    state.c[:, :, :k] += amplitude * rng.uniform(-1.0, 1.0, (mesh.n_elements, 3, k)) * root[:, :, None]
    state.u[:, :, :k] = amplitude * rng.uniform(-1.0, 1.0, (mesh.n_elements, 2, k)) * root[:, :, None]
    state.hb[:, 0] = 0.5 * root[:, 0]
    state.hb[:, 1:k] = 0.05 * rng.uniform(-1.0, 1.0, (mesh.n_elements, k - 1)) * root
    state.lam[:] = 1.0 + rng.uniform(0.0, 0.5, mesh.n_edges)
    state.ghost_c[:, :, :k] = amplitude * rng.uniform(-1.0, 1.0, (state.ghost_c.shape[0], 3, k))
    state.ghost_u[:, :, :k] = amplitude * rng.uniform(-1.0, 1.0, (state.ghost_u.shape[0], 2, k))
    return state


def physical_values(coefficients: np.ndarray, mesh, basis, element: int, points: np.ndarray) -> np.ndarray:
    """element 전개를 물리 좌표 점들에서 평가, coefficients (..., K)"""
    p0 = mesh.vertices[mesh.elements[element, 0]]
    ref = np.linalg.solve(mesh.jacobian[element], (points - p0).T).T
    k = coefficients.shape[-1]
    phi = basis.evaluate(ref)[:, :k] / np.sqrt(mesh.det_jacobian[element])
    return coefficients @ phi.T


def physical_gradients(mesh, basis, element: int, points: np.ndarray, k: int):
    """물리 basis 기울기 (∂x φ, ∂y φ), 각 (npts, k)"""
    p0 = mesh.vertices[mesh.elements[element, 0]]
    ref = np.linalg.solve(mesh.jacobian[element], (points - p0).T).T
    dx, dy = basis.gradient(ref)
    G = mesh.inv_jacobian_t[element]
    s = 1.0 / np.sqrt(mesh.det_jacobian[element])
    return s * (G[0, 0] * dx + G[0, 1] * dy)[:, :k], s * (G[1, 0] * dx + G[1, 1] * dy)[:, :k]


def constant_coefficients(value: float, mesh, size: int) -> np.ndarray:
    """상수 함수의 계수: 1 번 모드에 value*sqrt|Ω_e|"""
    out = np.zeros((mesh.n_elements, size))
    out[:, 0] = value * np.sqrt(mesh.element_area)
    return out
