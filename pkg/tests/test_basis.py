import math

import numpy as np
import pytest

from src.basis import (K_OF_P, build_reference_basis, build_reference_tensors, eval_basis, line_rule, num_basis,
                       project_function, triangle_rule)
from src.basis.tensors import edge_points
from src.errors import DomainError, UnsupportedOrderError
from tests.conftest import physical_values


@pytest.fixture(scope="module")
def reference(basis3):
    return build_reference_tensors(basis3)


def test_triangle_rule_is_exact():
    points, weights = triangle_rule(12)
    assert weights.sum() == pytest.approx(0.5, abs=1e-15)
    for a, b in [(0, 0), (3, 2), (6, 6), (12, 0)]:
        exact = math.factorial(a) * math.factorial(b) / math.factorial(a + b + 2)
        value = np.sum(weights * points[:, 0] ** a * points[:, 1] ** b)
        assert value == pytest.approx(exact, rel=1e-13)


def test_line_rule_is_exact():
    t, w = line_rule(9)
    assert np.sum(w * t ** 9) == pytest.approx(0.1, rel=1e-14)


@pytest.mark.parametrize("p, k", [(0, 1), (1, 3), (2, 6), (3, 10)])
def test_basis_size(p, k):
    assert num_basis(p) == k
    assert build_reference_basis(p).size == k


def test_order_above_three_rejected():
    with pytest.raises(UnsupportedOrderError):
        num_basis(4)
    with pytest.raises(UnsupportedOrderError):
        build_reference_basis(4)


def test_constant_function(basis3):
    assert basis3.constant_value == pytest.approx(math.sqrt(2.0), abs=1e-15)
    values = eval_basis(build_reference_basis(0), 0, (1.0 / 3.0, 1.0 / 3.0))
    assert values == pytest.approx([1.0 / math.sqrt(0.5)])


@pytest.mark.parametrize("p", [0, 1, 2, 3])
def test_orthonormality(p):
    basis = build_reference_basis(p)
    points, weights = triangle_rule(2 * p + 2)
    phi = basis.evaluate(points)
    gram = phi.T @ (weights[:, None] * phi)
    assert np.allclose(gram, np.eye(basis.size), atol=1e-12)


def test_hierarchy(basis3):
    points, _ = triangle_rule(6)
    for p in range(3):
        lower = build_reference_basis(p)
        assert np.allclose(lower.evaluate(points), basis3.evaluate(points, p), atol=1e-13)


def test_higher_modes_have_zero_mean(basis3):
    points, weights = triangle_rule(4)
    means = weights @ basis3.evaluate(points)
    assert means[0] == pytest.approx(0.5 * math.sqrt(2.0))
    assert np.allclose(means[1:], 0.0, atol=1e-14)


def test_eval_basis_outside_reference_triangle(basis3):
    with pytest.raises(DomainError):
        eval_basis(basis3, 1, (0.8, 0.8))
    with pytest.raises(DomainError):
        eval_basis(basis3, 1, (-0.1, 0.2))
    # 닫힌 집합이므로 꼭짓점은 허용
    assert eval_basis(basis3, 3, (1.0, 0.0)).shape == (10,)


def test_projection_reproduces_linear_field(small_mesh, basis3):
    coeffs = project_function(lambda x, y: x + y, small_mesh, basis3, p=1)
    rng = np.random.default_rng(4)
    for element in rng.integers(0, small_mesh.n_elements, 5):
        corners = small_mesh.vertices[small_mesh.elements[element]]
        bary = rng.dirichlet(np.ones(3))
        x, y = bary @ corners
        value = physical_values(coeffs[element], small_mesh, basis3, element, np.array([[x, y]]))[0]
        assert value == pytest.approx(x + y, abs=1e-12)


def test_reference_tensor_identities(reference):
    k = reference.size
    assert np.allclose(reference.M2, np.eye(k), atol=1e-13)
    assert np.allclose(reference.M3[0], math.sqrt(2.0) * np.eye(k), atol=1e-13)
    assert np.allclose(reference.SX[0], 0.0, atol=1e-14)
    assert np.allclose(reference.DX[0], 0.0, atol=1e-14)
    assert np.allclose(reference.SX, reference.SX.transpose(0, 2, 1))


def test_element_tensors_match_quadrature(reference, basis3):
    points, weights = triangle_rule(12)
    phi = basis3.evaluate(points)
    dx, dy = basis3.gradient(points)
    assert np.allclose(reference.DX, np.einsum("n,nq,ni->qi", weights, dx, phi), atol=1e-12)
    assert np.allclose(reference.DY, np.einsum("n,nq,ni->qi", weights, dy, phi), atol=1e-12)
    assert np.allclose(reference.M3, np.einsum("n,nq,ni,nj->qij", weights, phi, phi, phi), atol=1e-12)
    assert np.allclose(reference.SX, np.einsum("n,nq,ni,nj->qij", weights, dx, phi, phi), atol=1e-12)
    assert np.allclose(reference.SY, np.einsum("n,nq,ni,nj->qij", weights, dy, phi, phi), atol=1e-12)


def test_edge_tensors_match_quadrature(reference, basis3):
    t, w = line_rule(12)
    for lt in range(3):
        vt = basis3.evaluate(edge_points(lt, t))
        assert np.allclose(reference.E1[lt], w @ vt, atol=1e-13)
        for ls in range(3):
            for o in (0, 1):
                vs = basis3.evaluate(edge_points(ls, t, reverse=bool(o)))
                assert np.allclose(reference.E2[lt, ls, o], np.einsum("n,nq,ni->qi", w, vt, vs), atol=1e-12)
                assert np.allclose(reference.E3[lt, ls, o], np.einsum("n,nq,ni,nj->qij", w, vt, vs, vs),
                                   atol=1e-12)


def test_lower_order_tensors_are_prefix(reference):
    lower = build_reference_tensors(build_reference_basis(1))
    assert lower.SX.shape == (3, 3, 3)
    assert K_OF_P[lower.p_max] == 3
    for name in ("M2", "M3", "SX", "SY", "DX", "DY"):
        full = getattr(reference, name)
        assert np.allclose(getattr(lower, name), full[(slice(0, 3),) * full.ndim], atol=1e-13)
    assert np.allclose(lower.E3, reference.E3[..., :3, :3, :3], atol=1e-13)


def _physical_element_tensors(tables, element):
    ref = tables.reference
    s = tables.scale[element]
    G = tables.grad_map[element]
    return {
        "M2": ref.M2.copy(),
        "M3": s * ref.M3,
        "DX": G[0, 0] * ref.DX + G[0, 1] * ref.DY,
        "DY": G[1, 0] * ref.DX + G[1, 1] * ref.DY,
    }


def _physical_edge_tensors(tables, mesh, edge, test_side, trial_side):
    """내부 edge 의 두 side 는 공유 edge 를 서로 반대 방향으로 지난다"""
    ref = tables.reference
    elems = mesh.edge_elements[edge]
    lt, ls = mesh.edge_local[edge][test_side], mesh.edge_local[edge][trial_side]
    o = 0 if test_side == trial_side else 1
    st, ss = tables.scale[elems[test_side]], tables.scale[elems[trial_side]]
    L = mesh.edge_length[edge]
    return {"E2": L * st * ss * ref.E2[lt, ls, o], "E3": L * st * ss * ss * ref.E3[lt, ls, o]}


def test_physical_element_tensors(small_mesh, small_tables, basis3):
    e = 5
    corners = small_mesh.vertices[small_mesh.elements[e]]
    points, weights = triangle_rule(12)
    phys = corners[0] + points @ small_mesh.jacobian[e].T
    det = small_mesh.det_jacobian[e]
    eye = np.eye(basis3.size)
    phi = physical_values(eye, small_mesh, basis3, e, phys).T
    tensors = _physical_element_tensors(small_tables, e)
    assert np.allclose(tensors["M2"], det * phi.T @ (weights[:, None] * phi), atol=1e-12)
    m3 = det * np.einsum("n,nq,ni,nj->qij", weights, phi, phi, phi)
    assert np.allclose(tensors["M3"], m3, atol=1e-12)


def test_physical_edge_tensors(small_mesh, small_tables, basis3):
    mesh = small_mesh
    edge = int(mesh.interior_edges[3])
    a, b = mesh.edge_elements[edge]
    p0, p1 = mesh.vertices[mesh.edge_vertices[edge]]
    t, w = line_rule(12)
    points = p0 + t[:, None] * (p1 - p0)
    eye = np.eye(basis3.size)
    phi_a = physical_values(eye, mesh, basis3, a, points).T
    phi_b = physical_values(eye, mesh, basis3, b, points).T
    L = mesh.edge_length[edge]
    tensors = _physical_edge_tensors(small_tables, mesh, edge, 0, 1)
    assert np.allclose(tensors["E2"], L * np.einsum("n,nq,ni->qi", w, phi_a, phi_b), atol=1e-11)
    assert np.allclose(tensors["E3"], L * np.einsum("n,nq,ni,nj->qij", w, phi_a, phi_b, phi_b), atol=1e-11)
