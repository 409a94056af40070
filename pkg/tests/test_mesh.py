import numpy as np
import pytest

from src.errors import MeshStructureError
from src.mesh import BoundaryTag, connect_edges, dump_mesh, generate_perturbed_uniform_mesh, load_mesh


def test_unperturbed_mesh_is_congruent():
    mesh = generate_perturbed_uniform_mesh(2, perturbation=0.0)
    assert mesh.n_elements == 8
    assert np.allclose(mesh.element_area, 25.0 / 8.0, atol=1e-14)
    assert mesh.n_edges == 16
    assert mesh.interior_edges.size == 8
    assert mesh.boundary_edges.size == 8


def test_perturbed_mesh_keeps_area():
    mesh = generate_perturbed_uniform_mesh(4, perturbation=0.2, seed=7)
    assert np.all(mesh.element_area > 0.0)
    assert mesh.domain_area == pytest.approx(25.0, abs=1e-12)


def test_perturbation_is_reproducible():
    a = generate_perturbed_uniform_mesh(6, perturbation=0.3, seed=11)
    b = generate_perturbed_uniform_mesh(6, perturbation=0.3, seed=11)
    c = generate_perturbed_uniform_mesh(6, perturbation=0.3, seed=12)
    assert np.array_equal(a.vertices, b.vertices)
    assert not np.array_equal(a.vertices, c.vertices)


def test_boundary_vertices_stay_fixed():
    mesh = generate_perturbed_uniform_mesh(5, perturbation=0.4, seed=1)
    x, y = mesh.vertices[:, 0], mesh.vertices[:, 1]
    on_boundary = np.isclose(x, 0.0) | np.isclose(x, 5.0) | np.isclose(y, 0.0) | np.isclose(y, 5.0)
    assert on_boundary.sum() == 4 * 5


def test_invalid_generator_arguments():
    with pytest.raises(ValueError):
        generate_perturbed_uniform_mesh(0)
    with pytest.raises(ValueError):
        generate_perturbed_uniform_mesh(4, perturbation=0.5)


def test_single_triangle():
    mesh = connect_edges([[0, 1, 2]], [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    assert mesh.boundary_edges.size == 3
    assert mesh.interior_edges.size == 0
    assert np.all(mesh.edge_tag == BoundaryTag.LAND)


def test_two_triangles_share_one_edge():
    vertices = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
    mesh = connect_edges([[0, 1, 2], [0, 2, 3]], vertices)
    assert mesh.interior_edges.size == 1
    assert mesh.boundary_edges.size == 4
    e = mesh.interior_edges[0]
    assert set(mesh.edge_elements[e]) == {0, 1}


def test_non_manifold_edge_rejected():
    vertices = [[0.0, 0.0], [1.0, 0.0], [0.5, 1.0], [0.5, -1.0], [0.5, 2.0]]
    # 세 삼각형이 edge (0, 1) 을 공유
    triangles = [[0, 1, 2], [1, 0, 3], [0, 1, 4]]
    with pytest.raises(MeshStructureError):
        connect_edges(triangles, vertices)


def test_clockwise_element_rejected():
    with pytest.raises(MeshStructureError):
        connect_edges([[0, 2, 1]], [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


def test_inconsistent_orientation_rejected():
    vertices = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
    # 두 삼각형 모두 edge 0 -> 1 을 같은 방향으로 지나간다
    with pytest.raises(MeshStructureError):
        connect_edges([[0, 1, 2], [0, 1, 3]], vertices)


def test_edge_geometry_from_both_sides(small_mesh):
    mesh = small_mesh
    for e in mesh.interior_edges:
        a, b = mesh.edge_elements[e]
        la, lb = mesh.edge_local[e]
        pa = mesh.vertices[[mesh.elements[a, la], mesh.elements[a, (la + 1) % 3]]]
        pb = mesh.vertices[[mesh.elements[b, lb], mesh.elements[b, (lb + 1) % 3]]]
        assert np.linalg.norm(pa[1] - pa[0]) == pytest.approx(np.linalg.norm(pb[1] - pb[0]), abs=1e-14)
        assert np.allclose(pa.mean(axis=0), pb.mean(axis=0), atol=1e-14)
        assert np.allclose(pa, pb[::-1])


def test_normals_point_outward(small_mesh):
    mesh = small_mesh
    centroids = mesh.centroids()
    side0 = mesh.edge_elements[:, 0]
    outward = np.einsum("ed,ed->e", mesh.edge_midpoint - centroids[side0], mesh.edge_normal)
    assert np.all(outward > 0.0)


def test_closed_polygon_property(small_mesh):
    mesh = small_mesh
    closure = np.zeros((mesh.n_elements, 2))
    nl = mesh.edge_normal * mesh.edge_length[:, None]
    inner = mesh.edge_elements[:, 1] >= 0
    np.add.at(closure, mesh.edge_elements[:, 0], nl)
    np.add.at(closure, mesh.edge_elements[inner, 1], -nl[inner])
    assert np.abs(closure).max() < 1e-12


def test_custom_boundary_rule():
    def west_is_open(midpoint, normal):
        return BoundaryTag.OPEN_SEA if midpoint[0] < 1e-12 else BoundaryTag.LAND

    mesh = generate_perturbed_uniform_mesh(3, perturbation=0.0, boundary_rule=west_is_open)
    assert np.count_nonzero(mesh.edge_tag == BoundaryTag.OPEN_SEA) == 3
    assert np.count_nonzero(mesh.edge_tag == BoundaryTag.LAND) == 9


def test_dump_and_load(tmp_path):
    def north_is_open(midpoint, normal):
        return BoundaryTag.OPEN_SEA if normal[1] > 0.5 else BoundaryTag.LAND

    mesh = generate_perturbed_uniform_mesh(3, perturbation=0.25, seed=5, boundary_rule=north_is_open)
    path = tmp_path / "mesh.txt"
    dump_mesh(mesh, str(path))
    loaded = load_mesh(str(path))
    assert np.array_equal(loaded.vertices, mesh.vertices)
    assert np.array_equal(loaded.elements, mesh.elements)
    assert np.array_equal(loaded.edge_tag, mesh.edge_tag)
    assert np.array_equal(loaded.edge_elements, mesh.edge_elements)


def test_load_rejects_bad_counts(tmp_path):
    path = tmp_path / "broken.txt"
    path.write_text("3 1 0\n0 0\n1 0\n", encoding="utf-8")
    with pytest.raises(MeshStructureError):
        load_mesh(str(path))
