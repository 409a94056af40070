import logging
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from src.errors import MeshStructureError
from src.mesh.mesh import BoundaryTag, Mesh, validate_mesh

logger = logging.getLogger("Mesh")

# (midpoint, outward normal) -> BoundaryTag
BoundaryRule = Callable[[np.ndarray, np.ndarray], BoundaryTag]


def land_everywhere(midpoint: np.ndarray, normal: np.ndarray) -> BoundaryTag:
    return BoundaryTag.LAND


def affine_maps(vertices: np.ndarray, elements: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    기준 삼각형 (0,0),(1,0),(0,1) -> 물리 element 로의 affine 사상

    :return: jacobian (ne,2,2), inverse jacobian transpose (ne,2,2), determinant (ne,)
    """
    p = vertices[elements]
    jac = np.empty((elements.shape[0], 2, 2))
    jac[:, :, 0] = p[:, 1] - p[:, 0]
    jac[:, :, 1] = p[:, 2] - p[:, 0]
    det = jac[:, 0, 0] * jac[:, 1, 1] - jac[:, 0, 1] * jac[:, 1, 0]
    inv_t = np.empty_like(jac)
    inv_t[:, 0, 0] = jac[:, 1, 1] / det
    inv_t[:, 0, 1] = -jac[:, 1, 0] / det
    inv_t[:, 1, 0] = -jac[:, 0, 1] / det
    inv_t[:, 1, 1] = jac[:, 0, 0] / det
    return jac, inv_t, det


def connect_edges(triangles: np.ndarray, vertices: np.ndarray,
                  boundary_rule: Optional[BoundaryRule] = None) -> Mesh:
    """
    삼각형 목록으로부터 edge 테이블, 법선, 길이, 중점을 구성

    :param triangles: (ne, 3) 반시계 방향 꼭짓점 인덱스
    :param vertices: (nv, 2) 좌표
    :param boundary_rule: 경계 edge 태그 규칙 (기본값: 모두 land)
    """
    boundary_rule = boundary_rule or land_everywhere
    triangles = np.asarray(triangles, dtype=np.int64)
    vertices = np.asarray(vertices, dtype=float)

    if triangles.ndim != 2 or triangles.shape[1] != 3:
        raise MeshStructureError("삼각형 배열은 (ne, 3) 형태여야 합니다.")
    if triangles.min(initial=0) < 0 or triangles.max(initial=0) >= vertices.shape[0]:
        raise MeshStructureError("존재하지 않는 꼭짓점을 참조하는 삼각형이 있습니다.")

    jac, inv_t, det = affine_maps(vertices, triangles)
    if np.any(det <= 0.0):
        bad = int(np.flatnonzero(det <= 0.0)[0])
        raise MeshStructureError(f"element {bad}: 시계 방향이거나 퇴화된 삼각형입니다.")

    ne = triangles.shape[0]
    nv = vertices.shape[0]
    half_a = triangles.ravel()
    half_b = triangles[:, [1, 2, 0]].ravel()
    lo = np.minimum(half_a, half_b)
    hi = np.maximum(half_a, half_b)
    key = lo * nv + hi

    # half-edge h = 3*e + l, 같은 key 안에서는 h 오름차순 유지
    order = np.argsort(key, kind="stable")
    sorted_key = key[order]
    starts = np.flatnonzero(np.r_[True, sorted_key[1:] != sorted_key[:-1]])
    counts = np.diff(np.r_[starts, sorted_key.size])
    if np.any(counts > 2):
        bad = order[starts[np.flatnonzero(counts > 2)[0]]]
        raise MeshStructureError(
            f"edge ({half_a[bad]}, {half_b[bad]}): 3개 이상의 element 가 공유합니다 (non-manifold).")

    first = order[starts]
    second = np.where(counts == 2, order[np.minimum(starts + 1, sorted_key.size - 1)], -1)
    paired = second >= 0
    same_dir = paired & (half_a[first] == half_a[np.where(paired, second, 0)])
    if np.any(same_dir):
        bad = first[np.flatnonzero(same_dir)[0]]
        raise MeshStructureError(
            f"edge ({half_a[bad]}, {half_b[bad]}): 인접 element 의 방향이 일치하지 않습니다.")

    # edge 번호는 처음 등장한 half-edge 순서
    rank = np.argsort(first, kind="stable")
    first = first[rank]
    second = second[rank]
    n_edges = first.size

    edge_vertices = np.column_stack([half_a[first], half_b[first]])
    edge_elements = np.column_stack([first // 3, np.where(second >= 0, second // 3, -1)])
    edge_local = np.column_stack([first % 3, np.where(second >= 0, second % 3, -1)])

    element_edges = np.full(3 * ne, -1, dtype=np.int64)
    element_edge_side = np.full(3 * ne, -1, dtype=np.int8)
    ids = np.arange(n_edges)
    element_edges[first] = ids
    element_edge_side[first] = 0
    element_edges[second[second >= 0]] = ids[second >= 0]
    element_edge_side[second[second >= 0]] = 1
    element_edges = element_edges.reshape(ne, 3)
    element_edge_side = element_edge_side.reshape(ne, 3)

    p0 = vertices[edge_vertices[:, 0]]
    p1 = vertices[edge_vertices[:, 1]]
    d = p1 - p0
    length = np.hypot(d[:, 0], d[:, 1])
    # side0 이 반시계로 a->b 를 지나므로 외향 법선은 진행 방향의 오른쪽
    normal = np.column_stack([d[:, 1], -d[:, 0]]) / length[:, None]
    midpoint = 0.5 * (p0 + p1)

    tags = np.full(edge_vertices.shape[0], BoundaryTag.INTERIOR, dtype=np.int8)
    for k in np.flatnonzero(edge_elements[:, 1] < 0):
        tag = BoundaryTag(boundary_rule(midpoint[k], normal[k]))
        if tag == BoundaryTag.INTERIOR:
            raise MeshStructureError(f"edge {k}: 경계 edge 에 BC 태그가 없습니다.")
        tags[k] = tag

    mesh = Mesh(
        vertices=vertices,
        elements=triangles,
        element_area=0.5 * det,
        jacobian=jac,
        inv_jacobian_t=inv_t,
        det_jacobian=det,
        edge_vertices=edge_vertices,
        edge_elements=edge_elements,
        edge_local=edge_local,
        edge_normal=normal,
        edge_length=length,
        edge_midpoint=midpoint,
        edge_tag=tags,
        element_edges=element_edges,
        element_edge_side=element_edge_side,
    )
    validate_mesh(mesh)
    return mesh


def generate_perturbed_uniform_mesh(nx: int, domain: Sequence[float] = (0.0, 5.0, 0.0, 5.0),
                                    perturbation: float = 0.2, seed: int = 0,
                                    boundary_rule: Optional[BoundaryRule] = None) -> Mesh:
    """
    무작위 섭동 균일 격자: 각 정사각형 셀을 같은 대각선으로 2분할

    내부 꼭짓점은 반경 perturbation*cell_size 이내의 균일 난수만큼 이동,
    경계 꼭짓점은 고정. 난수는 numpy PCG64(seed) 를 사용한다.

    :param nx: 축당 셀 수
    :param domain: (x0, x1, y0, y1)
    :param perturbation: 셀 크기 대비 섭동 비율, [0, 0.5)
    """
    if nx < 1:
        raise ValueError("nx 는 1 이상이어야 합니다.")
    if not 0.0 <= perturbation < 0.5:
        raise ValueError("perturbation 은 [0, 0.5) 범위여야 합니다.")
    x0, x1, y0, y1 = map(float, domain)
    if x1 <= x0 or y1 <= y0:
        raise ValueError("domain 범위가 올바르지 않습니다.")

    xs = np.linspace(x0, x1, nx + 1)
    ys = np.linspace(y0, y1, nx + 1)
    gx, gy = np.meshgrid(xs, ys, indexing="xy")
    vertices = np.column_stack([gx.ravel(), gy.ravel()])

    if perturbation > 0.0 and nx > 1:
        rng = np.random.Generator(np.random.PCG64(seed))
        n1 = nx + 1
        ii, jj = np.meshgrid(np.arange(n1), np.arange(n1), indexing="xy")
        interior = ((ii > 0) & (ii < nx) & (jj > 0) & (jj < nx)).ravel()
        count = int(interior.sum())
        hx = (x1 - x0) / nx
        hy = (y1 - y0) / nx
        radius = perturbation * np.sqrt(rng.uniform(0.0, 1.0, count))
        angle = rng.uniform(0.0, 2.0 * np.pi, count)
        vertices[interior, 0] += radius * np.cos(angle) * hx
        vertices[interior, 1] += radius * np.sin(angle) * hy

    n1 = nx + 1
    j, i = np.meshgrid(np.arange(nx), np.arange(nx), indexing="ij")
    v00 = (j * n1 + i).ravel()
    v10 = v00 + 1
    v01 = v00 + n1
    v11 = v01 + 1
    triangles = np.empty((2 * nx * nx, 3), dtype=np.int64)
    triangles[0::2] = np.column_stack([v00, v10, v11])
    triangles[1::2] = np.column_stack([v00, v11, v01])

    try:
        mesh = connect_edges(triangles, vertices, boundary_rule)
    except MeshStructureError as e:
        # perturbation < 0.5 에서는 발생하지 않아야 함
        raise MeshStructureError(f"섭동 후 격자 검증 실패 (nx={nx}, seed={seed}): {e}") from e

    logger.debug(f"🔧 격자 생성: {mesh.n_elements} elements, {mesh.n_edges} edges")
    return mesh
