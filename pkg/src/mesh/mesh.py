from dataclasses import dataclass, field, replace
from enum import IntEnum
from typing import Optional

import numpy as np

from src.errors import MeshStructureError


class BoundaryTag(IntEnum):
    INTERIOR = 0
    LAND = 1
    OPEN_SEA = 2


@dataclass(frozen=True)
class Mesh:
    """
    삼각형 격자 + edge 연결 정보 + element 기하

    :param vertices: (nv, 2) 꼭짓점 좌표 [m]
    :param elements: (ne, 3) 반시계 방향 꼭짓점 인덱스
    :param edge_elements: (nE, 2) [side0, side1] element, 경계면 side1 = -1
    :param edge_local: (nE, 2) 각 side 의 local edge 번호 (edge l = 꼭짓점 l -> l+1)
    :param edge_normal: (nE, 2) side0 기준 외향 단위 법선 (side1 은 부호 반대)
    """

    vertices: np.ndarray
    elements: np.ndarray
    element_area: np.ndarray
    jacobian: np.ndarray
    inv_jacobian_t: np.ndarray
    det_jacobian: np.ndarray
    edge_vertices: np.ndarray
    edge_elements: np.ndarray
    edge_local: np.ndarray
    edge_normal: np.ndarray
    edge_length: np.ndarray
    edge_midpoint: np.ndarray
    edge_tag: np.ndarray
    element_edges: np.ndarray
    element_edge_side: np.ndarray
    bathymetry: Optional[np.ndarray] = field(default=None)

    @property
    def n_elements(self) -> int:
        return self.elements.shape[0]

    @property
    def n_edges(self) -> int:
        return self.edge_vertices.shape[0]

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def interior_edges(self) -> np.ndarray:
        return np.flatnonzero(self.edge_tag == BoundaryTag.INTERIOR)

    @property
    def boundary_edges(self) -> np.ndarray:
        return np.flatnonzero(self.edge_tag != BoundaryTag.INTERIOR)

    @property
    def domain_area(self) -> float:
        return float(self.element_area.sum())

    def centroids(self) -> np.ndarray:
        return self.vertices[self.elements].mean(axis=1)

    def side_normal(self, edge: int, side: int) -> np.ndarray:
        n = self.edge_normal[edge]
        return n if side == 0 else -n

    def with_bathymetry(self, coefficients: np.ndarray) -> "Mesh":
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.shape[0] != self.n_elements:
            raise ValueError("bathymetry 계수 개수가 element 수와 다릅니다.")
        return replace(self, bathymetry=coefficients)

    def with_boundary_tags(self, tags: np.ndarray) -> "Mesh":
        tags = np.asarray(tags, dtype=np.int8)
        interior = self.edge_elements[:, 1] >= 0
        if np.any(tags[interior] != BoundaryTag.INTERIOR) or np.any(tags[~interior] == BoundaryTag.INTERIOR):
            raise MeshStructureError("내부 edge 에는 경계 태그를 붙일 수 없습니다.")
        return replace(self, edge_tag=tags)


def validate_mesh(mesh: Mesh, atol: float = 1e-12) -> None:
    """격자 불변식 검사. 위반 시 MeshStructureError"""
    if np.any(mesh.element_area <= 0.0):
        bad = int(np.flatnonzero(mesh.element_area <= 0.0)[0])
        raise MeshStructureError(f"element {bad}: 면적이 양수가 아닙니다.")

    counts = np.bincount(mesh.edge_elements[:, 0], minlength=mesh.n_elements)
    inner = mesh.edge_elements[:, 1] >= 0
    counts = counts + np.bincount(mesh.edge_elements[inner, 1], minlength=mesh.n_elements)
    if np.any(counts != 3):
        bad = int(np.flatnonzero(counts != 3)[0])
        raise MeshStructureError(f"element {bad}: edge 수가 3이 아닙니다 ({counts[bad]}).")

    boundary = ~inner
    if np.any(mesh.edge_tag[boundary] == BoundaryTag.INTERIOR):
        raise MeshStructureError("태그 없는 경계 edge 가 있습니다.")

    norms = np.linalg.norm(mesh.edge_normal, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-14):
        raise MeshStructureError("법선 벡터가 단위 길이가 아닙니다.")

    # 닫힌 다각형: 각 element 의 sum(n * L) = 0
    closure = np.zeros((mesh.n_elements, 2))
    nl = mesh.edge_normal * mesh.edge_length[:, None]
    np.add.at(closure, mesh.edge_elements[:, 0], nl)
    np.add.at(closure, mesh.edge_elements[inner, 1], -nl[inner])
    scale = max(1.0, float(mesh.edge_length.max()))
    if np.abs(closure).max() > atol * scale:
        raise MeshStructureError("element 경계의 법선*길이 합이 0이 아닙니다.")
