"""
격자 텍스트 입출력

형식:
    nv ne nb
    x y                (nv 줄)
    v0 v1 v2           (ne 줄)
    edge_id tag        (nb 줄, tag = land | open_sea)
"""
import os

import numpy as np

from src.errors import MeshStructureError
from src.mesh.generator import connect_edges
from src.mesh.mesh import BoundaryTag, Mesh

_TAG_NAMES = {BoundaryTag.LAND: "land", BoundaryTag.OPEN_SEA: "open_sea"}
_TAG_VALUES = {v: k for k, v in _TAG_NAMES.items()}


def dump_mesh(mesh: Mesh, path: str) -> None:
    boundary = mesh.boundary_edges
    lines = [f"{mesh.n_vertices} {mesh.n_elements} {boundary.size}"]
    lines += [f"{x:.17g} {y:.17g}" for x, y in mesh.vertices]
    lines += [f"{a} {b} {c}" for a, b, c in mesh.elements]
    lines += [f"{k} {_TAG_NAMES[BoundaryTag(mesh.edge_tag[k])]}" for k in boundary]
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


def load_mesh(path: str) -> Mesh:
    if not os.path.exists(path):
        raise ValueError(f"격자 파일이 없습니다: {path}")
    with open(path, "r", encoding="utf-8") as f:
        rows = [line.split() for line in f if line.strip()]

    try:
        nv, ne, nb = (int(v) for v in rows[0])
        vertices = np.array([[float(v) for v in r] for r in rows[1:1 + nv]])
        elements = np.array([[int(v) for v in r] for r in rows[1 + nv:1 + nv + ne]], dtype=np.int64)
        tag_rows = rows[1 + nv + ne:1 + nv + ne + nb]
    except (ValueError, IndexError) as e:
        raise MeshStructureError(f"격자 파일 형식 오류: {e}") from e
    if vertices.shape != (nv, 2) or elements.shape != (ne, 3) or len(tag_rows) != nb:
        raise MeshStructureError("격자 파일의 개수 헤더와 내용이 맞지 않습니다.")

    mesh = connect_edges(elements, vertices)
    tags = mesh.edge_tag.copy()
    for edge_id, name in tag_rows:
        if name not in _TAG_VALUES:
            raise MeshStructureError(f"알 수 없는 경계 태그: {name}")
        tags[int(edge_id)] = _TAG_VALUES[name]
    return mesh.with_boundary_tags(tags)
