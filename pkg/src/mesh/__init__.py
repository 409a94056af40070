from src.mesh.mesh import BoundaryTag, Mesh, validate_mesh
from src.mesh.generator import connect_edges, generate_perturbed_uniform_mesh, land_everywhere
from src.mesh.mesh_io import dump_mesh, load_mesh
