from src.dg.auxiliary import depth_matrices, solve_auxiliary
from src.dg.boundary import ElevationForcing, boundary_ghost, compute_ghosts
from src.dg.diagnostics import element_means, total_mass
from src.dg.edge import EdgeSet, build_edge_set, compute_lambda, edge_flux_kernel
from src.dg.element import element_flux_kernel
from src.dg.index_range import IndexRange
from src.dg.min_depth import min_depth_kernel
from src.dg.params import FrictionLaw, PhysParams
from src.dg.rhs import rhs_kernel
from src.dg.state import QU, QV, XI, State
