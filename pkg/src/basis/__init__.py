from src.basis.polynomials import (K_OF_P, MAX_ORDER, ReferenceBasis, build_reference_basis,
                                   degree_of_index, eval_basis, num_basis)
from src.basis.projection import project_function
from src.basis.quadrature import line_rule, triangle_rule
from src.basis.tensors import BasisTables, ReferenceTensors, build_reference_tensors, build_tensors
