import networkx as nx
from typing import List

EDGE_BASE = "edge_base"
EDGE_CORRECTION = "edge_correction"
ELEM_RHS_BASE = "elem_rhs_base"
ELEM_RHS_CORRECTION = "elem_rhs_correction"
EDGE = "edge"
ELEM_RHS = "elem_rhs"
RK_SUBSTEP = "rk_substep_additions"
MIN_DEPTH = "min_depth"
SOLVE_UH = "solve_uH"
BC_COMPUTATION = "bc_computation"
INDICATOR = "indicator"

SEPARATED_FLUX = [EDGE_BASE, EDGE_CORRECTION, ELEM_RHS_BASE, ELEM_RHS_CORRECTION]
UNSEPARATED_FLUX = [EDGE, ELEM_RHS]
SEQUENTIAL = [RK_SUBSTEP, MIN_DEPTH, SOLVE_UH, BC_COMPUTATION]

# 같은 차수 수준을 다루는 kernel 은 한 lane 에 둔다
AFFINITY_GROUPS = [(EDGE_BASE, ELEM_RHS_BASE), (EDGE_CORRECTION, ELEM_RHS_CORRECTION)]

PARALLEL = "parallel"
SEQUENCE = "sequential"


def build_kernel_graph(separated: bool = True, dynamic: bool = False) -> nx.DiGraph:
    """
    substep kernel 그래프

    flux kernel 들은 병렬 phase 하나를 이루고, rk_substep_additions 이후는 순차 체인.
    dynamic 이면 step 끝에 indicator 가 붙는다 (step 당 한 번, 두 번째 substep 에서만 실행).
    """
    graph = nx.DiGraph(separated=separated, dynamic=dynamic)
    flux = SEPARATED_FLUX if separated else UNSEPARATED_FLUX
    chain = SEQUENTIAL + ([INDICATOR] if dynamic else [])

    order = 0
    for name in flux:
        graph.add_node(name, phase=PARALLEL, order=order)
        graph.add_edge(name, RK_SUBSTEP)
        order += 1
    for name in chain:
        graph.add_node(name, phase=SEQUENCE, order=order)
        order += 1
    for a, b in zip(chain, chain[1:]):
        graph.add_edge(a, b)

    graph.graph["affinity"] = [g for g in AFFINITY_GROUPS if all(k in graph for k in g)]
    return graph


def kernel_order(graph: nx.DiGraph) -> List[str]:
    """결정적 위상 정렬"""
    return list(nx.lexicographical_topological_sort(graph, key=lambda n: graph.nodes[n]["order"]))


def parallel_kernels(graph: nx.DiGraph) -> List[str]:
    return [n for n in kernel_order(graph) if graph.nodes[n]["phase"] == PARALLEL]


def sequential_kernels(graph: nx.DiGraph) -> List[str]:
    return [n for n in kernel_order(graph) if graph.nodes[n]["phase"] == SEQUENCE]
