"""
Complete-Graph Embedding
Places the three-phase reduction inside K_V under an arbitrary edge arrival order
"""
import itertools
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..core.errors import ParameterError
from ..core.formulas import StochasticFormula
from ..core.model import GraphicGround, Instance, ValueDistribution
from ..utils.logger import get_generator_logger
from .reduction import (CENTER, PHASE_ASSIGN, PHASE_AUX, PHASE_CLAUSE, PHASE_PAIR, PHASE_ZERO,
                        ReductionArtifact, _check_formula, assignment_distributions,
                        clause_distribution)

logger = get_generator_logger()

Edge = Tuple[int, int]

AUX_VALUE = 3
PAIR_VALUE = 2


def required_vertex_count(formula: StochasticFormula) -> int:
    return 3 * formula.n + 2 * formula.m + 1


def complete_graph_order(vertex_count: int, seed: Optional[int] = None) -> List[Edge]:
    """All vertex pairs, lexicographic or shuffled by `seed`"""
    pairs = list(itertools.combinations(range(vertex_count), 2))
    if seed is None:
        return pairs
    perm = np.random.default_rng(seed).permutation(len(pairs))
    return [pairs[i] for i in perm]


def _canonical_order(order: Sequence[Sequence[int]], vertex_count: int) -> List[Edge]:
    edges = [tuple(sorted((int(a), int(b)))) for a, b in order]
    expected = set(itertools.combinations(range(vertex_count), 2))
    if len(edges) != len(expected) or set(edges) != expected:
        raise ParameterError(f"Arrival order is not a permutation of the {len(expected)} edges of K_{vertex_count}")
    return edges


def _reverse_greedy(order: List[Edge], size: int, used: Set[int]) -> List[Edge]:
    picked = []
    for a, b in reversed(order):
        if len(picked) == size:
            break
        if a not in used and b not in used:
            picked.append((a, b))
            used.update((a, b))
    return picked


def embed_in_complete_graph(formula: StochasticFormula, k: int,
                            vertex_count: Optional[int] = None,
                            arrival_order: Optional[Sequence[Sequence[int]]] = None,
                            seed: Optional[int] = None) -> ReductionArtifact:
    """
    Assign values to every edge of K_V so the reduction appears inside it

    Scanning the arrival order backwards, a matching A of n edges (value 2)
    is taken greedily, then B of m edges (clause values) disjoint from A. The
    center w is the smallest unmatched vertex; its first 2n edges carry the
    first-phase values. Value-3 auxiliary edges join v_i to alpha_i, not-v_i to
    gamma_i, u_j to beta_j and l_j to tau_j. All other edges are worth 0.

    Auxiliary edges that are self-loops or coincide with an already assigned
    edge are skipped and listed in the audit.

    Args:
        formula: Valid stochastic 2CNF
        k: Occurrence bound
        vertex_count: Must equal 3n + 2m + 1 when given
        arrival_order: Permutation of all vertex pairs; lexicographic when omitted
        seed: Shuffle seed used when no explicit order is given

    Raises:
        ParameterError: On a vertex count mismatch or a bad arrival order
        FormulaError: If the formula is invalid
    """
    _check_formula(formula, k, None, require_even=False)
    n, m = formula.n, formula.m
    V = required_vertex_count(formula)
    if vertex_count is not None and vertex_count != V:
        raise ParameterError(f"Vertex count must be 3n + 2m + 1 = {V}, got {vertex_count}")

    order = _canonical_order(arrival_order, V) if arrival_order is not None else complete_graph_order(V, seed)
    position = {e: t for t, e in enumerate(order)}

    matched: Set[int] = set()
    A = sorted(_reverse_greedy(order, n, matched), key=position.get)
    B = sorted(_reverse_greedy(order, m, matched), key=position.get)
    if len(A) != n or len(B) != m:
        raise ParameterError(f"Greedy matchings too small: |A|={len(A)}, |B|={len(B)}")

    free = sorted(set(range(V)) - matched)
    w = free[0]
    star = [e for e in order if w in e][:2 * n]
    v = {i: star[2 * (i - 1)][0] + star[2 * (i - 1)][1] - w for i in range(1, n + 1)}
    v_bar = {i: star[2 * i - 1][0] + star[2 * i - 1][1] - w for i in range(1, n + 1)}

    def literal_vertex(literal: int) -> int:
        return v[literal] if literal > 0 else v_bar[-literal]

    values: Dict[Edge, ValueDistribution] = {}
    phases: Dict[Edge, object] = {}
    assignment_edges, pair_edge, clause_edge = {}, {}, {}

    for i in range(1, n + 1):
        positive, negative = assignment_distributions(i)
        e_pos, e_neg = star[2 * (i - 1)], star[2 * i - 1]
        values[e_pos], values[e_neg] = positive, negative
        phases[e_pos] = phases[e_neg] = PHASE_ASSIGN
        assignment_edges[i] = (position[e_pos], position[e_neg])
    for i, edge in enumerate(A, start=1):
        values[edge] = ValueDistribution.point(PAIR_VALUE)
        phases[edge] = PHASE_PAIR
        pair_edge[i] = position[edge]
    clause_value = clause_distribution(m, k)
    for j, edge in enumerate(B):
        values[edge] = clause_value
        phases[edge] = PHASE_CLAUSE
        clause_edge[j] = position[edge]

    wanted: List[Tuple[str, int, int]] = []
    for i, (alpha, gamma) in enumerate(A, start=1):
        wanted.append((f"v{i}-alpha{i}", v[i], alpha))
        wanted.append((f"vbar{i}-gamma{i}", v_bar[i], gamma))
    for j, (clause, (beta, tau)) in enumerate(zip(formula.clauses, B), start=1):
        literals = list(dict.fromkeys(clause))
        u = literal_vertex(-literals[0])
        l = literal_vertex(-literals[1]) if len(literals) > 1 else w
        wanted.append((f"u{j}-beta{j}", u, beta))
        wanted.append((f"l{j}-tau{j}", l, tau))

    auxiliary: List[Edge] = []
    degenerate: List[str] = []
    for label, a, b in wanted:
        edge = tuple(sorted((a, b)))
        if a == b or edge in values:
            degenerate.append(label)
            continue
        values[edge] = ValueDistribution.point(AUX_VALUE)
        phases[edge] = PHASE_AUX
        auxiliary.append(edge)

    zero = ValueDistribution.point(0)
    dists = tuple(values.get(e, zero) for e in order)
    phase_list = tuple(phases.get(e, PHASE_ZERO) for e in order)

    literals_of = {w: CENTER}
    for i in range(1, n + 1):
        literals_of.setdefault(v[i], i)
        literals_of.setdefault(v_bar[i], -i)

    matching_of = {}
    for edge in A + B:
        for x in edge:
            matching_of[x] = edge
    first_matching = min(position[e] for e in A + B)
    structural = []
    for edge in auxiliary:
        partner = next((x for x in edge if x in matching_of), None)
        other = edge[0] + edge[1] - partner if partner is not None else None
        if partner is not None and other not in matching_of:
            structural.append(position[edge] < position[matching_of[partner]])

    audit = {
        "vertices": V,
        "edges": len(order),
        "center": w,
        "matching_A": [list(e) for e in A],
        "matching_B": [list(e) for e in B],
        "matching_ok": len(A) == n and len(B) == m and len({x for e in A + B for x in e}) == 2 * (n + m),
        "auxiliary": [list(e) for e in auxiliary],
        "degenerate_auxiliary": degenerate,
        "aux_before_matching": all(structural),
        "aux_before_all_matching": all(position[e] < first_matching for e in auxiliary),
    }
    if degenerate:
        logger.warning(f"Embedding skipped {len(degenerate)} degenerate auxiliary edges: {degenerate}")
    logger.info(f"Embedded formula n={n}, m={m} into K_{V}: {len(auxiliary)} auxiliary edges")

    instance = Instance(GraphicGround.of(V, order), dists, f"embedding-n{n}-m{m}-V{V}")
    return ReductionArtifact(
        gmbs=instance,
        phase_of_edge=phase_list,
        literal_of_vertex=literals_of,
        formula=formula,
        k=k,
        assignment_edges=assignment_edges,
        pair_edge=pair_edge,
        clause_edge=clause_edge,
        audit=audit,
    )


def without_zero_edges(artifact: ReductionArtifact) -> Instance:
    """The embedded instance restricted to edges with a nonzero value distribution"""
    graph = artifact.gmbs.graphic()
    keep = [t for t, p in enumerate(artifact.phase_of_edge) if p != PHASE_ZERO]
    return Instance(GraphicGround.of(graph.vertex_count, [graph.edges[t] for t in keep]),
                    tuple(artifact.gmbs.distributions[t] for t in keep),
                    f"{artifact.gmbs.name}-nonzero")


__all__ = [
    'AUX_VALUE',
    'required_vertex_count',
    'complete_graph_order',
    'embed_in_complete_graph',
    'without_zero_edges',
]
