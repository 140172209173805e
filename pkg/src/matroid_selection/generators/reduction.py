"""
Stochastic 2SAT to Graphic Selection Reduction
Three-phase edge arrival on a star-plus-literal-pairs graph and its audits
"""
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from ..core.config import config
from ..core.errors import FormulaError, ParameterError
from ..core.formulas import S2SATFormula, StochasticFormula, validate_formula
from ..core.model import GraphicGround, Instance, ValueDistribution
from ..policy.exact_policy import ExactPolicy, Realization
from ..policy.stochastic_sat import s2sat_value
from ..utils.logger import get_generator_logger
from ..utils.rationals import parse_rational, to_jsonable
from ..utils.union_find import UnionFind
from .gain import GainEstimate, gain_formula

logger = get_generator_logger()

PHASE_ASSIGN = 1
PHASE_CLAUSE = 2
PHASE_PAIR = 3
PHASE_AUX = "aux"
PHASE_ZERO = "zero"

Phase = Union[int, str]
CENTER = "w"


@dataclass
class ReductionArtifact:
    """
    Graphic instance built from a formula plus the bookkeeping needed to audit it

    `assignment_edges[i]` is the (w x_i, w not-x_i) element pair of variable i,
    `pair_edge[i]` its third-phase element and `clause_edge[j]` the element of
    clause j.
    """
    gmbs: Instance
    phase_of_edge: Tuple[Phase, ...]
    literal_of_vertex: Dict[int, Union[int, str]]
    formula: StochasticFormula
    k: int
    assignment_edges: Dict[int, Tuple[int, int]]
    pair_edge: Dict[int, int]
    clause_edge: Dict[int, int]
    audit: Dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.formula.n

    @property
    def m(self) -> int:
        return self.formula.m

    def edges_in_phase(self, phase: Phase) -> List[int]:
        return [e for e, p in enumerate(self.phase_of_edge) if p == phase]

    def to_dict(self) -> Dict[str, Any]:
        return to_jsonable({
            "instance": self.gmbs.to_dict(),
            "phase_of_edge": list(self.phase_of_edge),
            "literal_of_vertex": {str(v): lit for v, lit in self.literal_of_vertex.items()},
            "formula": self.formula.to_dict(),
            "k": self.k,
            "audit": self.audit,
        })


def clause_distribution(m: int, k: int) -> ValueDistribution:
    """Value m^4 / 2k with probability m^-4, else 0"""
    return ValueDistribution.two_point(Fraction(m ** 4, 2 * k), Fraction(1, m ** 4))


def assignment_distributions(variable: int) -> Tuple[ValueDistribution, ValueDistribution]:
    """First-phase values of (w x_i, w not-x_i)"""
    if StochasticFormula.is_random(variable):
        return ValueDistribution.two_point(2, Fraction(1, 2)), ValueDistribution.point(1)
    return ValueDistribution.point(1), ValueDistribution.point(1)


def _check_formula(formula: StochasticFormula, k: int, m: Optional[int],
                   require_even: bool = True) -> None:
    validate_formula(formula, require_even=require_even)
    if k < 1:
        raise ParameterError(f"Occurrence bound k must be positive, got {k}")
    if formula.max_occurrence() > k:
        raise FormulaError(f"A variable occurs in {formula.max_occurrence()} clauses, bound is {k}")
    if m is not None and m != formula.m:
        raise FormulaError(f"Declared clause count {m} differs from {formula.m}")
    if formula.m < 1:
        raise FormulaError("Formula has no clauses")


def s2sat_to_gmbs(formula: StochasticFormula, k: int, m: Optional[int] = None) -> ReductionArtifact:
    """
    Build the three-phase graphic instance of a stochastic 2CNF

    Vertex 0 is the center w, vertex 2i - 1 is x_i and vertex 2i is not-x_i.
    Phase 1 sends w x_i then w not-x_i per variable, phase 2 one edge per
    clause in declaration order and phase 3 the edges x_i not-x_i.

    Args:
        formula: Valid stochastic 2CNF
        k: Occurrence bound, at least the largest per-variable occurrence
        m: Optional clause count, checked against the formula

    Returns:
        ReductionArtifact

    Raises:
        FormulaError: If the formula is invalid or violates the bound
    """
    _check_formula(formula, k, m)
    n, m = formula.n, formula.m

    def vertex(literal: int) -> int:
        return 2 * abs(literal) - 1 if literal > 0 else 2 * abs(literal)

    edges: List[Tuple[int, int]] = []
    dists: List[ValueDistribution] = []
    phases: List[Phase] = []
    assignment_edges, pair_edge, clause_edge = {}, {}, {}

    for i in range(1, n + 1):
        positive, negative = assignment_distributions(i)
        assignment_edges[i] = (len(edges), len(edges) + 1)
        edges += [(0, vertex(i)), (0, vertex(-i))]
        dists += [positive, negative]
        phases += [PHASE_ASSIGN, PHASE_ASSIGN]

    value = clause_distribution(m, k)
    for j, clause in enumerate(formula.clauses):
        literals = list(dict.fromkeys(clause))
        if len(literals) == 1:
            edge = (0, vertex(-literals[0]))
        else:
            edge = (vertex(-literals[0]), vertex(-literals[1]))
        clause_edge[j] = len(edges)
        edges.append(edge)
        dists.append(value)
        phases.append(PHASE_CLAUSE)

    for i in range(1, n + 1):
        pair_edge[i] = len(edges)
        edges.append((vertex(i), vertex(-i)))
        dists.append(ValueDistribution.point(2))
        phases.append(PHASE_PAIR)

    literals = {0: CENTER}
    for i in range(1, n + 1):
        literals[vertex(i)] = i
        literals[vertex(-i)] = -i

    instance = Instance(GraphicGround.of(2 * n + 1, edges), tuple(dists), f"s2sat-n{n}-m{m}-k{k}")
    logger.info(f"Reduction built: {2 * n + 1} vertices, {len(edges)} edges")
    return ReductionArtifact(
        gmbs=instance,
        phase_of_edge=tuple(phases),
        literal_of_vertex=literals,
        formula=formula,
        k=k,
        assignment_edges=assignment_edges,
        pair_edge=pair_edge,
        clause_edge=clause_edge,
        audit={"vertices": 2 * n + 1, "edges": len(edges)},
    )


# ----------------------------------------------------------------------
# Rule audit
# ----------------------------------------------------------------------
@dataclass
class RuleReport:
    """Per-realization audit of the three selection rules"""
    applicable: bool
    realizations: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)

    MAX_RECORDED = 20

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, rule: int, element: int, atoms: Tuple[int, ...]) -> None:
        if len(self.violations) < self.MAX_RECORDED:
            self.violations.append({"rule": rule, "element": element, "atoms": list(atoms)})

    def to_dict(self) -> Dict[str, Any]:
        return {"applicable": self.applicable, "realizations": self.realizations,
                "violations": self.violations, "passed": self.passed}


def rules_applicable(artifact: ReductionArtifact) -> bool:
    """The selection rules assume clause edges are worth at least the pair edges"""
    return artifact.m ** 4 >= 4 * artifact.k


def check_reduction_rules(artifact: ReductionArtifact, eta: Any = None,
                          max_states: Optional[int] = None) -> RuleReport:
    """
    Replay the optimal policy of the dispersed instance on every realization

    An element "arrives" when its undispersed value is positive. Checked per
    realization: one of w x_i and w not-x_i is selected; for a random x_i,
    w x_i is selected exactly when it arrives; every arriving edge after the
    first phase is selected exactly when it closes no cycle.

    Args:
        artifact: Reduction output
        eta: Dispersal magnitude; config.DISPERSAL_ETA by default
        max_states: Exact-policy state budget

    Returns:
        RuleReport; not applicable (and empty) when m^4 < 4k
    """
    report = RuleReport(applicable=rules_applicable(artifact))
    if not report.applicable:
        logger.info(f"Rule audit skipped: m^4={artifact.m ** 4} < 4k={4 * artifact.k}")
        return report

    eta = parse_rational(config.DISPERSAL_ETA if eta is None else eta)
    base = artifact.gmbs
    dispersed = base.dispersed(eta)
    policy = ExactPolicy(dispersed, max_states)
    graph = base.graphic()
    phases = artifact.phase_of_edge

    for atoms in itertools.product(*(range(len(d.atoms)) for d in base.distributions)):
        report.realizations += 1
        values = [dispersed.distributions[t].atoms[a].value for t, a in enumerate(atoms)]
        arrived = [base.distributions[t].atoms[a].value > 0 for t, a in enumerate(atoms)]
        chosen = policy.replay(Realization(tuple(values))).selected

        for i, (pos, neg) in artifact.assignment_edges.items():
            if (pos in chosen) == (neg in chosen):
                report.record(1, pos, atoms)
            if StochasticFormula.is_random(i) and (pos in chosen) != arrived[pos]:
                report.record(2, pos, atoms)

        forest = UnionFind()
        for t, (a, b) in enumerate(graph.edges):
            acyclic = not forest.connected(a, b)
            if phases[t] in (PHASE_CLAUSE, PHASE_PAIR) and arrived[t] and acyclic != (t in chosen):
                report.record(3, t, atoms)
            if t in chosen:
                forest.union(a, b)

    log = logger.info if report.passed else logger.warning
    log(f"Rule audit: {report.realizations} realizations, {len(report.violations)} violations")
    return report


# ----------------------------------------------------------------------
# Gain accounting
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class GainWindowReport:
    """Exact optimal gain of a reduction instance against the closed-form window"""
    opt: Fraction
    sat_value: Fraction
    estimate: GainEstimate

    @property
    def passed(self) -> bool:
        return self.estimate.contains(self.opt)

    def to_dict(self) -> Dict[str, Any]:
        return to_jsonable({"opt": self.opt, "sat_value": self.sat_value,
                            "estimate": self.estimate.to_dict(), "passed": self.passed})


def gain_window_check(formula: S2SATFormula, k: int,
                      max_states: Optional[int] = None) -> GainWindowReport:
    """Exact gain of s2sat_to_gmbs(formula, k) versus gain_formula at P = OPT_on / m"""
    artifact = s2sat_to_gmbs(formula, k)
    sat = s2sat_value(formula)
    estimate = gain_formula(formula.n, formula.m, k, sat / formula.m)
    opt = ExactPolicy(artifact.gmbs, max_states).optimal_value()
    report = GainWindowReport(opt, sat, estimate)
    logger.debug(f"Gain window: opt={float(opt):.6f} base={float(estimate.base):.6f} passed={report.passed}")
    return report


@dataclass(frozen=True)
class AssignmentBound:
    """OPT_on against the m/2 bound of a uniformly random assignment"""
    value: Fraction
    bound: Fraction

    @property
    def holds(self) -> bool:
        return self.value >= self.bound

    def to_dict(self) -> Dict[str, Any]:
        return to_jsonable({"value": self.value, "bound": self.bound, "holds": self.holds})


def random_assignment_lower_bound(formula: S2SATFormula) -> AssignmentBound:
    """Every clause is satisfied w.p. at least 1/2 by a random assignment, so OPT_on >= m/2"""
    return AssignmentBound(s2sat_value(formula), Fraction(formula.m, 2))


__all__ = [
    'PHASE_ASSIGN',
    'PHASE_CLAUSE',
    'PHASE_PAIR',
    'PHASE_AUX',
    'PHASE_ZERO',
    'CENTER',
    'ReductionArtifact',
    'clause_distribution',
    'assignment_distributions',
    's2sat_to_gmbs',
    'RuleReport',
    'rules_applicable',
    'check_reduction_rules',
    'GainWindowReport',
    'gain_window_check',
    'AssignmentBound',
    'random_assignment_lower_bound',
]
