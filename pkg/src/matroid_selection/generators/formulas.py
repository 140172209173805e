"""
Formula Generators
3CNF to 2CNF clause gadget and exhaustive small-formula corpora
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Tuple

from ..core.formulas import S2SATFormula, S3SATFormula, StochasticFormula, validate_formula
from ..policy.stochastic_sat import stochastic_sat_value
from ..utils.logger import get_generator_logger
from ..utils.rationals import to_jsonable

logger = get_generator_logger()

GADGET_CLAUSES = 10


def three_clause_count(formula: StochasticFormula) -> int:
    return sum(1 for c in formula.clauses if len(c) == 3)


def s3sat_to_s2sat(formula3: StochasticFormula) -> S2SATFormula:
    """
    Replace every 3-literal clause by ten clauses of width at most 2

    Clause (l1 or l2 or l3) becomes (l1), (l2), (l3), (c), (-l1 or -l2),
    (-l2 or -l3), (-l1 or -l3), (l1 or -c), (l2 or -c), (l3 or -c) with a fresh
    player variable c appended after all earlier variables. A coin variable
    that occurs nowhere is inserted whenever the next free index is even, and
    once at the end when the total is odd, so the result alternates correctly.
    Shorter clauses are copied in place.
    """
    validate_formula(formula3, require_even=False, require_coverage=False)
    count = formula3.n
    clauses: List[Tuple[int, ...]] = []
    for clause in formula3.clauses:
        if len(clause) < 3:
            clauses.append(clause)
            continue
        if (count + 1) % 2 == 0:
            count += 1
        count += 1
        c = count
        l1, l2, l3 = clause
        clauses += [(l1,), (l2,), (l3,), (c,),
                    (-l1, -l2), (-l2, -l3), (-l1, -l3),
                    (l1, -c), (l2, -c), (l3, -c)]
    if count % 2:
        count += 1
    k = 10 * formula3.k if formula3.k is not None else None
    logger.debug(f"Gadget: {three_clause_count(formula3)} long clauses, {formula3.n} -> {count} variables")
    return S2SATFormula.of(count, clauses, k)


@dataclass(frozen=True)
class GadgetIdentity:
    """Game value of the 2CNF against 6 per long clause plus the 3CNF game value"""
    formula: StochasticFormula
    long_clauses: int
    value_2cnf: Fraction
    value_3cnf: Fraction

    @property
    def holds(self) -> bool:
        return self.value_2cnf == 6 * self.long_clauses + self.value_3cnf

    def to_dict(self) -> Dict[str, Any]:
        return to_jsonable({"formula": self.formula.to_dict(), "long_clauses": self.long_clauses,
                            "value_2cnf": self.value_2cnf, "value_3cnf": self.value_3cnf,
                            "holds": self.holds})


def gadget_identity(formula3: StochasticFormula) -> GadgetIdentity:
    """
    Evaluate both sides of the gadget identity

    Both sides use the game evaluator directly; coverage is not required of
    the input.
    """
    converted = s3sat_to_s2sat(formula3)
    return GadgetIdentity(formula3, three_clause_count(formula3),
                          stochastic_sat_value(converted), stochastic_sat_value(formula3))


def _clause_types(n: int, max_width: int, distinct: bool) -> List[Tuple[int, ...]]:
    literals = [l for i in range(1, n + 1) for l in (i, -i)]
    combine = itertools.combinations if distinct else itertools.combinations_with_replacement
    return [c for w in range(1, max_width + 1) for c in combine(literals, w)]


def enumerate_s2sat(n: int = 2, max_clauses: int = 2) -> Iterator[S2SATFormula]:
    """
    Every covered 2CNF on n variables with 1..max_clauses clauses

    Clauses have distinct literals; clause multisets are enumerated once.
    k is set to the largest occurrence count of each formula.
    """
    types = _clause_types(n, 2, distinct=True)
    for m in range(1, max_clauses + 1):
        for clauses in itertools.combinations_with_replacement(types, m):
            formula = S2SATFormula.of(n, clauses)
            if not formula.covered():
                continue
            yield S2SATFormula.of(n, clauses, max(formula.max_occurrence(), 1))


def enumerate_s3sat(max_variables: int = 3, max_clauses: int = 2) -> Iterator[S3SATFormula]:
    """Every 3CNF with 1..max_variables variables and 1..max_clauses clauses, repeated literals allowed"""
    for n in range(1, max_variables + 1):
        types = _clause_types(n, 3, distinct=False)
        for m in range(1, max_clauses + 1):
            for clauses in itertools.combinations_with_replacement(types, m):
                yield S3SATFormula.of(n, clauses)


__all__ = [
    'GADGET_CLAUSES',
    'three_clause_count',
    's3sat_to_s2sat',
    'GadgetIdentity',
    'gadget_identity',
    'enumerate_s2sat',
    'enumerate_s3sat',
]
