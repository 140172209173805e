"""
Stochastic SAT Game Values
Backward induction: max at player variables, fair average at coin variables
"""
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

from ..core.errors import FormulaError
from ..core.formulas import S2SATFormula, StochasticFormula, validate_formula

HALF = Fraction(1, 2)


def stochastic_sat_value(formula: StochasticFormula) -> Fraction:
    """
    Expected satisfied-clause count of the optimal online assignment

    Works for any clause width; the formula is not validated here.
    """
    n = formula.n

    @lru_cache(maxsize=None)
    def solve(i: int, pending: Tuple[Tuple[int, ...], ...]) -> Fraction:
        # pending: clauses not yet satisfied, reduced to literals on variables > i
        if i == n or not pending:
            return Fraction(0)
        var = i + 1
        outcomes = []
        for truth in (True, False):
            lit, neg = (var, -var) if truth else (-var, var)
            gained = 0
            rest = []
            for clause in pending:
                if lit in clause:
                    gained += 1
                    continue
                reduced = tuple(l for l in clause if l != neg)
                if reduced:
                    rest.append(reduced)
            outcomes.append(gained + solve(i + 1, tuple(sorted(rest))))
        if formula.is_random(var):
            return (outcomes[0] + outcomes[1]) * HALF
        return max(outcomes)

    return solve(0, tuple(sorted(formula.clauses)))


def satisfied_count(formula: StochasticFormula, assignment: Sequence[bool]) -> int:
    """Clauses satisfied by a full assignment (assignment[i - 1] is x_i)"""
    if len(assignment) != formula.n:
        raise FormulaError(f"Assignment has {len(assignment)} values, formula has {formula.n} variables")
    return sum(
        1 for clause in formula.clauses
        if any(assignment[abs(l) - 1] == (l > 0) for l in clause)
    )


def s2sat_value(formula: S2SATFormula) -> Fraction:
    """
    OPT_on of a stochastic 2CNF

    Raises:
        FormulaError: If n is odd or the coverage rule fails
    """
    validate_formula(formula)
    return stochastic_sat_value(formula)


__all__ = ['stochastic_sat_value', 'satisfied_count', 's2sat_value']
