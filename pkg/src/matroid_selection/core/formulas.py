"""
Stochastic SAT Formulas
Ordered-variable CNF where odd variables are chosen and even variables are coin flips
"""
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import FormulaError

Clause = Tuple[int, ...]


def _normalize(clause: Iterable[int]) -> Clause:
    # repeated literals are kept: a clause is a sequence of literal slots
    literals = tuple(int(lit) for lit in clause)
    if 0 in literals:
        raise FormulaError("Literal 0 is not a variable")
    return literals


@dataclass(frozen=True)
class StochasticFormula:
    """
    Variables 1..n; literal +i is x_i and -i is its negation

    Variable i is set by the player when i is odd and by a fair coin when i is even.
    """
    n: int
    clauses: Tuple[Clause, ...]
    k: Optional[int] = None

    MAX_WIDTH = 3

    @classmethod
    def of(cls, n: int, clauses: Iterable[Sequence[int]], k: Optional[int] = None):
        return cls(int(n), tuple(_normalize(c) for c in clauses), k)

    @property
    def m(self) -> int:
        return len(self.clauses)

    @staticmethod
    def is_random(variable: int) -> bool:
        return variable % 2 == 0

    def occurrences(self) -> Dict[int, int]:
        """Number of clauses mentioning each variable"""
        counts = {i: 0 for i in range(1, self.n + 1)}
        for clause in self.clauses:
            for var in {abs(l) for l in clause}:
                counts[var] = counts.get(var, 0) + 1
        return counts

    def max_occurrence(self) -> int:
        return max(self.occurrences().values(), default=0)

    def mentioned(self) -> set:
        return {abs(l) for c in self.clauses for l in c}

    def covered(self) -> bool:
        """For every i < n, x_i or x_{i+1} occurs in some clause"""
        used = self.mentioned()
        return all(i in used or i + 1 in used for i in range(1, self.n))

    def to_dict(self) -> Dict:
        return {"n": self.n, "clauses": [list(c) for c in self.clauses], "k": self.k}


@dataclass(frozen=True)
class S2SATFormula(StochasticFormula):
    """Stochastic 2CNF"""
    MAX_WIDTH = 2


@dataclass(frozen=True)
class S3SATFormula(StochasticFormula):
    """Stochastic 3CNF"""
    MAX_WIDTH = 3


def validate_formula(formula: StochasticFormula, require_even: bool = True,
                     require_coverage: bool = True) -> None:
    """
    Check width, literal range, parity, coverage and the declared occurrence bound

    Raises:
        FormulaError: On the first violated rule
    """
    if formula.n < 1:
        raise FormulaError("Formula needs at least one variable")
    if require_even and formula.n % 2:
        raise FormulaError(f"Variable count {formula.n} is odd")
    for idx, clause in enumerate(formula.clauses):
        if not 1 <= len(clause) <= formula.MAX_WIDTH:
            raise FormulaError(f"Clause {idx} has {len(clause)} literals, allowed 1..{formula.MAX_WIDTH}")
        for lit in clause:
            if not 1 <= abs(lit) <= formula.n:
                raise FormulaError(f"Clause {idx} mentions x{abs(lit)} outside 1..{formula.n}")
    if require_coverage and not formula.covered():
        raise FormulaError("Coverage rule violated: some x_i and x_{i+1} both appear in no clause")
    if formula.k is not None and formula.max_occurrence() > formula.k:
        raise FormulaError(f"A variable occurs in {formula.max_occurrence()} clauses, bound is {formula.k}")


__all__ = ['Clause', 'StochasticFormula', 'S2SATFormula', 'S3SATFormula', 'validate_formula']
