"""
Error Types for the Matroid Selection Toolkit
"""
from typing import Optional


class SelectionError(Exception):
    """Base class for every toolkit error"""


class InstanceValidationError(SelectionError):
    """Malformed or invalid input (instance, formula, parameters file)"""


class ResourceBudgetError(SelectionError):
    """A state-space or enumeration budget was exceeded"""

    def __init__(self, message: str, state_count: Optional[int] = None, limit: Optional[int] = None):
        super().__init__(message)
        self.state_count = state_count
        self.limit = limit


class ElementIndexError(SelectionError, IndexError):
    """Element index outside the ground set"""


class WrongGroundError(SelectionError, TypeError):
    """Operation requires a different ground kind (laminar or graphic)"""


class ParameterError(SelectionError, ValueError):
    """Numeric parameter out of its allowed range"""


class InfeasibleStateError(SelectionError):
    """Policy state is not reachable from a feasible selection"""


class InconsistentRealizationError(SelectionError, ValueError):
    """Realized value is not an atom of the element's distribution"""


class FormulaError(SelectionError, ValueError):
    """Stochastic SAT formula violates parity, coverage or occurrence rules"""


class LPSolveError(SelectionError):
    """LP backend failed to return an optimal solution"""


class CorruptSolutionError(SelectionError):
    """LP solution violates the constraints it was solved under"""


__all__ = [
    'SelectionError',
    'InstanceValidationError',
    'ResourceBudgetError',
    'ElementIndexError',
    'WrongGroundError',
    'ParameterError',
    'InfeasibleStateError',
    'InconsistentRealizationError',
    'FormulaError',
    'LPSolveError',
    'CorruptSolutionError',
]
