"""
LP Solver
HiGHS through scipy.optimize.linprog, with a primal feasibility audit
"""
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np
from scipy.optimize import linprog

from ..core.config import config
from ..core.errors import CorruptSolutionError, LPSolveError
from ..utils.logger import get_lp_logger
from .model import BlockLayout, LPModel

logger = get_lp_logger()


@dataclass
class LPSolution:
    """
    Primal values, objective and duals in maximization sign convention

    A positive dual means relaxing the row's right-hand side raises the objective.
    """
    x: np.ndarray
    objective: float
    eq_duals: Optional[np.ndarray]
    ub_duals: Optional[np.ndarray]
    max_violation: float
    status: str = "optimal"

    def value(self, col: int) -> float:
        return float(self.x[col])

    def block_objective(self, block: BlockLayout) -> float:
        """Sum over the block of E[v * X_t(v)]"""
        total = 0.0
        for (j, a), col in block.xm.items():
            atom = block.distributions[j].atoms[a]
            total += float(atom.prob) * float(atom.value) * self.x[col]
        return total

    def block_count(self, block: BlockLayout) -> float:
        """Sum over the block of E[X_t(v)]"""
        total = 0.0
        for (j, a), col in block.xm.items():
            total += float(block.distributions[j].atoms[a].prob) * self.x[col]
        return total

    def to_dict(self) -> Dict:
        return {"objective": self.objective, "max_violation": self.max_violation,
                "status": self.status}


def _violation(model: LPModel, x: np.ndarray) -> float:
    worst = 0.0
    if model.A_eq.shape[0]:
        worst = max(worst, float(np.max(np.abs(model.A_eq @ x - model.b_eq))))
    if model.A_ub.shape[0]:
        worst = max(worst, float(np.max(np.maximum(model.A_ub @ x - model.b_ub, 0.0))))
    for value, (lo, hi) in zip(x, model.bounds):
        if lo is not None:
            worst = max(worst, lo - value)
        if hi is not None:
            worst = max(worst, value - hi)
    return worst


def solve_lp(model: LPModel, with_duals: bool = True) -> LPSolution:
    """
    Solve the model to optimality

    Args:
        model: Assembled LPModel
        with_duals: Keep row duals on the solution

    Returns:
        LPSolution

    Raises:
        LPSolveError: If the backend does not report an optimum
        CorruptSolutionError: If the returned point violates the model
    """
    if model.n_cols == 0:
        return LPSolution(np.zeros(0), 0.0, np.zeros(0), np.zeros(0), 0.0)

    tol = config.LP_PRIMAL_TOL
    result = linprog(
        c=-model.c,
        A_ub=model.A_ub if model.A_ub.shape[0] else None,
        b_ub=model.b_ub if model.A_ub.shape[0] else None,
        A_eq=model.A_eq if model.A_eq.shape[0] else None,
        b_eq=model.b_eq if model.A_eq.shape[0] else None,
        bounds=model.bounds,
        method="highs",
        options={"primal_feasibility_tolerance": tol, "dual_feasibility_tolerance": tol},
    )
    if result.status != 0:
        logger.error(f"LP backend failed: {result.message}")
        raise LPSolveError(f"LP not solved to optimality: {result.message}")

    x = np.asarray(result.x, dtype=float)
    violation = _violation(model, x)
    if violation > config.LP_VERIFY_TOL:
        raise CorruptSolutionError(f"LP solution violates constraints by {violation:.3e}")
    if violation > tol:
        logger.warning(f"LP primal violation {violation:.3e} above {tol:.0e}")

    eq_duals = ub_duals = None
    if with_duals:
        # linprog minimizes -c; flip to the maximization convention
        if model.A_eq.shape[0] and getattr(result, "eqlin", None) is not None:
            eq_duals = -np.asarray(result.eqlin.marginals, dtype=float)
        if model.A_ub.shape[0] and getattr(result, "ineqlin", None) is not None:
            ub_duals = -np.asarray(result.ineqlin.marginals, dtype=float)

    solution = LPSolution(x, float(-result.fun), eq_duals, ub_duals, violation)
    logger.info(f"LP optimum {solution.objective:.9g} (violation {violation:.2e})")
    return solution


__all__ = ['LPSolution', 'solve_lp']
