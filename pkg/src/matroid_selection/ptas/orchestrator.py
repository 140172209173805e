"""
PTAS Orchestrator
Builds the composed online policy: separate, classify, shrink, solve, extract
"""
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional, Union

from ..core.config import config
from ..core.errors import ParameterError
from ..core.model import Instance, LaminarFamily
from ..lp.extraction import ExtractedPolicy, extract_policy
from ..lp.model import LPModel, assemble_lp
from ..lp.solver import LPSolution, solve_lp
from ..preprocess.classification import (UNIFORM, BinClassification, ShrunkCapacities,
                                         classify_bins, shrink_big)
from ..preprocess.separation import SeparatedInstance, separate_capacities
from ..utils.logger import get_runner_logger

logger = get_runner_logger()


@dataclass
class PtasPolicy:
    """Everything the online run needs, plus the intermediate artifacts"""
    instance: Instance
    epsilon: Fraction
    K: int
    separated: SeparatedInstance
    classification: BinClassification
    shrunk: ShrunkCapacities
    model: LPModel
    solution: LPSolution
    extracted: ExtractedPolicy
    stages: Dict[str, Any] = field(default_factory=dict)

    @property
    def lp_value(self) -> float:
        return self.solution.objective

    @property
    def feasibility(self) -> LaminarFamily:
        """M' used to filter suggestions"""
        return self.separated.family

    def to_dict(self) -> Dict[str, Any]:
        return {
            "epsilon": str(self.epsilon),
            "K": self.K,
            "lp_value": self.lp_value,
            "separation": self.separated.to_dict(),
            "classification": self.classification.to_dict(),
            "lp": self.model.summary(),
            "stages": self.stages,
        }


def ptas_guarantee(epsilon: Union[Fraction, float]) -> float:
    """(1 - eps)^2 (1 - 3 eps), clamped at 0"""
    eps = float(epsilon)
    return max(0.0, (1 - eps) ** 2 * (1 - 3 * eps))


def big_bin_tail_bound(capacity: int, epsilon: Union[Fraction, float]) -> float:
    """Chernoff bound exp(-eps^2 c' / (2 + eps)) on a big bin overflowing"""
    eps = float(epsilon)
    return math.exp(-eps * eps * capacity / (2 + eps))


def lp_guarantee_ratio(policy: PtasPolicy) -> float:
    """
    (1 - eps) * gamma with gamma the smallest c''/c' over big bins

    Mixing an M'-feasible LP point with the all-reject point by gamma keeps it
    feasible for M'', so LP >= this ratio times OPT.
    """
    gamma = 1.0
    for b in policy.classification.big:
        original = policy.classification.family.bins[b].capacity
        if original > 0:
            gamma = min(gamma, policy.shrunk.caps[b] / original)
    return (1 - float(policy.epsilon)) * gamma


class PtasOrchestrator:
    """
    Orchestrates the policy construction:
    1. Separate capacities with alpha = 1 - epsilon
    2. Classify bins as big or small
    3. Shrink big-bin capacities
    4. Assemble and solve the LP
    5. Extract one policy per maximal small bin
    """

    def __init__(self, epsilon: Union[Fraction, float, str], K: Optional[int] = None,
                 mode: str = UNIFORM, L: Optional[int] = None, timing: bool = False):
        self.epsilon = Fraction(epsilon)
        if not 0 < self.epsilon < 1:
            raise ParameterError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        self.K = int(K) if K is not None else config.auto_k(self.epsilon)
        if self.K < 1:
            raise ParameterError(f"K must be at least 1, got {self.K}")
        self.mode = mode
        self.L = L
        self.timing = timing

    def _stage(self, stages: Dict[str, Any], name: str, started: float, **info) -> None:
        entry = dict(info)
        if self.timing:
            entry["seconds"] = round(time.perf_counter() - started, 6)
        stages[name] = entry
        logger.info(f"Stage {name} done: {info}")

    def build(self, instance: Instance) -> PtasPolicy:
        """Run steps 1-5 on a laminar instance"""
        logger.info(f"Building policy for {instance.n} elements (epsilon={self.epsilon}, K={self.K})")
        stages: Dict[str, Any] = {}

        started = time.perf_counter()
        separated = separate_capacities(instance, 1 - self.epsilon)
        self._stage(stages, "separation", started, kept=len(separated.kept_bins))

        started = time.perf_counter()
        classification = classify_bins(separated, self.K, self.mode, L=self.L, epsilon=self.epsilon)
        self._stage(stages, "classification", started, big=len(classification.big),
                    small=len(classification.small_maximal))

        started = time.perf_counter()
        shrunk = shrink_big(separated, classification, self.epsilon)
        self._stage(stages, "shrink", started,
                    big_caps={str(b): shrunk.caps[b] for b in classification.big})

        started = time.perf_counter()
        model = assemble_lp(shrunk.instance, classification)
        solution = solve_lp(model)
        self._stage(stages, "lp", started, objective=solution.objective, **model.summary())

        started = time.perf_counter()
        extracted = extract_policy(model, solution)
        self._stage(stages, "extraction", started, blocks=len(extracted.blocks))

        return PtasPolicy(instance, self.epsilon, self.K, separated, classification,
                          shrunk, model, solution, extracted, stages)


def build_ptas_policy(instance: Instance, epsilon: Union[Fraction, float, str],
                      K: Optional[int] = None, mode: str = UNIFORM,
                      L: Optional[int] = None) -> PtasPolicy:
    """Module-level shortcut for PtasOrchestrator(...).build(instance)"""
    return PtasOrchestrator(epsilon, K, mode, L).build(instance)


__all__ = [
    'PtasPolicy',
    'PtasOrchestrator',
    'build_ptas_policy',
    'ptas_guarantee',
    'big_bin_tail_bound',
    'lp_guarantee_ratio',
]
