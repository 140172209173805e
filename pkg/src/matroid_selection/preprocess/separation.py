"""
Capacity Separation
Drops redundant bins and caps nested capacities at ceil(alpha * parent) so depth stays logarithmic
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from ..core.errors import ParameterError
from ..core.model import Bin, Instance, LaminarFamily
from ..policy.exact_policy import optimal_value
from ..utils.logger import get_logger

logger = get_logger("matroid_selection.preprocess")


@dataclass(frozen=True)
class SeparatedInstance:
    """
    The separated matroid M' = (U, L', c')

    `kept_bins` are indices into the original family; `new_caps` maps each
    kept index to its capacity c'.
    """
    original: Instance
    kept_bins: Tuple[int, ...]
    new_caps: Dict[int, int]
    alpha: Optional[Fraction] = None

    @classmethod
    def identity(cls, instance: Instance) -> "SeparatedInstance":
        """No-op separation keeping every bin at its capacity"""
        family = instance.laminar()
        return cls(instance, tuple(range(len(family.bins))),
                   {i: b.capacity for i, b in enumerate(family.bins)})

    @property
    def family(self) -> LaminarFamily:
        bins = self.original.laminar().bins
        return LaminarFamily(tuple(Bin(bins[i].members, self.new_caps[i]) for i in self.kept_bins))

    @property
    def instance(self) -> Instance:
        """M' as a standalone instance (kept bins in original order)"""
        return self.original.with_ground(self.family)

    def to_dict(self) -> Dict:
        return {"kept_bins": list(self.kept_bins),
                "new_caps": {str(i): c for i, c in self.new_caps.items()},
                "alpha": str(self.alpha) if self.alpha is not None else None}


def separate_capacities(instance: Instance, alpha: Union[Fraction, float, str]) -> SeparatedInstance:
    """
    Build M' satisfying c'(A) <= ceil(alpha * c'(B)) for nested kept bins A in B

    Bins are processed by non-increasing size, ties by position in the family.
    A bin with no kept superset is kept as is; otherwise, with B its smallest
    kept superset, it is dropped when c(A) >= c'(B) and kept with
    min(c(A), ceil(alpha * c'(B))) otherwise.

    Args:
        instance: Laminar instance
        alpha: Rational in (0, 1)

    Returns:
        SeparatedInstance

    Raises:
        ParameterError: If alpha is outside (0, 1)
        WrongGroundError: On graphic instances
    """
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    bins = instance.laminar().bins
    order = sorted(range(len(bins)), key=lambda i: (-len(bins[i].members), i))

    kept = []
    caps: Dict[int, int] = {}
    dropped = 0
    for a in order:
        members = bins[a].members
        supersets = [b for b in kept if members <= bins[b].members]
        if not supersets:
            kept.append(a)
            caps[a] = bins[a].capacity
            continue
        parent = min(supersets, key=lambda b: len(bins[b].members))
        if bins[a].capacity >= caps[parent]:
            dropped += 1
            continue
        kept.append(a)
        caps[a] = min(bins[a].capacity, math.ceil(alpha * caps[parent]))

    logger.info(f"Separation alpha={alpha}: kept {len(kept)} bins, dropped {dropped}")
    return SeparatedInstance(instance, tuple(sorted(kept)), caps, alpha)


def separated_depth_bound(alpha: Union[Fraction, float], max_capacity: int) -> float:
    """
    Upper bound on kept-bin depth after separation

    Capacities strictly decrease along a kept chain and contract towards
    1/(1 - alpha) by a factor alpha per level.
    """
    alpha = float(alpha)
    return math.log(max(max_capacity, 1)) / math.log(1.0 / alpha) + 1.0 / (1.0 - alpha) + 2.0


def qptas_solve(instance: Instance, epsilon: Union[Fraction, float, str],
                max_states: Optional[int] = None) -> Fraction:
    """
    Exact optimal value of the instance separated with alpha = 1 - epsilon

    Lies in [(1 - epsilon) * OPT, OPT].

    Raises:
        ParameterError: If epsilon is outside (0, 1)
        ResourceBudgetError: If the separated state space exceeds the budget
    """
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < 1:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    separated = separate_capacities(instance, 1 - epsilon)
    return optimal_value(separated.instance, max_states)


__all__ = ['SeparatedInstance', 'separate_capacities', 'separated_depth_bound', 'qptas_solve']
