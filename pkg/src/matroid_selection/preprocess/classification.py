"""
Big/Small Bin Classification and Big-Bin Shrinking
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from ..core.errors import ParameterError
from ..core.matroid import bin_depth, non_left_to_right_load
from ..core.model import Bin, Instance, LaminarFamily
from ..utils.logger import get_logger
from .separation import SeparatedInstance

logger = get_logger("matroid_selection.preprocess")

UNIFORM = "uniform"
DEPTH_SCALED = "depth_scaled"


@dataclass(frozen=True)
class BinClassification:
    """
    Partition of the bins of M' (plus singleton fillers) into big and small

    Indices refer to `family`: the kept bins of M' in order, followed by the
    capacity-1 singletons added for elements outside every small bin.
    """
    family: LaminarFamily
    source: Tuple[Optional[int], ...]
    big: Tuple[int, ...]
    small_maximal: Tuple[int, ...]
    thresholds: Dict[int, int]
    mode: str = UNIFORM
    K: int = 1

    def is_big(self, index: int) -> bool:
        return index in self.big

    def block_of(self, element: int) -> int:
        """The maximal small bin containing an element"""
        for s in self.small_maximal:
            if element in self.family.bins[s].members:
                return s
        raise KeyError(f"Element {element} in no maximal small bin")

    def to_dict(self) -> Dict:
        return {
            "mode": self.mode,
            "K": self.K,
            "bins": [b.to_dict() for b in self.family.bins],
            "source": list(self.source),
            "big": list(self.big),
            "small_maximal": list(self.small_maximal),
            "thresholds": {str(i): t for i, t in self.thresholds.items()},
        }


def depth_scaled_thresholds(family: LaminarFamily, K: int, L: int,
                            epsilon: Union[Fraction, float]) -> Dict[int, int]:
    """
    ceil(K / delta^(L - d)) for bins of depth d <= L, ceil(K) deeper

    delta = epsilon^2 / ln(1 / epsilon)
    """
    eps = float(epsilon)
    delta = eps * eps / math.log(1.0 / eps)
    thresholds = {}
    for i in range(len(family.bins)):
        d = bin_depth(family, i)
        thresholds[i] = math.ceil(K / delta ** (L - d)) if d <= L else math.ceil(K)
    return thresholds


def classify_bins(separated: SeparatedInstance, K: int, mode: str = UNIFORM,
                  L: Optional[int] = None,
                  epsilon: Optional[Union[Fraction, float]] = None) -> BinClassification:
    """
    Split the bins of M' into big and small

    A bin is big when its capacity reaches its threshold and every bin
    containing it is big. Elements in no small bin get a capacity-1 singleton;
    these fillers are small for every K.

    Args:
        separated: Output of separate_capacities
        K: Threshold (uniform) or base threshold (depth-scaled)
        mode: "uniform" or "depth_scaled"
        L: Depth parameter for depth-scaled mode (default: non-left-to-right load)
        epsilon: Accuracy for depth-scaled mode

    Returns:
        BinClassification

    Raises:
        ParameterError: On K < 1, unknown mode, or missing epsilon in depth-scaled mode
    """
    if K < 1:
        raise ParameterError(f"K must be at least 1, got {K}")
    base = separated.family
    if mode == UNIFORM:
        thresholds = {i: int(K) for i in range(len(base.bins))}
    elif mode == DEPTH_SCALED:
        if epsilon is None or not 0 < Fraction(epsilon) < 1:
            raise ParameterError("Depth-scaled classification needs epsilon in (0, 1)")
        if L is None:
            L = non_left_to_right_load(separated.instance)
        thresholds = depth_scaled_thresholds(base, K, L, epsilon)
    else:
        raise ParameterError(f"Unknown classification mode {mode!r}")

    # outermost first so ancestors are decided before descendants
    order = sorted(range(len(base.bins)), key=lambda i: -len(base.bins[i].members))
    big = set()
    for i in order:
        ancestors = base.ancestors(i)
        if base.bins[i].capacity >= thresholds[i] and all(a in big for a in ancestors):
            big.add(i)
    small = [i for i in range(len(base.bins)) if i not in big]
    maximal = [i for i in small
               if not any(base.bins[i].members < base.bins[j].members for j in small)]

    covered = set()
    for i in maximal:
        covered |= base.bins[i].members
    bins = list(base.bins)
    source: list = list(separated.kept_bins)
    for e in range(separated.original.n):
        if e not in covered:
            thresholds[len(bins)] = int(K)
            maximal.append(len(bins))
            bins.append(Bin(frozenset({e}), 1))
            source.append(None)

    logger.info(f"Classified {len(base.bins)} bins ({mode}, K={K}): "
                f"{len(big)} big, {len(maximal)} maximal small")
    return BinClassification(
        family=LaminarFamily(tuple(bins)),
        source=tuple(source),
        big=tuple(sorted(big)),
        small_maximal=tuple(sorted(maximal, key=lambda i: min(bins[i].members))),
        thresholds=thresholds,
        mode=mode,
        K=int(K),
    )


@dataclass(frozen=True)
class ShrunkCapacities:
    """Capacities c'' of M'': big bins scaled by (1 - epsilon) and floored"""
    caps: Dict[int, int]
    instance: Instance
    classification: BinClassification = field(repr=False)

    def __getitem__(self, index: int) -> int:
        return self.caps[index]


def shrink_big(separated: SeparatedInstance, classification: BinClassification,
               epsilon: Union[Fraction, float, str]) -> ShrunkCapacities:
    """
    floor((1 - epsilon) * c') on big bins; small bins unchanged

    Raises:
        ParameterError: If epsilon is outside (0, 1)
    """
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < 1:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    caps = {}
    bins = []
    for i, b in enumerate(classification.family.bins):
        cap = math.floor((1 - epsilon) * b.capacity) if i in classification.big else b.capacity
        caps[i] = cap
        bins.append(Bin(b.members, cap))
    instance = separated.original.with_ground(LaminarFamily(tuple(bins)))
    return ShrunkCapacities(caps, instance, classification)


__all__ = [
    'UNIFORM',
    'DEPTH_SCALED',
    'BinClassification',
    'depth_scaled_thresholds',
    'classify_bins',
    'ShrunkCapacities',
    'shrink_big',
]
