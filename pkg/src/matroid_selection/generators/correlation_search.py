"""
Positive Correlation Search
Small uniform-matroid instances where optimal selections are positively correlated
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional

from ..core.model import Instance, LaminarFamily, ValueDistribution
from ..policy.statistics import exact_statistics
from ..utils.logger import get_generator_logger
from ..utils.rationals import to_jsonable

logger = get_generator_logger()

TARGET = {
    "pr_first": Fraction(3, 4),
    "pr_second": Fraction(1, 4),
    "pr_joint": Fraction(1, 4),
    "covariance": Fraction(1, 16),
}
FIRST, SECOND = 2, 3
CAPACITY = 2

FIRST_VALUES = (1, 2, 3)
FIRST_PROBS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
THIRD_VALUES = (1, 2, 3)
THIRD_PROBS = (Fraction(1, 2), Fraction(1))


@dataclass(frozen=True)
class CorrelationSearchResult:
    """Best instance found and the selection statistics of its last two elements"""
    instance: Instance
    pr_first: Fraction
    pr_second: Fraction
    pr_joint: Fraction
    covariance: Fraction
    candidates: int

    @property
    def exact_match(self) -> bool:
        return (self.pr_first, self.pr_second, self.pr_joint, self.covariance) == tuple(TARGET.values())

    @property
    def positive(self) -> bool:
        return self.covariance > 0

    def to_dict(self) -> Dict[str, Any]:
        return to_jsonable({
            "instance": self.instance.to_dict(),
            "pr_first": self.pr_first,
            "pr_second": self.pr_second,
            "pr_joint": self.pr_joint,
            "covariance": self.covariance,
            "exact_match": self.exact_match,
            "positive": self.positive,
            "candidates": self.candidates,
        })


def correlation_instance(first_value: Any, first_prob: Any, third_value: Any, third_prob: Any) -> Instance:
    """
    Four elements under a rank-2 uniform matroid

    Element 1 is worth 3 w.p. 1/2 and element 4 is worth 1 surely; elements 1
    and 3 are the searched two-point distributions.
    """
    dists = (
        ValueDistribution.two_point(first_value, first_prob),
        ValueDistribution.two_point(3, Fraction(1, 2)),
        ValueDistribution.two_point(third_value, third_prob),
        ValueDistribution.point(1),
    )
    return Instance(LaminarFamily.of([(range(4), CAPACITY)]), dists, "positive-correlation")


def search_positive_correlation(stop_on_match: bool = True) -> Optional[CorrelationSearchResult]:
    """
    Scan the parameter grid for the covariance pattern of the last two elements

    Returns the first exact match of the target statistics, else the grid
    point with the largest covariance.
    """
    best: Optional[CorrelationSearchResult] = None
    count = 0
    grid = itertools.product(FIRST_VALUES, FIRST_PROBS, THIRD_VALUES, THIRD_PROBS)
    for fv, fp, tv, tp in grid:
        count += 1
        instance = correlation_instance(fv, fp, tv, tp)
        stats = exact_statistics(instance, pairs=[(FIRST, SECOND)])
        result = CorrelationSearchResult(
            instance=instance,
            pr_first=stats.marginals[FIRST],
            pr_second=stats.marginals[SECOND],
            pr_joint=stats.joint[(FIRST, SECOND)],
            covariance=stats.pair_covariance(FIRST, SECOND),
            candidates=count,
        )
        if result.exact_match and stop_on_match:
            logger.info(f"Exact covariance pattern found after {count} candidates")
            return result
        if best is None or result.covariance > best.covariance:
            best = result
    if best is not None:
        logger.info(f"No exact match in {count} candidates; best covariance {best.covariance}")
        best = CorrelationSearchResult(best.instance, best.pr_first, best.pr_second,
                                       best.pr_joint, best.covariance, count)
    return best


__all__ = ['TARGET', 'CorrelationSearchResult', 'correlation_instance', 'search_positive_correlation']
