"""
Exact Selection Statistics
Weighted enumeration of optimal-policy traces over all joint realizations
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..core.model import Instance
from ..utils.logger import get_policy_logger
from ..utils.rationals import to_jsonable
from .exact_policy import ExactPolicy, enumerate_realizations

logger = get_policy_logger()

Group = Tuple[int, ...]


@dataclass
class SelectionStatistics:
    """Exact selection marginals, pair joints and group moments of the optimal policy"""
    marginals: Tuple[Fraction, ...]
    joint: Dict[Tuple[int, int], Fraction]
    group_means: Dict[Group, Fraction]
    covariances: Dict[Tuple[Group, Group], Fraction]
    count_distributions: Dict[Group, Dict[int, Fraction]]
    mgf: Dict[Tuple[Group, float], float] = field(default_factory=dict)
    realizations: int = 0

    def pair_covariance(self, i: int, j: int) -> Fraction:
        """Cov(X_i, X_j) for a tracked pair"""
        key = (min(i, j), max(i, j))
        return self.joint[key] - self.marginals[i] * self.marginals[j]

    def to_dict(self) -> Dict:
        return to_jsonable({
            "marginals": list(self.marginals),
            "joint": {f"{i},{j}": p for (i, j), p in self.joint.items()},
            "group_means": {",".join(map(str, g)): m for g, m in self.group_means.items()},
            "covariances": {f"{','.join(map(str, a))}|{','.join(map(str, b))}": c
                            for (a, b), c in self.covariances.items()},
            "count_distributions": {",".join(map(str, g)): d for g, d in self.count_distributions.items()},
            "mgf": {f"{','.join(map(str, g))}@{alpha}": v for (g, alpha), v in self.mgf.items()},
            "realizations": self.realizations,
        })


def mgf_bound(mean: Fraction, alpha: float) -> float:
    """Poisson-style moment bound e^{(e^alpha - 1) * mean}"""
    return math.exp((math.exp(alpha) - 1.0) * float(mean))


def exact_statistics(instance: Instance,
                     groups: Iterable[Sequence[int]] = (),
                     alphas: Iterable[float] = (),
                     pairs: Optional[Iterable[Tuple[int, int]]] = None,
                     policy: Optional[ExactPolicy] = None,
                     cap: Optional[int] = None) -> SelectionStatistics:
    """
    Exact statistics of the optimal policy's selections

    Args:
        instance: Instance within the enumeration cap
        groups: Index sets B for E[X_B], Cov and the |X_B| distribution;
            the whole ground set is always included
        alphas: Grid for E[e^{alpha X_B}]
        pairs: Element pairs for Pr[X_i and X_j]; all pairs when None
        policy: Reuse a solved ExactPolicy
        cap: Enumeration cap override

    Returns:
        SelectionStatistics

    Raises:
        ResourceBudgetError: If the realization count exceeds the cap
    """
    policy = policy or ExactPolicy(instance)
    n = instance.n
    group_list: List[Group] = [tuple(range(n))]
    for g in groups:
        key = tuple(sorted(set(g)))
        for e in key:
            instance.check_element(e)
        if key not in group_list:
            group_list.append(key)
    pair_list = sorted({(min(i, j), max(i, j)) for i, j in pairs}) if pairs is not None else \
        [(i, j) for i in range(n) for j in range(i + 1, n)]
    group_sets = [frozenset(g) for g in group_list]

    marginals = [Fraction(0)] * n
    joint = {p: Fraction(0) for p in pair_list}
    counts: Dict[Group, Dict[int, Fraction]] = {g: {} for g in group_list}
    cross = {(a, b): Fraction(0) for a in group_list for b in group_list if a <= b}

    seen = 0
    for realization in enumerate_realizations(instance, cap):
        seen += 1
        w = realization.weight
        chosen = policy.replay(realization).selected
        for e in chosen:
            marginals[e] += w
        for (i, j) in pair_list:
            if i in chosen and j in chosen:
                joint[(i, j)] += w
        sizes = [len(chosen & gs) for gs in group_sets]
        for g, k in zip(group_list, sizes):
            counts[g][k] = counts[g].get(k, Fraction(0)) + w
        for ia, a in enumerate(group_list):
            for ib, b in enumerate(group_list):
                if a <= b:
                    cross[(a, b)] += w * sizes[ia] * sizes[ib]

    means = {g: sum((k * p for k, p in counts[g].items()), Fraction(0)) for g in group_list}
    covariances = {(a, b): c - means[a] * means[b] for (a, b), c in cross.items()}
    mgf = {}
    for alpha in alphas:
        for g in group_list:
            mgf[(g, float(alpha))] = sum(float(p) * math.exp(float(alpha) * k) for k, p in counts[g].items())

    logger.debug(f"Statistics over {seen} realizations, {len(group_list)} groups")
    return SelectionStatistics(
        marginals=tuple(marginals),
        joint=joint,
        group_means=means,
        covariances=covariances,
        count_distributions={g: dict(sorted(d.items())) for g, d in counts.items()},
        mgf=mgf,
        realizations=seen,
    )


__all__ = ['SelectionStatistics', 'exact_statistics', 'mgf_bound']
