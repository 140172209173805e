"""
Anti-Concentration Instances
Laminar instances whose optimal selection count is split between 0 and the rank
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from ..core.errors import ParameterError
from ..core.model import Bin, Instance, LaminarFamily, ValueDistribution
from ..utils.logger import get_generator_logger

logger = get_generator_logger()


@dataclass(frozen=True)
class LevelRecord:
    """Parameters of one construction round"""
    level: int
    alpha: Fraction
    delta: Fraction
    first_element: int
    element_count: int

    def to_dict(self) -> Dict[str, str]:
        return {"level": self.level, "alpha": str(self.alpha), "delta": str(self.delta),
                "first_element": self.first_element, "element_count": self.element_count}


def level_parameters(r: int, k: int) -> List[LevelRecord]:
    """alpha_i and Delta_i for every round i = 1..r"""
    v = Fraction(10) ** (1 + 2 * k)
    p = Fraction(1, 10 ** (1 + k))
    records = [LevelRecord(1, Fraction(1), Fraction(1), 0, 1)]
    n_prev = 1
    for i in range(2, r + 1):
        alpha = records[-1].delta / (10 * (r + 1) ** 2 * v)
        delta = alpha * v * p ** i * (1 - p)
        records.append(LevelRecord(i, alpha, delta, n_prev, i + 2))
        n_prev += i + 2
    return records


def produce_anticoncentration(r: int, k: int) -> Instance:
    """
    Build the rank-r anti-concentration instance

    Round i adds i + 2 elements after U_{i-1}: one deterministic element worth
    alpha_i * v' + Delta_i / 2, then i - 1 elements worth alpha_i * v' and two
    elements worth alpha_i * v, each of these with probability p. The bin
    U_{i-1} is replaced by U_{i-1} + {second to last new element} with capacity
    i - 1; U_i gets capacity i and the first and last new elements share a
    capacity-1 bin.

    Args:
        r: Rank, at least 1
        k: Precision exponent, at least 1

    Returns:
        Laminar Instance with exact rational values
    """
    if r < 1 or k < 1:
        raise ParameterError(f"r and k must be positive, got r={r}, k={k}")

    v = Fraction(10) ** (1 + 2 * k)
    v_small = Fraction(10) ** k
    p = Fraction(1, 10 ** (1 + k))

    dists: List[ValueDistribution] = [ValueDistribution.two_point(1, Fraction(1, 2))]
    bins: List[Tuple[frozenset, int]] = [(frozenset({0}), 1)]
    previous = frozenset({0})

    for record in level_parameters(r, k)[1:]:
        i, alpha, delta = record.level, record.alpha, record.delta
        start = record.first_element
        new = list(range(start, start + i + 2))

        dists.append(ValueDistribution.point(alpha * v_small + delta / 2))
        for _ in range(i - 1):
            dists.append(ValueDistribution.two_point(alpha * v_small, p))
        dists.append(ValueDistribution.two_point(alpha * v, p))
        dists.append(ValueDistribution.two_point(alpha * v, p))

        bins = [b for b in bins if b[0] != previous]
        bins.append((previous | {new[-2]}, i - 1))
        current = previous | frozenset(new)
        bins.append((current, i))
        bins.append((frozenset({new[0], new[-1]}), 1))
        previous = current

    family = LaminarFamily(tuple(Bin(members, cap) for members, cap in bins))
    logger.info(f"Anti-concentration instance r={r}, k={k}: {len(dists)} elements, {len(family)} bins")
    return Instance(family, tuple(dists), f"anticoncentration-r{r}-k{k}")


__all__ = ['LevelRecord', 'level_parameters', 'produce_anticoncentration']
