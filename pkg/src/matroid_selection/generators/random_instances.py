"""
Random Instance Generators
Seeded left-to-right laminar and graphic instances for property corpora
"""
from fractions import Fraction
from typing import List, Optional, Set, Tuple

import numpy as np

from ..core.errors import ParameterError
from ..core.model import Bin, GraphicGround, Instance, LaminarFamily, ValueDistribution
from ..utils.logger import get_generator_logger

logger = get_generator_logger()

MAX_VALUE = 10
MAX_WEIGHT = 4
MAX_PIECES = 3


def random_distribution(rng: np.random.Generator, atoms_per_element: int) -> ValueDistribution:
    """Distinct small integer values with rational probabilities"""
    count = 1 if atoms_per_element < 2 else int(rng.integers(2, atoms_per_element + 1))
    values = sorted(int(x) for x in rng.choice(MAX_VALUE + 1, size=count, replace=False))
    weights = [int(w) for w in rng.integers(1, MAX_WEIGHT + 1, size=count)]
    total = sum(weights)
    return ValueDistribution.of([(v, Fraction(w, total)) for v, w in zip(values, weights)])


def random_left_to_right(n: int, max_depth: int, max_cap: int, atoms_per_element: int,
                         seed: int, root_capacity: Optional[int] = None) -> Instance:
    """
    Laminar instance whose bins are arrival intervals

    The interval [0, n) is cut recursively into up to three pieces per level
    for `max_depth` levels; each new interval becomes a bin with capacity in
    1..max_cap. Depth 1 yields a partition matroid.

    Args:
        n: Element count
        max_depth: Levels of interval splitting
        max_cap: Largest bin capacity
        atoms_per_element: Largest support size of a value distribution
        seed: RNG seed; equal seeds give equal instances
        root_capacity: Also add the bin [0, n) with this capacity

    Returns:
        Left-to-right laminar Instance
    """
    if min(n, max_depth, max_cap, atoms_per_element) < 1:
        raise ParameterError("Generator parameters must be positive")
    rng = np.random.default_rng(seed)
    created: Set[Tuple[int, int]] = set()
    bins: List[Bin] = []

    def split(lo: int, hi: int, depth: int) -> None:
        if depth == 0:
            return
        pieces = int(rng.integers(1, min(MAX_PIECES, hi - lo) + 1))
        cuts = sorted(int(c) for c in rng.choice(np.arange(lo + 1, hi), size=pieces - 1, replace=False)) \
            if pieces > 1 else []
        bounds = [lo] + cuts + [hi]
        for a, b in zip(bounds, bounds[1:]):
            if (a, b) not in created:
                created.add((a, b))
                bins.append(Bin.of(range(a, b), int(rng.integers(1, max_cap + 1))))
            split(a, b, depth - 1)

    split(0, n, max_depth)
    if root_capacity is not None and (0, n) not in created:
        bins.insert(0, Bin.of(range(n), root_capacity))

    dists = tuple(random_distribution(rng, atoms_per_element) for _ in range(n))
    logger.debug(f"Random left-to-right instance seed={seed}: n={n}, {len(bins)} bins")
    return Instance(LaminarFamily(tuple(bins)), dists, f"ltr-seed{seed}")


def random_graphic(n: int, vertex_count: int, atoms_per_element: int, seed: int) -> Instance:
    """
    Random multigraph instance with n edges on `vertex_count` vertices

    Raises:
        ParameterError: If fewer than two vertices are requested
    """
    if vertex_count < 2 or n < 1:
        raise ParameterError("Need at least one edge and two vertices")
    rng = np.random.default_rng(seed)
    edges = []
    for _ in range(n):
        a, b = (int(x) for x in rng.choice(vertex_count, size=2, replace=False))
        edges.append((min(a, b), max(a, b)))
    dists = tuple(random_distribution(rng, atoms_per_element) for _ in range(n))
    logger.debug(f"Random graphic instance seed={seed}: {vertex_count} vertices, {n} edges")
    return Instance(GraphicGround.of(vertex_count, edges), dists, f"graphic-seed{seed}")


__all__ = ['random_distribution', 'random_left_to_right', 'random_graphic']
