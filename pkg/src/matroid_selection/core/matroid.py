"""
Matroid Oracles
Independence checks and arrival-order predicates for laminar and graphic grounds
"""
from typing import Iterable

from .errors import ElementIndexError, WrongGroundError
from .model import Instance, LaminarFamily
from ..utils.union_find import UnionFind


def is_independent(instance: Instance, selected: Iterable[int]) -> bool:
    """
    Decide whether a set of elements is independent

    Args:
        instance: Laminar or graphic instance
        selected: Element indices

    Returns:
        True iff every bin count holds (laminar) or the edges form a forest (graphic)

    Raises:
        ElementIndexError: If an index is outside the ground set
    """
    chosen = set(selected)
    for e in chosen:
        instance.check_element(e)

    if instance.is_laminar:
        return all(len(chosen & b.members) <= b.capacity for b in instance.laminar().bins)

    edges = instance.graphic().edges
    forest = UnionFind()
    return all(forest.union(*edges[e]) for e in sorted(chosen))


def _contiguous(members) -> bool:
    members = list(members)
    return not members or max(members) - min(members) + 1 == len(members)


def is_left_to_right(instance: Instance) -> bool:
    """
    True iff every bin's members form a contiguous block of arrival indices

    Raises:
        WrongGroundError: On a graphic instance
    """
    family = instance.laminar()
    return all(_contiguous(b.members) for b in family.bins)


def bin_depth(family: LaminarFamily, bin_index: int) -> int:
    """
    Number of bins containing the bin, the bin itself included

    Raises:
        ElementIndexError: If the bin is not in the family
    """
    if not 0 <= bin_index < len(family.bins):
        raise ElementIndexError(f"Bin {bin_index} not in family of {len(family.bins)} bins")
    members = family.bins[bin_index].members
    return sum(1 for b in family.bins if members <= b.members)


def is_left_to_right_bin(instance: Instance, bin_index: int) -> bool:
    """True iff the instance restricted to this bin is left-to-right"""
    family = instance.laminar()
    outer = family.bins[bin_index].members
    position = {e: i for i, e in enumerate(sorted(outer))}
    for b in family.bins:
        if b.members <= outer and not _contiguous([position[e] for e in b.members]):
            return False
    return True


def non_left_to_right_load(instance: Instance) -> int:
    """
    Largest number of non-left-to-right bins containing a single element

    Zero on left-to-right instances.
    """
    family = instance.laminar()
    bad = [i for i in range(len(family.bins)) if not is_left_to_right_bin(instance, i)]
    load = 0
    for e in range(instance.n):
        load = max(load, sum(1 for i in bad if e in family.bins[i].members))
    return load


def max_depth(family: LaminarFamily) -> int:
    """Largest bin depth in the family (0 if empty)"""
    return max((bin_depth(family, i) for i in range(len(family.bins))), default=0)


__all__ = [
    'is_independent',
    'is_left_to_right',
    'bin_depth',
    'is_left_to_right_bin',
    'non_left_to_right_load',
    'max_depth',
    'WrongGroundError',
    'ElementIndexError',
]
