"""
Per-Bin State Space
Capacity vectors over the bins inside a small bin, reachable by feasible selection prefixes
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple

from ..core.config import config
from ..core.errors import ResourceBudgetError
from ..core.model import Bin, Instance
from ..utils.logger import get_lp_logger

logger = get_lp_logger()

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class StateSpace:
    """
    States of one small bin B

    Position j means "elements[0..j-1] of B have arrived"; `reachable_at[j]`
    holds the feasible vectors at position j and `boundary_at[j]` the vectors
    one infeasible selection away from position j-1.
    """
    bin_index: int
    bin: Bin
    coords: Tuple[int, ...]
    elements: Tuple[int, ...]
    decrements: Tuple[Vector, ...]
    initial: Vector
    reachable_at: Tuple[FrozenSet[Vector], ...]
    boundary_at: Tuple[FrozenSet[Vector], ...]

    @property
    def states(self) -> Tuple[Vector, ...]:
        out = set()
        for layer in self.reachable_at:
            out |= layer
        return tuple(sorted(out, reverse=True))

    @property
    def boundary(self) -> Tuple[Vector, ...]:
        out = set()
        for layer in self.boundary_at:
            out |= layer
        return tuple(sorted(out, reverse=True))

    def position(self, element: int) -> int:
        return self.elements.index(element)

    @staticmethod
    def is_feasible(vector: Vector) -> bool:
        return all(x >= 0 for x in vector)

    def to_dict(self) -> Dict:
        return {"bin": self.bin_index, "coords": list(self.coords),
                "elements": list(self.elements),
                "states": [list(s) for s in self.states],
                "boundary": [list(s) for s in self.boundary]}


def build_state_space(instance: Instance, small_bin: int, cap: Optional[int] = None) -> StateSpace:
    """
    Breadth-first closure of capacity vectors under the element decrements

    Args:
        instance: Laminar instance (M'' in the pipeline)
        small_bin: Index of the bin in the instance family
        cap: Maximum number of distinct states

    Returns:
        StateSpace

    Raises:
        ResourceBudgetError: If the state count exceeds the cap
    """
    cap = cap or config.MAX_BIN_STATES
    family = instance.laminar()
    outer = family.bins[small_bin]
    coords = tuple(i for i, b in enumerate(family.bins) if b.members <= outer.members)
    elements = tuple(sorted(outer.members))
    decrements = tuple(tuple(1 if e in family.bins[c].members else 0 for c in coords) for e in elements)
    initial = tuple(family.bins[c].capacity for c in coords)

    reachable = [frozenset({initial})]
    boundary = [frozenset()]
    seen = {initial}
    for d in decrements:
        current = reachable[-1]
        nxt = set(current)
        edge = set()
        for s in current:
            moved = tuple(x - y for x, y in zip(s, d))
            if StateSpace.is_feasible(moved):
                nxt.add(moved)
                seen.add(moved)
            else:
                edge.add(moved)
        if len(seen) > cap:
            raise ResourceBudgetError(f"Bin {small_bin} has more than {cap} states",
                                      state_count=len(seen), limit=cap)
        reachable.append(frozenset(nxt))
        boundary.append(frozenset(edge))

    space = StateSpace(small_bin, outer, coords, elements, decrements, initial,
                       tuple(reachable), tuple(boundary))
    logger.debug(f"Bin {small_bin}: {len(space.states)} states, {len(space.boundary)} boundary")
    return space


__all__ = ['Vector', 'StateSpace', 'build_state_space']
