"""
Canonical Policy States
Residual capacities of active bins (laminar) or a vertex partition (graphic)
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Set, Tuple, Union

from ..core.errors import InfeasibleStateError
from ..core.model import Instance
from ..utils.union_find import UnionFind


@dataclass(frozen=True)
class LaminarState:
    """(bin index, remaining capacity) for every active bin, sorted by bin index"""
    residual: Tuple[Tuple[int, int], ...]

    def to_dict(self) -> Dict[str, int]:
        return {str(b): r for b, r in self.residual}


@dataclass(frozen=True)
class GraphicState:
    """Blocks of vertices connected by the selected forest, restricted to future vertices"""
    partition: Tuple[Tuple[int, ...], ...]

    def to_dict(self) -> List[List[int]]:
        return [list(block) for block in self.partition]


PolicyState = Union[LaminarState, GraphicState]


class LaminarEncoder:
    """
    State transitions for laminar instances

    A bin is active at time t when some member arrived before t and some
    member arrives at t or later; only active bins carry a coordinate.
    """

    def __init__(self, instance: Instance):
        family = instance.laminar()
        self.n = instance.n
        self.capacity = [b.capacity for b in family.bins]
        spans = [(min(b.members), max(b.members)) if b.members else (0, -1) for b in family.bins]
        self.first = [s[0] for s in spans]
        self.last = [s[1] for s in spans]
        self.containing = [tuple(i for i, b in enumerate(family.bins) if t in b.members)
                           for t in range(self.n)]
        self.members = [b.members for b in family.bins]
        self.active = [tuple(i for i in range(len(family.bins)) if self.first[i] < t <= self.last[i])
                       for t in range(self.n + 1)]

    def initial(self) -> LaminarState:
        return LaminarState(())

    def feasible(self, t: int, state: LaminarState) -> bool:
        residual = dict(state.residual)
        return all(residual.get(b, self.capacity[b]) >= 1 for b in self.containing[t])

    def advance(self, t: int, state: LaminarState, select: bool) -> LaminarState:
        residual = dict(state.residual)
        nxt = []
        for b in self.active[t + 1]:
            r = residual.get(b, self.capacity[b])
            if select and t in self.members[b]:
                r -= 1
            nxt.append((b, r))
        return LaminarState(tuple(nxt))

    def from_selection(self, t: int, selected: Iterable[int]) -> LaminarState:
        chosen = set(selected)
        if any(e >= t or e < 0 for e in chosen):
            raise InfeasibleStateError(f"Selection {sorted(chosen)} not a subset of the first {t} elements")
        for b, cap in enumerate(self.capacity):
            if len(chosen & self.members[b]) > cap:
                raise InfeasibleStateError(f"Selection exceeds capacity of bin {b}")
        return LaminarState(tuple((b, self.capacity[b] - len(chosen & self.members[b]))
                                  for b in self.active[t]))

    def check(self, t: int, state: PolicyState) -> None:
        if not isinstance(state, LaminarState):
            raise InfeasibleStateError("Laminar instance needs a LaminarState")
        keys = tuple(b for b, _ in state.residual)
        if keys != self.active[t]:
            raise InfeasibleStateError(f"State bins {keys} differ from active bins {self.active[t]} at t={t}")
        for b, r in state.residual:
            if not 0 <= r <= self.capacity[b]:
                raise InfeasibleStateError(f"Residual {r} of bin {b} outside [0, {self.capacity[b]}]")


class GraphicEncoder:
    """
    State transitions for graphic instances

    Only vertices touched by edges still to arrive are kept; singleton
    blocks are dropped.
    """

    def __init__(self, instance: Instance):
        graph = instance.graphic()
        self.n = instance.n
        self.vertex_count = graph.vertex_count
        self.edges = graph.edges
        future: List[Set[int]] = [set() for _ in range(self.n + 1)]
        for t in range(self.n - 1, -1, -1):
            future[t] = future[t + 1] | set(self.edges[t])
        self.future = future

    @staticmethod
    def _canonical(blocks: Iterable[Iterable[int]], keep: Set[int]) -> GraphicState:
        kept = []
        for block in blocks:
            block = sorted(v for v in block if v in keep)
            if len(block) >= 2:
                kept.append(tuple(block))
        kept.sort()
        return GraphicState(tuple(kept))

    def initial(self) -> GraphicState:
        return GraphicState(())

    @staticmethod
    def _block_of(state: GraphicState, vertex: int) -> int:
        for i, block in enumerate(state.partition):
            if vertex in block:
                return i
        return -1

    def feasible(self, t: int, state: GraphicState) -> bool:
        a, b = self.edges[t]
        if a == b:
            return False
        ia = self._block_of(state, a)
        return ia < 0 or ia != self._block_of(state, b)

    def advance(self, t: int, state: GraphicState, select: bool) -> GraphicState:
        blocks = [set(block) for block in state.partition]
        if select:
            a, b = self.edges[t]
            ia, ib = self._block_of(state, a), self._block_of(state, b)
            merged = {a, b}
            if ia >= 0:
                merged |= blocks[ia]
            if ib >= 0:
                merged |= blocks[ib]
            blocks = [blk for i, blk in enumerate(blocks) if i not in (ia, ib)]
            blocks.append(merged)
        return self._canonical(blocks, self.future[t + 1])

    def from_selection(self, t: int, selected: Iterable[int]) -> GraphicState:
        forest = UnionFind()
        for e in sorted(set(selected)):
            if not 0 <= e < t:
                raise InfeasibleStateError(f"Edge {e} has not arrived before t={t}")
            if not forest.union(*self.edges[e]):
                raise InfeasibleStateError(f"Selection closes a cycle at edge {e}")
        return self._canonical(forest.components(), self.future[t])

    def check(self, t: int, state: PolicyState) -> None:
        if not isinstance(state, GraphicState):
            raise InfeasibleStateError("Graphic instance needs a GraphicState")
        seen: Set[int] = set()
        for block in state.partition:
            for v in block:
                if not 0 <= v < self.vertex_count or v in seen:
                    raise InfeasibleStateError(f"Vertex {v} out of range or in two blocks")
                seen.add(v)


StateEncoder = Union[LaminarEncoder, GraphicEncoder]


def encoder_for(instance: Instance) -> StateEncoder:
    """Pick the state encoder matching the instance ground"""
    return LaminarEncoder(instance) if instance.is_laminar else GraphicEncoder(instance)


__all__ = [
    'LaminarState',
    'GraphicState',
    'PolicyState',
    'LaminarEncoder',
    'GraphicEncoder',
    'StateEncoder',
    'encoder_for',
]
