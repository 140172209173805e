"""
Domain Models for Matroid Bayesian Online Selection
Immutable instance types: value distributions, laminar bins, graphic grounds
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import ElementIndexError, WrongGroundError


@dataclass(frozen=True)
class Atom:
    """A single realizable value and its probability mass"""
    value: Fraction
    prob: Fraction

    def to_dict(self) -> Dict[str, str]:
        return {"value": f"{self.value.numerator}/{self.value.denominator}",
                "prob": f"{self.prob.numerator}/{self.prob.denominator}"}


@dataclass(frozen=True)
class ValueDistribution:
    """
    Finite distribution of an element's value

    `exact` is False when the distribution was read from floats; mass is then
    checked within config.PROB_TOL instead of exactly.
    """
    atoms: Tuple[Atom, ...]
    exact: bool = True

    @classmethod
    def of(cls, pairs: Iterable[Tuple[Any, Any]], exact: bool = True) -> "ValueDistribution":
        """
        Build from (value, prob) pairs, dropping zero-probability atoms

        Atoms are stored in ascending value order.
        """
        atoms = [Atom(Fraction(v), Fraction(p)) for v, p in pairs if Fraction(p) != 0]
        atoms.sort(key=lambda a: a.value)
        return cls(tuple(atoms), exact)

    @classmethod
    def point(cls, value: Any) -> "ValueDistribution":
        """Deterministic value"""
        return cls.of([(value, 1)])

    @classmethod
    def two_point(cls, value: Any, prob: Any) -> "ValueDistribution":
        """`value` with probability `prob`, else 0"""
        prob = Fraction(prob)
        return cls.of([(0, 1 - prob), (value, prob)])

    @property
    def values(self) -> Tuple[Fraction, ...]:
        return tuple(a.value for a in self.atoms)

    @property
    def mass(self) -> Fraction:
        return sum((a.prob for a in self.atoms), Fraction(0))

    def mean(self) -> Fraction:
        return sum((a.value * a.prob for a in self.atoms), Fraction(0))

    def index_of(self, value: Fraction) -> Optional[int]:
        """Atom index of a realized value, or None"""
        for i, atom in enumerate(self.atoms):
            if atom.value == value:
                return i
        return None

    def to_dict(self) -> List[Dict[str, str]]:
        return [a.to_dict() for a in self.atoms]


@dataclass(frozen=True)
class Bin:
    """A laminar set with its capacity"""
    members: FrozenSet[int]
    capacity: int

    @classmethod
    def of(cls, members: Iterable[int], capacity: int) -> "Bin":
        return cls(frozenset(int(m) for m in members), int(capacity))

    def __len__(self) -> int:
        return len(self.members)

    def to_dict(self) -> Dict[str, Any]:
        return {"members": sorted(self.members), "capacity": self.capacity}


@dataclass(frozen=True)
class LaminarFamily:
    """Bins of a laminar matroid; a bin is addressed by its position in `bins`"""
    bins: Tuple[Bin, ...]

    @classmethod
    def of(cls, bins: Iterable[Union[Bin, Tuple[Iterable[int], int]]]) -> "LaminarFamily":
        built = []
        for b in bins:
            built.append(b if isinstance(b, Bin) else Bin.of(b[0], b[1]))
        return cls(tuple(built))

    def __len__(self) -> int:
        return len(self.bins)

    def containing(self, element: int) -> Tuple[int, ...]:
        """Indices of bins that contain an element"""
        return tuple(i for i, b in enumerate(self.bins) if element in b.members)

    def ancestors(self, index: int) -> Tuple[int, ...]:
        """Indices of bins strictly containing bin `index`"""
        members = self.bins[index].members
        return tuple(i for i, b in enumerate(self.bins)
                     if i != index and members < b.members)

    def descendants(self, index: int) -> Tuple[int, ...]:
        """Indices of bins strictly inside bin `index`"""
        members = self.bins[index].members
        return tuple(i for i, b in enumerate(self.bins)
                     if i != index and b.members < members)

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "laminar", "bins": [b.to_dict() for b in self.bins]}


@dataclass(frozen=True)
class GraphicGround:
    """Graph whose edges are the elements, in arrival order"""
    vertex_count: int
    edges: Tuple[Tuple[int, int], ...]

    @classmethod
    def of(cls, vertex_count: int, edges: Iterable[Sequence[int]]) -> "GraphicGround":
        return cls(int(vertex_count), tuple((int(a), int(b)) for a, b in edges))

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "graphic", "vertices": self.vertex_count,
                "edges": [list(e) for e in self.edges]}


Ground = Union[LaminarFamily, GraphicGround]


@dataclass(frozen=True)
class Instance:
    """Arrival-ordered elements with value distributions over a matroid ground"""
    ground: Ground
    distributions: Tuple[ValueDistribution, ...]
    name: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return len(self.distributions)

    @property
    def is_laminar(self) -> bool:
        return isinstance(self.ground, LaminarFamily)

    @property
    def is_graphic(self) -> bool:
        return isinstance(self.ground, GraphicGround)

    def laminar(self) -> LaminarFamily:
        """The laminar family, or WrongGroundError"""
        if not isinstance(self.ground, LaminarFamily):
            raise WrongGroundError("Operation requires a laminar instance")
        return self.ground

    def graphic(self) -> GraphicGround:
        """The graph, or WrongGroundError"""
        if not isinstance(self.ground, GraphicGround):
            raise WrongGroundError("Operation requires a graphic instance")
        return self.ground

    def check_element(self, element: int) -> None:
        if not 0 <= element < self.n:
            raise ElementIndexError(f"Element index {element} outside 0..{self.n - 1}")

    def with_ground(self, ground: Ground) -> "Instance":
        return Instance(ground, self.distributions, self.name)

    def with_distributions(self, distributions: Sequence[ValueDistribution]) -> "Instance":
        return Instance(self.ground, tuple(distributions), self.name)

    def dispersed(self, eta: Union[Fraction, float]) -> "Instance":
        """
        Perturb atom i of element t (both 1-based) by i * eta * 2^-t

        Distinct elements and atoms get distinct shifts, so value ties vanish.
        """
        eta = Fraction(eta)
        dists = []
        for t, dist in enumerate(self.distributions, start=1):
            shift = eta / (2 ** t)
            dists.append(ValueDistribution(
                tuple(Atom(a.value + i * shift, a.prob) for i, a in enumerate(dist.atoms, start=1)),
                dist.exact,
            ))
        return self.with_distributions(dists)

    def shifted(self, delta: Union[Fraction, float]) -> "Instance":
        """Subtract `delta` from every atom value (values may go negative)"""
        delta = Fraction(delta)
        return self.with_distributions([
            ValueDistribution(tuple(Atom(a.value - delta, a.prob) for a in d.atoms), d.exact)
            for d in self.distributions
        ])

    def restricted_to(self, bin_index: int) -> "Instance":
        """
        Sub-instance on the members of one bin

        Elements are renumbered in arrival order; only bins inside the chosen
        bin (itself included) are kept.
        """
        family = self.laminar()
        members = sorted(family.bins[bin_index].members)
        local = {e: i for i, e in enumerate(members)}
        outer = family.bins[bin_index].members
        bins = [Bin.of((local[e] for e in b.members), b.capacity)
                for b in family.bins if b.members <= outer]
        return Instance(LaminarFamily(tuple(bins)),
                        tuple(self.distributions[e] for e in members),
                        f"{self.name}[bin {bin_index}]" if self.name else "")

    def to_dict(self) -> Dict[str, Any]:
        return {"matroid": self.ground.to_dict(),
                "distributions": [d.to_dict() for d in self.distributions]}


__all__ = [
    'Atom',
    'ValueDistribution',
    'Bin',
    'LaminarFamily',
    'GraphicGround',
    'Ground',
    'Instance',
]
