"""
Exact Optimal Online Policy
Backward induction over canonical states in exact rational arithmetic
"""
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from ..core.config import config
from ..core.errors import (InconsistentRealizationError, InfeasibleStateError,
                           ParameterError, ResourceBudgetError, WrongGroundError)
from ..core.matroid import is_left_to_right
from ..core.model import Instance
from ..utils.logger import get_policy_logger
from .states import PolicyState, encoder_for

logger = get_policy_logger()

ZERO = Fraction(0)
INFINITY = math.inf

Threshold = Union[Fraction, float]


@dataclass(frozen=True)
class Realization:
    """Realized value of every element and the probability of that joint outcome"""
    values: Tuple[Fraction, ...]
    weight: Fraction = Fraction(1)

    @classmethod
    def of(cls, values: Iterable, weight=1) -> "Realization":
        return cls(tuple(Fraction(v) for v in values), Fraction(weight))


@dataclass(frozen=True)
class SelectionTrace:
    """Elements selected on one realization and the collected gain"""
    selected: FrozenSet[int]
    gain: Fraction

    def to_dict(self) -> Dict:
        return {"selected": sorted(self.selected), "gain": str(self.gain)}


class ValueTable:
    """Memo of D_t(state): expected gain collectable from time t onwards"""

    def __init__(self, limit: int):
        self.limit = limit
        self._memo: Dict[Tuple[int, PolicyState], Fraction] = {}

    def get(self, t: int, state: PolicyState) -> Optional[Fraction]:
        return self._memo.get((t, state))

    def put(self, t: int, state: PolicyState, value: Fraction) -> None:
        if len(self._memo) >= self.limit:
            logger.error(f"State budget exhausted at {len(self._memo)} states")
            raise ResourceBudgetError(
                f"Exact policy needs more than {self.limit} states "
                f"({len(self._memo)} stored before giving up)",
                state_count=len(self._memo), limit=self.limit,
            )
        self._memo[(t, state)] = value

    def __len__(self) -> int:
        return len(self._memo)

    def items(self):
        return self._memo.items()


class ExactPolicy:
    """
    Optimal online policy of one instance

    Selects u_t iff the realized value is at least the threshold
    D_{t+1}(S) - D_{t+1}(S + u_t); ties are accepted.
    """

    def __init__(self, instance: Instance, max_states: Optional[int] = None):
        self.instance = instance
        self.encoder = encoder_for(instance)
        self.table = ValueTable(max_states or config.MAX_DP_STATES)
        self.n = instance.n

    # ------------------------------------------------------------------
    # Values and thresholds
    # ------------------------------------------------------------------
    def _successors(self, t: int, state: PolicyState) -> List[PolicyState]:
        succ = [self.encoder.advance(t, state, False)]
        if self.encoder.feasible(t, state):
            succ.append(self.encoder.advance(t, state, True))
        return succ

    def _lookup(self, t: int, state: PolicyState) -> Optional[Fraction]:
        return ZERO if t >= self.n else self.table.get(t, state)

    def value(self, t: int, state: PolicyState) -> Fraction:
        """
        D_t(state); D_n is identically zero

        Evaluated with an explicit stack; depth does not grow with n.
        """
        cached = self._lookup(t, state)
        if cached is not None:
            return cached

        stack = [(t, state)]
        while stack:
            u, s = stack[-1]
            if self.table.get(u, s) is not None:
                stack.pop()
                continue
            succ = self._successors(u, s)
            missing = [(u + 1, c) for c in succ if self._lookup(u + 1, c) is None]
            if missing:
                stack.extend(missing)
                continue
            stack.pop()
            skip = self._lookup(u + 1, succ[0])
            if len(succ) == 2:
                take = self._lookup(u + 1, succ[1])
                result = sum((a.prob * max(skip, take + a.value)
                              for a in self.instance.distributions[u].atoms), ZERO)
            else:
                result = skip
            self.table.put(u, s, result)
        return self.table.get(t, state)

    def optimal_value(self) -> Fraction:
        """Expected gain of the optimal online policy"""
        result = self.value(0, self.encoder.initial())
        logger.debug(f"Optimal value {result} over {len(self.table)} states")
        return result

    def threshold(self, t: int, state: PolicyState) -> Threshold:
        """
        Acceptance threshold of element t in a given state

        Returns:
            D_{t+1}(S) - D_{t+1}(S + u_t), or INFINITY when u_t cannot be added

        Raises:
            InfeasibleStateError: If the state is malformed for time t
        """
        self.instance.check_element(t)
        self.encoder.check(t, state)
        if not self.encoder.feasible(t, state):
            return INFINITY
        skip = self.value(t + 1, self.encoder.advance(t, state, False))
        take = self.value(t + 1, self.encoder.advance(t, state, True))
        return skip - take

    def state_after(self, t: int, selected: Iterable[int]) -> PolicyState:
        """Canonical state at time t after selecting `selected` among the first t elements"""
        return self.encoder.from_selection(t, selected)

    # ------------------------------------------------------------------
    # Replay
    # ------------------------------------------------------------------
    def _check_values(self, values: Sequence[Fraction]) -> None:
        if len(values) != self.n:
            raise InconsistentRealizationError(f"{len(values)} values for {self.n} elements")
        for t, v in enumerate(values):
            if self.instance.distributions[t].index_of(v) is None:
                raise InconsistentRealizationError(f"Value {v} is not an atom of element {t}")

    def run_from(self, start: int, state: PolicyState, values: Sequence[Fraction]) -> List[int]:
        """Elements selected from time `start` on, given the state at `start`"""
        selected = []
        for t in range(start, self.n):
            take = False
            if self.encoder.feasible(t, state):
                take = values[t] >= self.threshold(t, state)
            if take:
                selected.append(t)
            state = self.encoder.advance(t, state, take)
        return selected

    def replay(self, realization: Realization) -> SelectionTrace:
        """
        Trace of the optimal policy on one realization

        Raises:
            InconsistentRealizationError: If a value is not an atom of its element
        """
        self._check_values(realization.values)
        selected = self.run_from(0, self.encoder.initial(), realization.values)
        return SelectionTrace(frozenset(selected), sum((realization.values[t] for t in selected), ZERO))

    def mu_shift(self, realization: Realization) -> Tuple[int, int]:
        """
        Counts selected among u_2..u_n starting from S = {} and from S = {u_1}

        Raises:
            WrongGroundError: On graphic instances
            ParameterError: If the instance is not left-to-right
            InfeasibleStateError: If u_1 alone is infeasible
        """
        if not self.instance.is_laminar:
            raise WrongGroundError("mu_shift requires a laminar instance")
        if not is_left_to_right(self.instance):
            raise ParameterError("mu_shift requires a left-to-right instance")
        if self.n == 0 or not self.encoder.feasible(0, self.encoder.initial()):
            raise InfeasibleStateError("Selecting the first element alone is infeasible")
        self._check_values(realization.values)
        mu0 = len(self.run_from(1, self.state_after(1, ()), realization.values))
        mu1 = len(self.run_from(1, self.state_after(1, (0,)), realization.values))
        return mu0, mu1


# ----------------------------------------------------------------------
# Realization enumeration
# ----------------------------------------------------------------------
def realization_count(instance: Instance) -> int:
    return math.prod(len(d.atoms) for d in instance.distributions)


def enumerate_realizations(instance: Instance, cap: Optional[int] = None) -> Iterator[Realization]:
    """
    Every joint outcome with its probability

    Raises:
        ResourceBudgetError: If the number of joint outcomes exceeds the cap
    """
    cap = cap or config.get_enumeration_cap()
    total = realization_count(instance)
    if total > cap:
        raise ResourceBudgetError(f"{total} joint realizations exceed the cap of {cap}",
                                  state_count=total, limit=cap)
    for combo in itertools.product(*(d.atoms for d in instance.distributions)):
        weight = Fraction(1)
        for atom in combo:
            weight *= atom.prob
        yield Realization(tuple(a.value for a in combo), weight)


def expected_gain_by_enumeration(instance: Instance, policy: Optional[ExactPolicy] = None,
                                 cap: Optional[int] = None) -> Fraction:
    """Sum over realizations of weight times replayed gain"""
    policy = policy or ExactPolicy(instance)
    return sum((r.weight * policy.replay(r).gain for r in enumerate_realizations(instance, cap)), ZERO)


# ----------------------------------------------------------------------
# Module-level operations
# ----------------------------------------------------------------------
def optimal_value(instance: Instance, max_states: Optional[int] = None) -> Fraction:
    """Exact expected gain of the optimal online policy"""
    return ExactPolicy(instance, max_states).optimal_value()


def threshold(instance: Instance, t: int, state: PolicyState,
              policy: Optional[ExactPolicy] = None) -> Threshold:
    """Acceptance threshold of element t in `state`"""
    return (policy or ExactPolicy(instance)).threshold(t, state)


def replay(instance: Instance, realization: Realization,
           policy: Optional[ExactPolicy] = None) -> SelectionTrace:
    """Deterministic optimal-policy trace on one realization"""
    return (policy or ExactPolicy(instance)).replay(realization)


def mu_shift(instance: Instance, realization: Realization,
             policy: Optional[ExactPolicy] = None) -> Tuple[int, int]:
    """(mu0, mu1) for one realization of a left-to-right instance"""
    return (policy or ExactPolicy(instance)).mu_shift(realization)


__all__ = [
    'INFINITY',
    'Realization',
    'SelectionTrace',
    'ValueTable',
    'ExactPolicy',
    'realization_count',
    'enumerate_realizations',
    'expected_gain_by_enumeration',
    'optimal_value',
    'threshold',
    'replay',
    'mu_shift',
]
