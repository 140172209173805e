"""
Policy Extraction
Per-bin randomized online policies read off the LP, plus their exact evaluation
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from ..core.config import config
from ..core.errors import CorruptSolutionError, LPSolveError
from ..core.model import ValueDistribution
from ..policy.exact_policy import ExactPolicy
from ..policy.states import LaminarEncoder, LaminarState
from ..utils.logger import get_lp_logger
from .model import LPModel
from .solver import LPSolution
from .state_space import StateSpace, Vector

logger = get_lp_logger()

SNAP_TOL = 1e-9


@dataclass
class BinPolicy:
    """Acceptance probabilities X_t(s, v) / Y_t(s) for one maximal small bin"""
    bin_index: int
    space: StateSpace
    distributions: Tuple[ValueDistribution, ...]
    accept: Dict[Tuple[int, Vector, int], float]

    def accept_probability(self, position: int, state: Vector, atom: int) -> float:
        return self.accept.get((position, state, atom), 0.0)

    def next_state(self, position: int, state: Vector, select: bool) -> Vector:
        if not select:
            return state
        return tuple(x - y for x, y in zip(state, self.space.decrements[position]))

    def is_deterministic(self) -> bool:
        return all(p in (0.0, 1.0) for p in self.accept.values())

    def tracker(self) -> "BinPolicyTracker":
        return BinPolicyTracker(self)


class BinPolicyTracker:
    """Internal state of one bin policy during a run; advances on its own suggestions"""

    def __init__(self, policy: BinPolicy):
        self.policy = policy
        self.position = 0
        self.state = policy.space.initial
        self.suggested = 0

    def decide(self, atom: int, coin: float) -> bool:
        """Suggest the current element iff coin < acceptance probability"""
        p = self.policy.accept_probability(self.position, self.state, atom)
        take = coin < p
        self.state = self.policy.next_state(self.position, self.state, take)
        self.position += 1
        if take:
            self.suggested += 1
        return take


@dataclass
class ExtractedPolicy:
    """One BinPolicy per maximal small bin"""
    blocks: Dict[int, BinPolicy]
    owner: Dict[int, int] = field(default_factory=dict)

    def policy_for(self, element: int) -> BinPolicy:
        return self.blocks[self.owner[element]]


def extract_policy(model: LPModel, solution: LPSolution) -> ExtractedPolicy:
    """
    Read acceptance probabilities off an LP solution

    States with Y below the zero tolerance reject; selections that would
    leave the feasible state set are never suggested.

    Raises:
        CorruptSolutionError: If an allocation exceeds its state mass
    """
    zero = config.LP_ZERO_TOL
    blocks = {}
    owner = {}
    for b, layout in model.blocks.items():
        space = layout.space
        accept: Dict[Tuple[int, Vector, int], float] = {}
        for (j, s, a), col in layout.x.items():
            y = solution.value(layout.y[(j, s)])
            x = solution.value(col)
            if x > y + config.LP_VERIFY_TOL or x < -config.LP_VERIFY_TOL:
                raise CorruptSolutionError(
                    f"Allocation {x:.3e} outside [0, Y={y:.3e}] at bin {b}, t={j}, state {s}")
            if y < zero or not StateSpace.is_feasible(
                    tuple(u - d for u, d in zip(s, space.decrements[j]))):
                continue
            p = min(max(x / y, 0.0), 1.0)
            if p < SNAP_TOL:
                continue
            accept[(j, s, a)] = 1.0 if p > 1.0 - SNAP_TOL else p
        blocks[b] = BinPolicy(b, space, layout.distributions, accept)
        for e in space.elements:
            owner[e] = b
    logger.info(f"Extracted {len(blocks)} bin policies")
    return ExtractedPolicy(blocks, owner)


@dataclass
class BlockEnumeration:
    """Exact outcome distribution of one bin policy run in isolation"""
    expected_gain: float
    expected_count: float
    select_probability: Dict[Tuple[int, int], float]
    count_distribution: Dict[int, float]


def enumerate_block(policy: BinPolicy) -> BlockEnumeration:
    """Forward propagation of (state, count) mass through the bin's elements"""
    mass: Dict[Tuple[Vector, int], float] = {(policy.space.initial, 0): 1.0}
    gain = 0.0
    select: Dict[Tuple[int, int], float] = {}
    for j, dist in enumerate(policy.distributions):
        nxt: Dict[Tuple[Vector, int], float] = {}
        for (s, k), w in mass.items():
            for a, atom in enumerate(dist.atoms):
                p = float(atom.prob)
                q = policy.accept_probability(j, s, a)
                if q > 0.0:
                    key = (policy.next_state(j, s, True), k + 1)
                    nxt[key] = nxt.get(key, 0.0) + w * p * q
                    gain += w * p * q * float(atom.value)
                    select[(j, a)] = select.get((j, a), 0.0) + w * q
                if q < 1.0:
                    nxt[(s, k)] = nxt.get((s, k), 0.0) + w * p * (1.0 - q)
        mass = nxt
    counts: Dict[int, float] = {}
    for (_, k), w in mass.items():
        counts[k] = counts.get(k, 0.0) + w
    expected = sum(k * w for k, w in counts.items())
    return BlockEnumeration(gain, expected, select, dict(sorted(counts.items())))


def lambda_star(model: LPModel, solution: LPSolution, bin_index: int) -> Fraction:
    """
    Dual price of the bin's ex-ante row

    Raises:
        LPSolveError: If the solution carries no duals
    """
    if solution.eq_duals is None:
        raise LPSolveError("Solution has no dual values")
    dual = float(solution.eq_duals[model.blocks[bin_index].exante_row])
    return Fraction(max(dual, 0.0)).limit_denominator(10 ** 6)


@dataclass
class ShiftCheck:
    """Block gain minus lambda times block count against the shifted exact optimum"""
    lam: Fraction
    block_gain: float
    block_count: float
    shifted_opt: float
    gap: float
    decisions_checked: int
    mismatches: int

    def to_dict(self) -> Dict:
        return {"lambda": str(self.lam), "block_gain": self.block_gain,
                "block_count": self.block_count, "shifted_opt": self.shifted_opt,
                "gap": self.gap, "decisions_checked": self.decisions_checked,
                "mismatches": self.mismatches}


def shift_check(model: LPModel, solution: LPSolution, policy: ExtractedPolicy,
                bin_index: int, lam: Optional[Fraction] = None,
                margin: float = 1e-6) -> ShiftCheck:
    """
    Compare a bin's LP policy with the exact policy for values shifted by lambda

    Decisions are compared at states of positive mass where the shifted value
    is clear of the threshold by `margin`.
    """
    lam = lambda_star(model, solution, bin_index) if lam is None else Fraction(lam)
    layout = model.blocks[bin_index]
    space = layout.space
    local = model.instance.restricted_to(bin_index).shifted(lam)
    exact = ExactPolicy(local)
    encoder = exact.encoder
    assert isinstance(encoder, LaminarEncoder)

    gain = solution.block_objective(layout)
    count = solution.block_count(layout)
    shifted_opt = float(exact.optimal_value())

    checked = mismatched = 0
    bin_policy = policy.blocks[bin_index]
    for j in range(len(space.elements)):
        for s in space.reachable_at[j]:
            if solution.value(layout.y[(j, s)]) <= 1e-7:
                continue
            state = LaminarState(tuple((k, s[k]) for k in encoder.active[j]))
            thr = exact.threshold(j, state)
            for a, atom in enumerate(local.distributions[j].atoms):
                q = bin_policy.accept_probability(j, s, a)
                diff = float(atom.value) - float(thr)
                if diff > margin:
                    checked += 1
                    mismatched += q < 1.0 - 1e-6
                elif diff < -margin:
                    checked += 1
                    mismatched += q > 1e-6
    return ShiftCheck(lam, gain, count, shifted_opt,
                      abs(gain - float(lam) * count - shifted_opt), checked, mismatched)


__all__ = [
    'BinPolicy',
    'BinPolicyTracker',
    'ExtractedPolicy',
    'extract_policy',
    'BlockEnumeration',
    'enumerate_block',
    'lambda_star',
    'ShiftCheck',
    'shift_check',
]
