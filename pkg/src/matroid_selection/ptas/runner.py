"""
Online Runner
Executes the composed policy with M'-feasibility filtering, by sampling or exactly
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.config import config
from ..core.errors import InconsistentRealizationError, ParameterError, ResourceBudgetError
from ..policy.exact_policy import Realization
from ..utils.logger import get_runner_logger
from .orchestrator import PtasPolicy
from .rng import TrialStreams

logger = get_runner_logger()


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one online run"""
    gain: Fraction
    selected: FrozenSet[int]
    suggested: FrozenSet[int]
    discarded: FrozenSet[int]
    suggested_per_bin: Tuple[Tuple[int, int], ...] = ()

    def to_dict(self) -> Dict:
        return {"gain": str(self.gain), "selected": sorted(self.selected),
                "suggested": sorted(self.suggested), "discarded": sorted(self.discarded)}


def _atom_indices(policy: PtasPolicy, values: Sequence[Fraction]) -> List[int]:
    atoms = []
    for t, v in enumerate(values):
        a = policy.instance.distributions[t].index_of(Fraction(v))
        if a is None:
            raise InconsistentRealizationError(f"Value {v} is not an atom of element {t}")
        atoms.append(a)
    return atoms


def _feasibility_index(policy: PtasPolicy) -> Tuple[List[int], List[Tuple[int, ...]]]:
    family = policy.feasibility
    caps = [b.capacity for b in family.bins]
    containing = [family.containing(t) for t in range(policy.instance.n)]
    return caps, containing


def run_online(policy: PtasPolicy, realization: Realization,
               rng_stream: Union[np.random.Generator, Sequence[float]]) -> RunRecord:
    """
    One run of the composed policy

    Each bin policy advances on its own suggestions; a suggestion is kept iff
    it is feasible in M' together with the elements kept so far.

    Args:
        policy: Output of build_ptas_policy
        realization: Realized values
        rng_stream: Generator, or one uniform coin per element

    Returns:
        RunRecord
    """
    n = policy.instance.n
    atoms = _atom_indices(policy, realization.values)
    coins = rng_stream.random(n) if isinstance(rng_stream, np.random.Generator) else rng_stream
    trackers = {b: bp.tracker() for b, bp in policy.extracted.blocks.items()}
    caps, containing = _feasibility_index(policy)
    used = [0] * len(caps)

    selected, suggested, discarded = [], [], []
    gain = Fraction(0)
    for t in range(n):
        if not trackers[policy.extracted.owner[t]].decide(atoms[t], float(coins[t])):
            continue
        suggested.append(t)
        if all(used[b] < caps[b] for b in containing[t]):
            for b in containing[t]:
                used[b] += 1
            selected.append(t)
            gain += realization.values[t]
        else:
            discarded.append(t)
    per_bin = tuple(sorted((b, tr.suggested) for b, tr in trackers.items()))
    return RunRecord(gain, frozenset(selected), frozenset(suggested), frozenset(discarded), per_bin)


@dataclass
class MonteCarloResult:
    """Sample mean gain with a 95% normal half-width and per-element discard rates"""
    mean_gain: float
    ci95: float
    discard_rates: List[float]
    trials: int
    seed: int

    def to_dict(self) -> Dict:
        return {"mean_gain": self.mean_gain, "ci95": self.ci95,
                "discard_rates": self.discard_rates, "trials": self.trials, "seed": self.seed}


def sample_realization(policy: PtasPolicy, uniforms: np.ndarray) -> Realization:
    """Inverse-CDF draw of every element's value"""
    values = []
    for t, dist in enumerate(policy.instance.distributions):
        cumulative = np.cumsum([float(a.prob) for a in dist.atoms])
        idx = min(int(np.searchsorted(cumulative, uniforms[t], side="right")), len(dist.atoms) - 1)
        values.append(dist.atoms[idx].value)
    return Realization(tuple(values))


def monte_carlo(policy: PtasPolicy, trials: Optional[int] = None,
                seed: Optional[int] = None) -> MonteCarloResult:
    """
    Estimate the expected gain of the composed policy

    Trial i uses its own value and coin streams, so results do not depend on
    how trials are scheduled.

    Raises:
        ParameterError: If trials is below 1
    """
    trials = config.DEFAULT_TRIALS if trials is None else int(trials)
    if trials < 1:
        raise ParameterError(f"trials must be at least 1, got {trials}")
    seed = config.DEFAULT_SEED if seed is None else seed
    n = policy.instance.n
    streams = TrialStreams(seed)
    gains = np.empty(trials, dtype=float)
    discards = np.zeros(n, dtype=float)
    for i in range(trials):
        realization = sample_realization(policy, streams.uniforms(i, n))
        record = run_online(policy, realization, streams.coins(i, n))
        gains[i] = float(record.gain)
        for t in record.discarded:
            discards[t] += 1
    mean = float(gains.mean())
    half = float(1.96 * gains.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    logger.info(f"Monte Carlo over {trials} trials: mean {mean:.6g} +/- {half:.3g}")
    return MonteCarloResult(mean, half, (discards / trials).tolist(), trials, int(seed))


@dataclass
class ExactRunReport:
    """Exact expectations of one composed run"""
    expected_gain: float
    suggest_probability: List[float]
    discard_probability: List[float]
    discard_value: List[float]
    joint_states: int = 0

    def to_dict(self) -> Dict:
        return {"expected_gain": self.expected_gain,
                "suggest_probability": self.suggest_probability,
                "discard_probability": self.discard_probability,
                "discard_value": self.discard_value,
                "joint_states": self.joint_states}


def exact_run(policy: PtasPolicy, max_states: Optional[int] = None) -> ExactRunReport:
    """
    Forward enumeration over (bin policy states, M' usage) in element order

    Raises:
        ResourceBudgetError: If the joint state count exceeds the budget
    """
    limit = max_states or config.MAX_DP_STATES
    n = policy.instance.n
    order = sorted(policy.extracted.blocks)
    slot = {b: i for i, b in enumerate(order)}
    caps, containing = _feasibility_index(policy)

    start = (tuple(policy.extracted.blocks[b].space.initial for b in order), tuple(0 for _ in caps))
    mass: Dict[Tuple, float] = {start: 1.0}
    gain = 0.0
    suggest = [0.0] * n
    discard = [0.0] * n
    discard_value = [0.0] * n
    peak = 1
    for t in range(n):
        b = policy.extracted.owner[t]
        bp = policy.extracted.blocks[b]
        j = bp.space.position(t)
        k = slot[b]
        nxt: Dict[Tuple, float] = {}
        for (states, used), w in mass.items():
            s = states[k]
            for a, atom in enumerate(policy.instance.distributions[t].atoms):
                p = float(atom.prob)
                q = bp.accept_probability(j, s, a)
                if q < 1.0:
                    key = (states, used)
                    nxt[key] = nxt.get(key, 0.0) + w * p * (1.0 - q)
                if q <= 0.0:
                    continue
                moved = states[:k] + (bp.next_state(j, s, True),) + states[k + 1:]
                weight = w * p * q
                suggest[t] += weight
                if all(used[i] < caps[i] for i in containing[t]):
                    used_next = tuple(u + 1 if i in containing[t] else u for i, u in enumerate(used))
                    gain += weight * float(atom.value)
                else:
                    used_next = used
                    discard[t] += weight
                    discard_value[t] += weight * float(atom.value)
                key = (moved, used_next)
                nxt[key] = nxt.get(key, 0.0) + weight
        mass = nxt
        peak = max(peak, len(mass))
        if peak > limit:
            raise ResourceBudgetError(f"Exact run needs more than {limit} joint states",
                                      state_count=peak, limit=limit)
    return ExactRunReport(gain, suggest, discard, discard_value, peak)


@dataclass
class FailureReport:
    """Per-element probability of a suggestion being infeasible in M' versus 3/(K eps^3)"""
    bound: float
    vacuous: bool
    probabilities: List[float]
    method: str
    passed: bool = field(default=True)

    def to_dict(self) -> Dict:
        return {"bound": self.bound, "vacuous": self.vacuous, "method": self.method,
                "passed": self.passed, "probabilities": self.probabilities}


def failure_probability_check(policy: PtasPolicy, exact: bool = True,
                              trials: Optional[int] = None,
                              seed: Optional[int] = None) -> FailureReport:
    """
    Compare per-element discard probabilities with 3 / (K * eps^3)

    A bound of at least 1 holds trivially and is flagged as vacuous.
    """
    eps = float(policy.epsilon)
    bound = 3.0 / (policy.K * eps ** 3)
    if exact:
        probabilities = exact_run(policy).discard_probability
        method = "exact"
    else:
        probabilities = monte_carlo(policy, trials, seed).discard_rates
        method = "monte-carlo"
    passed = all(p <= bound + 1e-12 for p in probabilities)
    vacuous = bound >= 1.0
    if vacuous:
        logger.warning(f"Failure bound {bound:.4g} >= 1 is vacuous")
    return FailureReport(bound, vacuous, probabilities, method, passed)


__all__ = [
    'RunRecord',
    'run_online',
    'MonteCarloResult',
    'sample_realization',
    'monte_carlo',
    'ExactRunReport',
    'exact_run',
    'FailureReport',
    'failure_probability_check',
]
