"""
Property Verifier for the Matroid Selection Toolkit
Runs the structural and probabilistic properties against the exact oracle
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

from ..core.config import config
from ..core.model import Bin, Instance, LaminarFamily, ValueDistribution
from ..generators.anticoncentration import produce_anticoncentration
from ..generators.correlation_search import search_positive_correlation
from ..generators.formulas import enumerate_s2sat, enumerate_s3sat, gadget_identity
from ..generators.random_instances import random_left_to_right
from ..generators.reduction import check_reduction_rules, gain_window_check, s2sat_to_gmbs
from ..lp.extraction import enumerate_block
from ..policy.exact_policy import ExactPolicy, enumerate_realizations, optimal_value
from ..policy.statistics import exact_statistics, mgf_bound
from ..ptas.orchestrator import build_ptas_policy
from ..ptas.runner import failure_probability_check
from ..utils.logger import get_logger
from ..utils.rationals import parse_rational, to_jsonable

logger = get_logger("matroid_selection.verifier")

MGF_SLACK = 1e-9
LP_DP_TOL = 1e-6
DEFAULT_ALPHAS = (0.1, 0.5, 1.0, 2.0)
LP_DP_EPSILON = Fraction(1, 1000)
LP_DP_K = 10 ** 6


@dataclass
class PropertyReport:
    """Outcome of one property over a corpus"""
    name: str
    checks: List[Dict[str, Any]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.get("passed", False) for c in self.checks)

    @property
    def failures(self) -> List[Dict[str, Any]]:
        return [c for c in self.checks if not c.get("passed", False)]

    def add(self, passed: bool, **measured) -> None:
        self.checks.append({"passed": bool(passed), **measured})

    def to_dict(self, include_passing: bool = False) -> Dict[str, Any]:
        shown = self.checks if include_passing else self.failures
        return to_jsonable({
            "property": self.name,
            "passed": self.passed,
            "total": len(self.checks),
            "failed": len(self.failures),
            "checks": shown,
            "notes": self.notes,
        })


def corpus_instance(seed: int, n_max: int = 8, max_cap: int = 3) -> Instance:
    """
    Left-to-right instance under a single root bin

    n cycles through 2..n_max with the seed so a corpus covers every size.
    """
    n = 2 + seed % max(n_max - 1, 1)
    return random_left_to_right(n, max_depth=3, max_cap=max_cap, atoms_per_element=2,
                                seed=seed, root_capacity=1 + seed % max_cap)


def failure_instance(K: int) -> Instance:
    """
    Twelve elements in four consecutive triples under one root bin

    The root is big for K in {4, 8} and the triples stay small.
    """
    root_cap, child_cap = (6, 2) if K <= 4 else (8, 3)
    bins = [Bin.of(range(12), root_cap)]
    bins += [Bin.of(range(3 * i, 3 * i + 3), child_cap) for i in range(4)]
    dists = tuple(ValueDistribution.two_point(1 + t % 3, Fraction(1, 2)) for t in range(12))
    return Instance(LaminarFamily(tuple(bins)), dists, f"failure-K{K}")


class PropertyVerifier:
    """Each method checks one property and returns a PropertyReport"""

    def __init__(self, max_states: Optional[int] = None):
        self.max_states = max_states

    def concentration(self, seeds: int = 200, n_max: int = 8,
                      alphas: Sequence[float] = DEFAULT_ALPHAS) -> PropertyReport:
        """E[e^{a X}] <= e^{(e^a - 1) E[X]} for the selection count X of the optimal policy"""
        report = PropertyReport("concentration")
        for seed in range(seeds):
            instance = corpus_instance(seed, n_max)
            stats = exact_statistics(instance, alphas=alphas, pairs=[],
                                     policy=ExactPolicy(instance, self.max_states))
            whole = tuple(range(instance.n))
            mean = stats.group_means[whole]
            for alpha in alphas:
                measured = stats.mgf[(whole, float(alpha))]
                bound = mgf_bound(mean, alpha)
                report.add(measured <= bound + MGF_SLACK, seed=seed, alpha=alpha,
                           measured=measured, bound=bound)
        return report

    def firstuseless(self, seeds: int = 100, n_max: int = 8,
                     eta: Any = None) -> PropertyReport:
        """
        mu0 - mu1 in {0, 1} on every realization

        Values are dispersed by eta so the optimal policy has no ties.
        """
        report = PropertyReport("firstuseless")
        eta = parse_rational(config.DISPERSAL_ETA if eta is None else eta)
        for seed in range(seeds):
            instance = corpus_instance(seed, n_max).dispersed(eta)
            policy = ExactPolicy(instance, self.max_states)
            exceptions = 0
            realizations = 0
            for realization in enumerate_realizations(instance):
                realizations += 1
                mu0, mu1 = policy.mu_shift(realization)
                if mu0 - mu1 not in (0, 1):
                    exceptions += 1
            report.add(exceptions == 0, seed=seed, realizations=realizations, exceptions=exceptions)
        return report

    def failure_prob(self, Ks: Sequence[int] = (4, 8), epsilon: Any = Fraction(1, 2)) -> PropertyReport:
        """Exact discard probability per element against 3/(K eps^3)"""
        report = PropertyReport("failure-prob")
        for K in Ks:
            policy = build_ptas_policy(failure_instance(K), epsilon, K=K)
            result = failure_probability_check(policy, exact=True)
            report.add(result.passed, K=K, bound=result.bound, vacuous=result.vacuous,
                       max_probability=max(result.probabilities, default=0.0),
                       big_bins=list(policy.classification.big))
            if result.vacuous:
                report.notes.append(f"K={K}: bound {result.bound:.4g} >= 1 is vacuous")
        return report

    def gain_formula(self, n: int = 2, max_clauses: int = 2, eta: Any = None) -> PropertyReport:
        """Exact gain of every small reduction instance inside its closed-form window, plus the rule audit"""
        report = PropertyReport("gain-formula")
        for formula in enumerate_s2sat(n, max_clauses):
            window = gain_window_check(formula, formula.k, self.max_states)
            rules = check_reduction_rules(s2sat_to_gmbs(formula, formula.k), eta, self.max_states)
            report.add(window.passed and rules.passed,
                       clauses=[list(c) for c in formula.clauses], k=formula.k,
                       opt=window.opt, low=window.estimate.low, high=window.estimate.high,
                       rules_applicable=rules.applicable, rule_violations=rules.violations)
        return report

    def gadget(self, max_variables: int = 3, max_clauses: int = 2) -> PropertyReport:
        """Game value identity of the 3CNF-to-2CNF gadget"""
        report = PropertyReport("gadget")
        for formula in enumerate_s3sat(max_variables, max_clauses):
            identity = gadget_identity(formula)
            report.add(identity.holds, clauses=[list(c) for c in formula.clauses], n=formula.n,
                       value_2cnf=identity.value_2cnf, value_3cnf=identity.value_3cnf)
        return report

    def anticoncentration(self, r: int = 2, k: int = 3, window: Any = Fraction(1, 100)) -> PropertyReport:
        """Pr[|OPT| = 0] and Pr[|OPT| = r] near one half, with the exact lower bound on the first"""
        report = PropertyReport("anticoncentration")
        window = parse_rational(window)
        instance = produce_anticoncentration(r, k)
        stats = exact_statistics(instance, pairs=[], policy=ExactPolicy(instance, self.max_states))
        counts = stats.count_distributions[tuple(range(instance.n))]
        p0, pr = counts.get(0, Fraction(0)), counts.get(r, Fraction(0))
        half = Fraction(1, 2)
        lower = half * (1 - Fraction(1, 10 ** (1 + k))) ** (r * r + 2 * r + 1)
        report.add(abs(p0 - half) <= window, event="|OPT|=0", probability=p0)
        report.add(abs(pr - half) <= window, event=f"|OPT|={r}", probability=pr)
        report.add(p0 >= lower, event="|OPT|=0 lower bound", probability=p0, bound=lower)
        return report

    def lp_dp(self, seeds: int = 100, n_max: int = 8) -> PropertyReport:
        """LP objective equals the exact optimum when no bin is big, and the extracted policy attains it"""
        report = PropertyReport("lp-dp")
        for seed in range(seeds):
            instance = corpus_instance(seed, n_max)
            opt = float(optimal_value(instance, self.max_states))
            policy = build_ptas_policy(instance, LP_DP_EPSILON, K=LP_DP_K)
            scale = max(1.0, abs(opt))
            lp_ok = abs(policy.lp_value - opt) <= LP_DP_TOL * scale
            gaps = []
            for b, bin_policy in policy.extracted.blocks.items():
                enumerated = enumerate_block(bin_policy).expected_gain
                block = policy.solution.block_objective(policy.model.blocks[b])
                gaps.append(abs(enumerated - block))
            block_ok = all(g <= LP_DP_TOL * scale for g in gaps)
            report.add(lp_ok and block_ok, seed=seed, opt=opt, lp=policy.lp_value,
                       max_block_gap=max(gaps, default=0.0))
        return report

    def correlation(self) -> PropertyReport:
        """A rank-2 instance whose last two selections are positively correlated"""
        report = PropertyReport("correlation")
        result = search_positive_correlation()
        report.add(result is not None and result.positive,
                   exact_match=bool(result and result.exact_match),
                   covariance=result.covariance if result else None)
        return report

    def run(self, name: str, **params) -> PropertyReport:
        """Dispatch by CLI property name"""
        checks: Dict[str, Callable[..., PropertyReport]] = {
            "concentration": self.concentration,
            "firstuseless": self.firstuseless,
            "failure-prob": self.failure_prob,
            "gain-formula": self.gain_formula,
            "gadget": self.gadget,
            "anticoncentration": self.anticoncentration,
            "lp-dp": self.lp_dp,
            "correlation": self.correlation,
        }
        if name not in checks:
            raise KeyError(f"Unknown property {name!r}; choose from {sorted(checks)}")
        logger.info(f"Verifying {name} with {params or 'defaults'}")
        report = checks[name](**params)
        log = logger.info if report.passed else logger.warning
        log(f"{name}: {len(report.checks) - len(report.failures)}/{len(report.checks)} checks passed")
        return report


PROPERTIES = ("concentration", "firstuseless", "failure-prob", "gain-formula", "gadget",
              "anticoncentration", "lp-dp", "correlation")

__all__ = ['PropertyReport', 'PropertyVerifier', 'PROPERTIES', 'corpus_instance', 'failure_instance']
