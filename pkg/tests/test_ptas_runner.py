"""
PTAS Runner Tests
Policy construction, online runs, exact expectations and the failure bound
"""
import math
import pytest
from fractions import Fraction
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from matroid_selection.core.errors import InconsistentRealizationError, ParameterError
from matroid_selection.core.model import Instance, LaminarFamily, ValueDistribution
from matroid_selection.policy.exact_policy import Realization, optimal_value
from matroid_selection.ptas.orchestrator import (PtasOrchestrator, big_bin_tail_bound,
                                                 build_ptas_policy, lp_guarantee_ratio,
                                                 ptas_guarantee)
from matroid_selection.ptas.runner import (exact_run, failure_probability_check, monte_carlo,
                                           run_online)
from matroid_selection.validators.property_verifier import (LP_DP_EPSILON, LP_DP_K,
                                                            corpus_instance, failure_instance)


class TestGuarantees:
    """Closed-form bounds"""

    def test_ptas_guarantee(self):
        assert ptas_guarantee(Fraction(1, 10)) == pytest.approx(0.81 * 0.7)
        # negative for eps >= 1/3, reported as 0
        assert ptas_guarantee(0.5) == 0.0

    def test_tail_bound(self):
        assert big_bin_tail_bound(100, 0.5) == pytest.approx(math.exp(-10))

    def test_lp_ratio_without_big_bins(self):
        policy = build_ptas_policy(corpus_instance(2, n_max=6), LP_DP_EPSILON, K=LP_DP_K)
        assert lp_guarantee_ratio(policy) == pytest.approx(1 - 1 / 1000)


class TestOrchestrator:
    """Parameter handling and stage records"""

    def test_epsilon_range(self):
        with pytest.raises(ParameterError):
            PtasOrchestrator(0)
        with pytest.raises(ParameterError):
            PtasOrchestrator(1)

    def test_bad_K(self):
        with pytest.raises(ParameterError):
            PtasOrchestrator(Fraction(1, 2), K=0)

    def test_auto_K(self):
        assert PtasOrchestrator(Fraction(1, 2)).K == 16

    def test_stages(self):
        orchestrator = PtasOrchestrator(Fraction(1, 2), K=4, timing=True)
        policy = orchestrator.build(failure_instance(4))
        assert list(policy.stages) == ["separation", "classification", "shrink", "lp", "extraction"]
        assert all("seconds" in stage for stage in policy.stages.values())
        assert policy.classification.big == (0,)
        assert policy.shrunk.caps[0] == 3
        summary = policy.to_dict()
        assert summary["K"] == 4
        assert summary["epsilon"] == "1/2"

    def test_no_timing_by_default(self):
        policy = build_ptas_policy(failure_instance(4), Fraction(1, 2), K=4)
        assert all("seconds" not in stage for stage in policy.stages.values())


class TestOnlineRun:
    """The composed policy on one realization"""

    def test_rank_one_deterministic(self):
        inst = Instance(LaminarFamily.of([({0, 1, 2}, 1)]),
                        tuple(ValueDistribution.point(v) for v in (1, 5, 2)))
        policy = build_ptas_policy(inst, LP_DP_EPSILON, K=LP_DP_K)
        record = run_online(policy, Realization.of([1, 5, 2]), [0.5, 0.5, 0.5])
        assert record.selected == frozenset({1})
        assert record.gain == 5
        assert record.discarded == frozenset()

    def test_inconsistent_realization(self):
        inst = Instance(LaminarFamily.of([({0}, 1)]), (ValueDistribution.point(1),))
        policy = build_ptas_policy(inst, LP_DP_EPSILON, K=LP_DP_K)
        with pytest.raises(InconsistentRealizationError):
            run_online(policy, Realization.of([2]), [0.0])


class TestExactRun:
    """Forward enumeration of the composed policy"""

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_optimum_without_big_bins(self, seed):
        inst = corpus_instance(seed, n_max=6)
        policy = build_ptas_policy(inst, LP_DP_EPSILON, K=LP_DP_K)
        report = exact_run(policy)
        assert report.expected_gain == pytest.approx(float(optimal_value(inst)), abs=1e-6)
        assert report.expected_gain == pytest.approx(policy.lp_value, abs=1e-6)
        assert all(p == pytest.approx(0.0, abs=1e-9) for p in report.discard_probability)

    def test_lp_bound_with_big_bins(self):
        inst = failure_instance(4)
        policy = build_ptas_policy(inst, Fraction(1, 2), K=4)
        opt = float(optimal_value(inst))
        assert policy.lp_value >= lp_guarantee_ratio(policy) * opt - 1e-6
        report = exact_run(policy)
        assert report.expected_gain <= opt + 1e-6
        assert all(0.0 <= p <= 1.0 + 1e-9 for p in report.suggest_probability)


class TestMonteCarlo:
    """Seeded estimates"""

    def test_reproducible(self):
        policy = build_ptas_policy(failure_instance(4), Fraction(1, 2), K=4)
        first = monte_carlo(policy, trials=300, seed=11)
        second = monte_carlo(policy, trials=300, seed=11)
        assert first.mean_gain == second.mean_gain
        assert first.discard_rates == second.discard_rates

    def test_agrees_with_exact_run(self):
        policy = build_ptas_policy(corpus_instance(5, n_max=6), LP_DP_EPSILON, K=LP_DP_K)
        estimate = monte_carlo(policy, trials=4000, seed=3)
        exact = exact_run(policy).expected_gain
        assert abs(estimate.mean_gain - exact) <= 5 * estimate.ci95 + 1e-9

    @pytest.mark.parametrize("trials", [0, -3])
    def test_rejects_non_positive_trials(self, trials):
        policy = build_ptas_policy(failure_instance(4), Fraction(1, 2), K=4)
        with pytest.raises(ParameterError):
            monte_carlo(policy, trials=trials, seed=0)

    def test_default_trials_from_config(self, monkeypatch):
        from matroid_selection.core.config import config
        monkeypatch.setattr(config, "DEFAULT_TRIALS", 7)
        policy = build_ptas_policy(failure_instance(4), Fraction(1, 2), K=4)
        assert monte_carlo(policy, seed=0).trials == 7


class TestFailureBound:
    """Per-element discard probability against 3 / (K eps^3)"""

    def test_vacuous_bound_is_flagged(self):
        policy = build_ptas_policy(failure_instance(4), Fraction(1, 2), K=4)
        report = failure_probability_check(policy)
        assert report.bound == pytest.approx(6.0)
        assert report.vacuous
        assert report.passed
        assert report.method == "exact"
        assert len(report.probabilities) == 12

    def test_monte_carlo_method(self):
        policy = build_ptas_policy(failure_instance(8), Fraction(1, 2), K=8)
        report = failure_probability_check(policy, exact=False, trials=200, seed=1)
        assert report.method == "monte-carlo"
        assert report.bound == pytest.approx(3.0)
