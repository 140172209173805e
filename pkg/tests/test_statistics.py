"""
Selection Statistics Tests
Exact marginals, covariances and moment bounds of optimal-policy selections
"""
import math
import pytest
from fractions import Fraction
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from matroid_selection.core.model import Instance, LaminarFamily, ValueDistribution
from matroid_selection.generators.correlation_search import (TARGET, correlation_instance,
                                                             search_positive_correlation)
from matroid_selection.policy.statistics import exact_statistics, mgf_bound
from matroid_selection.validators.property_verifier import corpus_instance


class TestMarginals:
    """Pr[X_i] and Pr[X_i and X_j]"""

    def test_deterministic_instance_has_certain_selections(self):
        inst = Instance(LaminarFamily.of([({0, 1, 2}, 2)]),
                        tuple(ValueDistribution.point(v) for v in (3, 1, 2)))
        stats = exact_statistics(inst)
        assert all(p in (0, 1) for p in stats.marginals)
        assert stats.marginals == (Fraction(1), Fraction(0), Fraction(1))
        assert stats.realizations == 1

    def test_single_bernoulli(self):
        inst = Instance(LaminarFamily.of([({0}, 1)]), (ValueDistribution.two_point(5, Fraction(2, 7)),))
        stats = exact_statistics(inst)
        assert stats.marginals[0] == Fraction(2, 7)
        assert stats.count_distributions[(0,)] == {0: Fraction(5, 7), 1: Fraction(2, 7)}

    def test_groups_and_covariance(self):
        inst = correlation_instance(2, Fraction(1, 2), 2, 1)
        stats = exact_statistics(inst, groups=[(2,), (3,)], pairs=[(2, 3)])
        assert stats.group_means[(2,)] == Fraction(3, 4)
        assert stats.group_means[(3,)] == Fraction(1, 4)
        assert stats.covariances[((2,), (3,))] == Fraction(1, 16)


class TestPositiveCorrelation:
    """A rank-2 instance where the last two selections are positively correlated"""

    def test_hand_checked_grid_point(self):
        stats = exact_statistics(correlation_instance(2, Fraction(1, 2), 2, 1), pairs=[(2, 3)])
        assert stats.marginals[2] == TARGET["pr_first"]
        assert stats.marginals[3] == TARGET["pr_second"]
        assert stats.joint[(2, 3)] == TARGET["pr_joint"]
        assert stats.pair_covariance(2, 3) == TARGET["covariance"]

    def test_search_finds_exact_match(self):
        result = search_positive_correlation()
        assert result is not None
        assert result.exact_match
        assert result.positive


class TestMomentBound:
    """E[e^{a X}] against e^{(e^a - 1) E[X]}"""

    def test_bound_formula(self):
        assert mgf_bound(Fraction(1), 1.0) == pytest.approx(math.exp(math.e - 1))
        assert mgf_bound(Fraction(0), 2.0) == 1.0

    @pytest.mark.parametrize("seed", range(10))
    def test_holds_on_single_root_instances(self, seed):
        inst = corpus_instance(seed, n_max=6)
        alphas = (0.1, 0.5, 1.0, 2.0)
        stats = exact_statistics(inst, alphas=alphas, pairs=[])
        whole = tuple(range(inst.n))
        for alpha in alphas:
            assert stats.mgf[(whole, alpha)] <= mgf_bound(stats.group_means[whole], alpha) + 1e-9
