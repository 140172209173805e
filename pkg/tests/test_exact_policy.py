"""
Exact Policy Tests
Backward induction values, thresholds, replay traces and the oracle identity
"""
import pytest
from fractions import Fraction
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from matroid_selection.core.errors import (ElementIndexError, InconsistentRealizationError,
                                           ParameterError, ResourceBudgetError)
from matroid_selection.core.model import GraphicGround, Instance, LaminarFamily, ValueDistribution
from matroid_selection.generators.random_instances import random_graphic, random_left_to_right
from matroid_selection.policy.exact_policy import (INFINITY, ExactPolicy, Realization,
                                                   enumerate_realizations,
                                                   expected_gain_by_enumeration, optimal_value,
                                                   realization_count, replay, threshold)


def rank_one(*values):
    n = len(values)
    return Instance(LaminarFamily.of([(range(n), 1)]),
                    tuple(ValueDistribution.point(v) for v in values))


class TestOptimalValue:
    """D_0 of the empty state"""

    def test_single_bernoulli_element(self):
        inst = Instance(LaminarFamily.of([({0}, 1)]), (ValueDistribution.two_point(1, Fraction(1, 2)),))
        assert optimal_value(inst) == Fraction(1, 2)

    def test_rank_one_deterministic_takes_the_larger(self):
        assert optimal_value(rank_one(1, 2)) == 2

    def test_zero_capacity(self):
        inst = Instance(LaminarFamily.of([({0, 1}, 0)]),
                        (ValueDistribution.point(5), ValueDistribution.point(7)))
        assert optimal_value(inst) == 0

    def test_unconstrained_elements_are_all_taken(self):
        inst = Instance(LaminarFamily.of([]), (ValueDistribution.two_point(4, Fraction(1, 3)),
                                               ValueDistribution.point(2)))
        assert optimal_value(inst) == Fraction(4, 3) + 2

    def test_graphic_triangle(self):
        inst = Instance(GraphicGround.of(3, [(0, 1), (1, 2), (0, 2)]),
                        tuple(ValueDistribution.point(v) for v in (1, 2, 3)))
        assert optimal_value(inst) == 5

    def test_long_horizon_rank_one(self):
        n = 1500
        inst = Instance(LaminarFamily.of([(range(n), 1)]),
                        tuple(ValueDistribution.two_point(1, Fraction(1, 2)) for _ in range(n)))
        policy = ExactPolicy(inst)
        assert policy.optimal_value() == 1 - Fraction(1, 2 ** n)
        assert policy.threshold(0, policy.encoder.initial()) == 1 - Fraction(1, 2 ** (n - 1))

    def test_state_budget(self):
        inst = random_left_to_right(6, 2, 3, 2, seed=1, root_capacity=3)
        with pytest.raises(ResourceBudgetError) as excinfo:
            ExactPolicy(inst, max_states=1).optimal_value()
        assert excinfo.value.limit == 1


class TestThreshold:
    """Acceptance thresholds D_{t+1}(S) - D_{t+1}(S + u_t)"""

    def test_rank_one_first_threshold(self):
        inst = rank_one(1, 2)
        policy = ExactPolicy(inst)
        assert threshold(inst, 0, policy.encoder.initial(), policy) == 2

    def test_last_element_feasible_is_zero(self):
        inst = rank_one(1, 1)
        policy = ExactPolicy(inst)
        assert policy.threshold(1, policy.state_after(1, [])) == 0

    def test_last_element_full_bin_is_infinite(self):
        inst = rank_one(1, 1)
        policy = ExactPolicy(inst)
        assert policy.threshold(1, policy.state_after(1, [0])) == INFINITY

    def test_element_out_of_range(self):
        inst = rank_one(1)
        policy = ExactPolicy(inst)
        with pytest.raises(ElementIndexError):
            policy.threshold(4, policy.encoder.initial())


class TestReplay:
    """Deterministic traces of the optimal policy"""

    def test_all_zero_values(self):
        inst = Instance(LaminarFamily.of([({0, 1}, 1)]),
                        (ValueDistribution.two_point(3, Fraction(1, 2)),) * 2)
        trace = replay(inst, Realization.of([0, 0]))
        assert trace.selected == frozenset()
        assert trace.gain == 0

    def test_single_element_positive_value(self):
        inst = Instance(LaminarFamily.of([({0}, 1)]), (ValueDistribution.point(4),))
        assert replay(inst, Realization.of([4])).selected == frozenset({0})

    def test_rank_one_skips_the_smaller(self):
        trace = replay(rank_one(1, 2), Realization.of([1, 2]))
        assert trace.selected == frozenset({1})
        assert trace.gain == 2

    def test_inconsistent_realization(self):
        with pytest.raises(InconsistentRealizationError):
            replay(rank_one(1, 2), Realization.of([1, 3]))
        with pytest.raises(InconsistentRealizationError):
            replay(rank_one(1, 2), Realization.of([1]))


class TestOracleIdentity:
    """Weighted replay gains sum to the optimal value"""

    @pytest.mark.parametrize("seed", range(12))
    def test_left_to_right(self, seed):
        inst = random_left_to_right(2 + seed % 6, 3, 3, 2, seed=seed, root_capacity=1 + seed % 3)
        assert expected_gain_by_enumeration(inst) == optimal_value(inst)

    @pytest.mark.parametrize("seed", range(8))
    def test_graphic(self, seed):
        inst = random_graphic(3 + seed % 4, 4, 2, seed=seed)
        assert expected_gain_by_enumeration(inst) == optimal_value(inst)

    def test_realization_weights_sum_to_one(self):
        inst = random_left_to_right(5, 2, 2, 3, seed=3)
        realizations = list(enumerate_realizations(inst))
        assert len(realizations) == realization_count(inst)
        assert sum(r.weight for r in realizations) == 1

    def test_enumeration_cap(self):
        inst = random_left_to_right(5, 2, 2, 3, seed=3)
        with pytest.raises(ResourceBudgetError):
            list(enumerate_realizations(inst, cap=1))


class TestMuShift:
    """Selections after the first element with and without it"""

    def test_rank_one(self):
        policy = ExactPolicy(rank_one(1, 1, 1))
        assert policy.mu_shift(Realization.of([1, 1, 1])) == (1, 0)

    def test_requires_left_to_right(self):
        inst = Instance(LaminarFamily.of([({0, 1, 2}, 2), ({0, 2}, 1)]),
                        tuple(ValueDistribution.point(1) for _ in range(3)))
        with pytest.raises(ParameterError):
            ExactPolicy(inst).mu_shift(Realization.of([1, 1, 1]))
