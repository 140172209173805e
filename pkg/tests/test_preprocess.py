"""
Preprocessing Tests
Capacity separation, big/small classification and big-bin shrinking
"""
import math
import pytest
from fractions import Fraction
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from matroid_selection.core.errors import ParameterError, WrongGroundError
from matroid_selection.core.model import GraphicGround, Instance, LaminarFamily, ValueDistribution
from matroid_selection.policy.exact_policy import optimal_value
from matroid_selection.preprocess.classification import (DEPTH_SCALED, UNIFORM, classify_bins,
                                                         depth_scaled_thresholds, shrink_big)
from matroid_selection.preprocess.separation import (SeparatedInstance, qptas_solve,
                                                     separate_capacities, separated_depth_bound)
from matroid_selection.validators.property_verifier import corpus_instance


def instance(bins, n):
    return Instance(LaminarFamily.of(bins), tuple(ValueDistribution.two_point(1 + t, Fraction(1, 2))
                                                  for t in range(n)))


class TestSeparation:
    """M' keeps nested capacities at most ceil(alpha * parent)"""

    def test_caps_and_drops(self):
        inst = instance([({0, 1, 2, 3}, 4), ({0, 1}, 3), ({2, 3}, 5)], 4)
        sep = separate_capacities(inst, Fraction(1, 2))
        assert sep.kept_bins == (0, 1)
        assert sep.new_caps == {0: 4, 1: 2}
        assert len(sep.family) == 2

    def test_alpha_range(self):
        inst = instance([({0}, 1)], 1)
        with pytest.raises(ParameterError):
            separate_capacities(inst, 1)
        with pytest.raises(ParameterError):
            separate_capacities(inst, 0)

    def test_graphic_rejected(self):
        inst = Instance(GraphicGround.of(2, [(0, 1)]), (ValueDistribution.point(1),))
        with pytest.raises(WrongGroundError):
            separate_capacities(inst, Fraction(1, 2))

    def test_identity(self):
        inst = instance([({0, 1}, 1), ({0}, 1)], 2)
        sep = SeparatedInstance.identity(inst)
        assert sep.family == inst.laminar()

    @pytest.mark.parametrize("seed", range(8))
    def test_separation_holds_structurally(self, seed):
        inst = corpus_instance(seed, n_max=7)
        alpha = Fraction(1, 2)
        sep = separate_capacities(inst, alpha)
        bins = inst.laminar().bins
        for a in sep.kept_bins:
            parents = [b for b in sep.kept_bins if b != a and bins[a].members < bins[b].members]
            if not parents:
                continue
            parent = min(parents, key=lambda b: len(bins[b].members))
            assert sep.new_caps[a] <= math.ceil(alpha * sep.new_caps[parent])
            assert sep.new_caps[a] < sep.new_caps[parent]

    @pytest.mark.parametrize("seed", range(6))
    @pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(3, 4), Fraction(9, 10)])
    def test_value_sandwich(self, seed, alpha):
        inst = corpus_instance(seed, n_max=6)
        opt = optimal_value(inst)
        separated = optimal_value(separate_capacities(inst, alpha).instance)
        assert alpha * opt <= separated <= opt

    def test_qptas_solve(self):
        inst = corpus_instance(3, n_max=6)
        value = qptas_solve(inst, Fraction(1, 4))
        assert Fraction(3, 4) * optimal_value(inst) <= value <= optimal_value(inst)

    def test_depth_bound_grows_with_capacity(self):
        assert separated_depth_bound(0.5, 1024) > separated_depth_bound(0.5, 2)


class TestClassification:
    """Big bins reach the threshold and sit under big bins only"""

    def test_uniform(self):
        inst = instance([({0, 1, 2, 3}, 4), ({0, 1}, 2)], 4)
        cls = classify_bins(SeparatedInstance.identity(inst), K=3)
        assert cls.big == (0,)
        # elements 2 and 3 get capacity-1 singletons
        assert cls.small_maximal == (1, 2, 3)
        assert cls.family.bins[2].members == frozenset({2})
        assert cls.source == (0, 1, None, None)
        assert cls.block_of(3) == 3

    def test_fillers_stay_small_at_unit_threshold(self):
        inst = instance([({0, 1}, 1)], 2)
        cls = classify_bins(SeparatedInstance.identity(inst), K=1)
        assert cls.big == (0,)
        assert cls.small_maximal == (1, 2)
        assert all(cls.family.bins[i].capacity >= cls.thresholds[i] for i in (1, 2))
        assert not any(cls.is_big(i) for i in (1, 2))

    def test_child_of_small_bin_stays_small(self):
        inst = instance([({0, 1, 2}, 2), ({0, 1}, 5)], 3)
        cls = classify_bins(SeparatedInstance.identity(inst), K=3)
        assert cls.big == ()
        assert cls.small_maximal == (0,)

    def test_parameter_errors(self):
        sep = SeparatedInstance.identity(instance([({0}, 1)], 1))
        with pytest.raises(ParameterError):
            classify_bins(sep, K=0)
        with pytest.raises(ParameterError):
            classify_bins(sep, K=2, mode="bogus")
        with pytest.raises(ParameterError):
            classify_bins(sep, K=2, mode=DEPTH_SCALED)

    def test_depth_scaled_thresholds(self):
        family = LaminarFamily.of([({0, 1, 2, 3}, 8), ({0, 1}, 2)])
        eps = Fraction(1, 2)
        delta = 0.25 / math.log(2)
        thresholds = depth_scaled_thresholds(family, K=2, L=2, epsilon=eps)
        assert thresholds[0] == math.ceil(2 / delta)
        assert thresholds[1] == 2

    def test_depth_scaled_mode_defaults_L_to_load(self):
        inst = instance([({0, 1, 2, 3}, 8), ({0, 1}, 2)], 4)
        cls = classify_bins(SeparatedInstance.identity(inst), K=2, mode=DEPTH_SCALED,
                            epsilon=Fraction(1, 2))
        # L = 0 on a left-to-right instance, so every threshold is K
        assert cls.thresholds[0] == 2
        assert cls.big == (0, 1)


class TestShrink:
    """c'' = floor((1 - eps) c') on big bins"""

    def test_shrink(self):
        inst = instance([({0, 1, 2, 3}, 4), ({0, 1}, 2)], 4)
        sep = SeparatedInstance.identity(inst)
        cls = classify_bins(sep, K=3, mode=UNIFORM)
        shrunk = shrink_big(sep, cls, Fraction(1, 2))
        assert shrunk[0] == 2
        assert shrunk[1] == 2
        assert shrunk.instance.laminar().bins[0].capacity == 2

    def test_epsilon_range(self):
        inst = instance([({0}, 1)], 1)
        sep = SeparatedInstance.identity(inst)
        with pytest.raises(ParameterError):
            shrink_big(sep, classify_bins(sep, K=1), 0)
