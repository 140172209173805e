"""
Core Model Tests
Distributions, laminar and graphic grounds, matroid oracles and validation
"""
import pytest
from fractions import Fraction
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from matroid_selection.core.errors import ElementIndexError, WrongGroundError
from matroid_selection.core.matroid import (bin_depth, is_independent, is_left_to_right,
                                            is_left_to_right_bin, max_depth, non_left_to_right_load)
from matroid_selection.core.model import (Atom, Bin, GraphicGround, Instance, LaminarFamily,
                                          ValueDistribution)
from matroid_selection.validators.instance_validator import InstanceValidator


def laminar(bins, dists):
    return Instance(LaminarFamily.of(bins), tuple(dists))


def points(*values):
    return [ValueDistribution.point(v) for v in values]


class TestValueDistribution:
    """Construction helpers and moments"""

    def test_of_sorts_and_drops_zero_mass(self):
        dist = ValueDistribution.of([(5, Fraction(1, 2)), (1, Fraction(1, 2)), (9, 0)])
        assert dist.values == (Fraction(1), Fraction(5))
        assert dist.mass == 1

    def test_two_point(self):
        dist = ValueDistribution.two_point(3, Fraction(1, 4))
        assert dist.atoms == (Atom(Fraction(0), Fraction(3, 4)), Atom(Fraction(3), Fraction(1, 4)))
        assert dist.mean() == Fraction(3, 4)

    def test_two_point_with_certain_value_has_one_atom(self):
        assert ValueDistribution.two_point(2, 1).values == (Fraction(2),)

    def test_index_of(self):
        dist = ValueDistribution.two_point(3, Fraction(1, 4))
        assert dist.index_of(Fraction(3)) == 1
        assert dist.index_of(Fraction(7)) is None


class TestLaminarOracle:
    """Independence on laminar instances"""

    def test_single_bin_capacity(self):
        inst = laminar([({0, 1, 2}, 1)], points(1, 1, 1))
        assert is_independent(inst, [0])
        assert not is_independent(inst, [0, 1])

    def test_nested_bins(self):
        inst = laminar([({0, 1, 2, 3}, 2), ({0, 1}, 1)], points(1, 1, 1, 1))
        assert is_independent(inst, [0, 2])
        assert not is_independent(inst, [0, 1])
        assert not is_independent(inst, [0, 2, 3])

    def test_empty_set_is_independent(self):
        inst = laminar([({0}, 0)], points(1))
        assert is_independent(inst, [])
        assert not is_independent(inst, [0])

    def test_out_of_range_element(self):
        inst = laminar([({0}, 1)], points(1))
        with pytest.raises(ElementIndexError):
            is_independent(inst, [3])


class TestGraphicOracle:
    """Forest checks on graphic instances"""

    def test_triangle(self):
        inst = Instance(GraphicGround.of(3, [(0, 1), (1, 2), (0, 2)]), tuple(points(1, 1, 1)))
        assert is_independent(inst, [0, 1])
        assert is_independent(inst, [1, 2])
        assert not is_independent(inst, [0, 1, 2])

    def test_parallel_edges_form_a_cycle(self):
        inst = Instance(GraphicGround.of(2, [(0, 1), (0, 1)]), tuple(points(1, 1)))
        assert not is_independent(inst, [0, 1])

    def test_laminar_only_operations_reject_graphs(self):
        inst = Instance(GraphicGround.of(2, [(0, 1)]), tuple(points(1)))
        with pytest.raises(WrongGroundError):
            is_left_to_right(inst)


class TestArrivalOrder:
    """Left-to-right predicates and depth"""

    def test_contiguous_bins(self):
        inst = laminar([({0, 1, 2, 3}, 2), ({0, 1}, 1), ({2, 3}, 1)], points(1, 1, 1, 1))
        assert is_left_to_right(inst)
        assert non_left_to_right_load(inst) == 0

    def test_gap_breaks_left_to_right(self):
        inst = laminar([({0, 1, 2}, 2), ({0, 2}, 1)], points(1, 1, 1))
        assert not is_left_to_right(inst)
        assert not is_left_to_right_bin(inst, 0)
        assert is_left_to_right_bin(inst, 1)
        assert non_left_to_right_load(inst) == 1

    def test_bin_is_left_to_right_relative_to_its_members(self):
        # {0, 2} is contiguous once restricted to the outer bin {0, 2}
        inst = laminar([({0, 2}, 2), ({0}, 1)], points(1, 1, 1))
        assert is_left_to_right_bin(inst, 0)

    def test_depth(self):
        family = LaminarFamily.of([({0, 1, 2, 3}, 2), ({0, 1}, 1), ({0}, 1)])
        assert bin_depth(family, 0) == 1
        assert bin_depth(family, 2) == 3
        assert max_depth(family) == 3


class TestInstanceTransforms:
    """Dispersal, shifting and restriction"""

    def test_dispersal_shifts(self):
        inst = laminar([({0, 1}, 1)], [ValueDistribution.two_point(1, Fraction(1, 2)),
                                        ValueDistribution.point(4)])
        eta = Fraction(1, 100)
        dispersed = inst.dispersed(eta)
        assert dispersed.distributions[0].values == (eta / 2, 1 + 2 * eta / 2)
        assert dispersed.distributions[1].values == (4 + eta / 4,)

    def test_shifted(self):
        inst = laminar([({0}, 1)], points(3))
        assert inst.shifted(1).distributions[0].values == (Fraction(2),)

    def test_restricted_to(self):
        inst = laminar([({0, 1, 2, 3}, 2), ({2, 3}, 1)], points(1, 2, 3, 4))
        sub = inst.restricted_to(1)
        assert sub.n == 2
        assert sub.laminar().bins == (Bin.of({0, 1}, 1),)
        assert sub.distributions[0].values == (Fraction(3),)


class TestInstanceValidator:
    """Invariant violations are reported, never raised"""

    def test_valid_instance(self):
        inst = laminar([({0, 1}, 1)], points(1, 2))
        assert InstanceValidator.validate(inst).ok

    def test_crossing_bins(self):
        inst = laminar([({0, 1}, 1), ({1, 2}, 1)], points(1, 1, 1))
        report = InstanceValidator.validate(inst)
        assert not report.ok
        assert report.first.code == "crossing"

    def test_duplicate_bins(self):
        inst = laminar([({0, 1}, 1), ({0, 1}, 2)], points(1, 1))
        assert InstanceValidator.validate(inst).first.code == "duplicate-bin"

    def test_mass_off(self):
        bad = ValueDistribution((Atom(Fraction(1), Fraction(1, 2)),))
        inst = laminar([({0}, 1)], [bad])
        report = InstanceValidator.validate(inst)
        assert report.first.code == "mass"
        assert report.first.element == 0

    def test_self_loop(self):
        inst = Instance(GraphicGround.of(2, [(1, 1)]), tuple(points(1)))
        assert InstanceValidator.validate(inst).first.code == "self-loop"

    def test_edge_count_mismatch(self):
        inst = Instance(GraphicGround.of(3, [(0, 1)]), tuple(points(1, 1)))
        assert InstanceValidator.validate(inst).first.code == "edge-count"
