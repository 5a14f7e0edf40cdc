"""Measure space tests: sets, disjointness, h-measures, JSON."""

from fractions import Fraction as F

import pytest

from hintegral.errors import NonDisjointError, UnknownSetError
from hintegral.hvalue import INF, ZERO, ExtRat, HValue
from hintegral.space import (
    AtomSet,
    AtomSpace,
    CatalogSet,
    CatalogSpace,
    CatalogUnion,
    IntervalSet,
    IntervalSpace,
    contains,
    intersect_intervals,
    scaled_embedding,
    set_from_json,
    set_to_json,
    space_from_json,
    space_to_json,
    union,
    validate_h_measure,
)

H = HValue.of


class TestSets:
    def test_interval_overlap_rejected(self):
        with pytest.raises(NonDisjointError):
            IntervalSet.of([(0, 1), (F(1, 2), 2)])
        with pytest.raises(NonDisjointError):
            IntervalSet.of([(0, 1)], points=[F(1, 2)])

    def test_touching_intervals_allowed(self):
        s = IntervalSet.of([(0, 1), (1, 2)], points=[1])
        assert s.intervals == ((F(0), F(1)), (F(1), F(2)))
        assert s.points == (F(1),)

    def test_union_atom_overlap(self):
        with pytest.raises(NonDisjointError):
            union([AtomSet.of("a", "b"), AtomSet.of("b")])

    def test_union_catalog_duplicate(self):
        with pytest.raises(NonDisjointError):
            union([CatalogUnion.of("L"), CatalogUnion.of("L")])

    def test_contains(self):
        big = IntervalSet.of([(0, 1)], points=[2])
        assert contains(big, IntervalSet.of([(F(1, 4), F(1, 2))]))
        assert contains(big, IntervalSet.of(points=[2]))
        assert not contains(big, IntervalSet.of([(F(1, 2), F(3, 2))]))

    def test_intersect(self):
        s = IntervalSet.of([(0, 2)], points=[3])
        w = IntervalSet.of([(1, 4)])
        assert intersect_intervals(s, w) == IntervalSet.of([(1, 2)], points=[3])


class TestAtomSpace:
    def test_measure_is_dominance_sum(self):
        sp = AtomSpace.of({"a": H(1, 2), "b": H(0, 5), "c": H(1, 3)})
        assert sp.measure(AtomSet.of("a", "b", "c")) == H(1, 5)
        assert sp.measure(AtomSet.of("b")) == H(0, 5)
        assert sp.measure(AtomSet(frozenset())) == ZERO

    def test_unknown_atom(self):
        sp = AtomSpace.of({"a": H(1, 2)})
        with pytest.raises(UnknownSetError):
            sp.measure(AtomSet.of("z"))

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError):
            AtomSpace.of({"a": H(1, -1)})


class TestIntervalSpace:
    def test_positive_length(self):
        sp = IntervalSpace.of(0, 1, dim_offset=1)
        assert sp.measure(IntervalSet.of([(0, F(1, 2))])) == H(1, "1/2")

    def test_null_sets_are_zero(self):
        sp = IntervalSpace.of(0, 1, dim_offset=1)
        assert sp.measure(IntervalSet.of(points=[F(1, 3), F(2, 3)])) == ZERO

    def test_density(self):
        # density 2x on (0,1): nu((0,1)) = 1, nu((0,1/2)) = 1/4
        sp = IntervalSpace.of(0, 1, dim_offset=2, density=(0, 2))
        assert sp.nu(IntervalSet.of([(0, 1)])) == 1
        assert sp.measure(IntervalSet.of([(0, F(1, 2))])) == H(2, "1/4")

    def test_out_of_bounds(self):
        sp = IntervalSpace.of(0, 1)
        with pytest.raises(UnknownSetError):
            sp.nu(IntervalSet.of([(0, 2)]))


class TestCatalogSpace:
    def test_declared_values_dominance_sum(self):
        sp = CatalogSpace.of(
            [
                CatalogSet("L", ambient=2, hvalue=H(1, "inf"), kind="line"),
                CatalogSet("p", ambient=2, hvalue=H(0, 1), kind="finite-points"),
            ]
        )
        assert sp.measure(CatalogUnion.of("L", "p")) == H(1, "inf")
        assert sp.measure(CatalogUnion.of("p")) == H(0, 1)

    def test_dim0_must_be_count(self):
        with pytest.raises(ValueError):
            CatalogSet("bad", ambient=1, hvalue=H(0, "1/2"))

    def test_dim_bounded_by_ambient(self):
        with pytest.raises(ValueError):
            CatalogSet("bad", ambient=1, hvalue=H(2, 1))

    def test_unknown_name(self):
        sp = CatalogSpace.of([])
        with pytest.raises(UnknownSetError):
            sp.measure(CatalogUnion.of("ghost"))


class TestScaledEmbedding:
    def test_atoms(self):
        sp = scaled_embedding(2, {"a": "3/2", "b": 0})
        assert sp.weights["a"] == H(2, "3/2")
        # null atoms embed to (0,0), not (d0, 0)
        assert sp.weights["b"] == ZERO

    def test_interval(self):
        sp = scaled_embedding(1, (F(0), F(1)))
        assert isinstance(sp, IntervalSpace)
        assert sp.measure(IntervalSet.of([(0, 1)])) == H(1, 1)


class TestHMeasureValidation:
    def test_additive_partition(self):
        sp = AtomSpace.of({"a": H(1, 2), "b": H(0, "inf"), "c": H(1, 1)})
        parts = [AtomSet.of("a"), AtomSet.of("b", "c")]
        assert validate_h_measure(sp, parts)

    def test_interval_partition(self):
        sp = IntervalSpace.of(0, 1, dim_offset=1)
        parts = [
            IntervalSet.of([(0, F(1, 2))]),
            IntervalSet.of([(F(1, 2), 1)], points=[F(1, 2)]),
        ]
        assert validate_h_measure(sp, parts)

    def test_overlap_raises(self):
        sp = AtomSpace.of({"a": H(1, 2)})
        with pytest.raises(NonDisjointError):
            validate_h_measure(sp, [AtomSet.of("a"), AtomSet.of("a")])


class TestJson:
    def test_set_round_trip(self):
        for s in [
            AtomSet.of("a", "b"),
            IntervalSet.of([(0, F(1, 2))], points=[F(3, 4)]),
            CatalogUnion.of("L", "p"),
        ]:
            assert set_from_json(set_to_json(s)) == s

    def test_space_round_trip(self):
        spaces = [
            AtomSpace.of({"a": H(1, "inf"), "b": H(0, 3)}),
            IntervalSpace.of(0, 1, dim_offset="3/2", density=(1, 2)),
            CatalogSpace.of([CatalogSet("L", 2, H(1, "inf"), "line")]),
        ]
        for sp in spaces:
            assert space_from_json(space_to_json(sp)) == sp
