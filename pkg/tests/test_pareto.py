import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgipro.errors import DimensionMismatch
from pgipro.pareto import (
    Region,
    filter_nondominated,
    pareto_dominates,
    region_contains,
    strictly_below,
)

vectors = st.lists(
    st.integers(min_value=0, max_value=6), min_size=2, max_size=3
).map(tuple)


def vector_sets(n=30):
    return st.lists(
        st.tuples(
            st.integers(min_value=0, max_value=8), st.integers(min_value=0, max_value=8)
        ),
        min_size=1,
        max_size=n,
    )


class TestDominance:
    def test_dominates_with_tie(self):
        assert pareto_dominates((1, 2), (1, 3))

    def test_equal_vectors_do_not_dominate(self):
        assert not pareto_dominates((1, 2), (1, 2))

    def test_incomparable(self):
        assert not pareto_dominates((2, 1), (1, 2))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            pareto_dominates((1, 2), (1, 2, 3))

    @given(vector_sets())
    @settings(max_examples=200, deadline=None)
    def test_strict_partial_order_laws(self, points):
        for a in points:
            assert not pareto_dominates(a, a)
            for b in points:
                if pareto_dominates(a, b):
                    assert not pareto_dominates(b, a)
                for c in points:
                    if pareto_dominates(a, b) and pareto_dominates(b, c):
                        assert pareto_dominates(a, c)


class TestStrictlyBelow:
    def test_all_strict(self):
        assert strictly_below((1, 2), (2, 3))

    def test_tie_fails(self):
        assert not strictly_below((1, 3), (2, 3))

    def test_fixture_extremes_tie_on_crossings(self):
        assert not strictly_below((568, 8), (1335, 8))

    @given(st.tuples(vectors, vectors))
    @settings(max_examples=200, deadline=None)
    def test_strictly_below_implies_dominates(self, pair):
        a, b = pair
        if len(a) == len(b) and strictly_below(a, b):
            assert pareto_dominates(a, b)


class TestFilterNondominated:
    def test_basic(self):
        out = filter_nondominated([(1, 3), (2, 2), (3, 1), (2, 3)])
        assert sorted(out) == [(1, 3), (2, 2), (3, 1)]

    def test_reference_seven_vector_front_all_kept(self):
        seven = [(928, 3), (1335, 2), (703, 4), (603, 5), (586, 6), (568, 8), (574, 7)]
        assert len(filter_nondominated(seven)) == 7

    def test_empty(self):
        assert filter_nondominated([]) == []

    def test_duplicates_collapse_to_first(self):
        assert filter_nondominated([(1.0, 1.0), (1, 1)]) == [(1.0, 1.0)]

    @given(vector_sets(40))
    @settings(max_examples=150, deadline=None)
    def test_idempotent_and_keeps_componentwise_minima(self, points):
        once = filter_nondominated(points)
        assert filter_nondominated(once) == once
        m = len(points[0])
        for i in range(m):
            best = min(p[i] for p in points)
            assert any(p[i] == best for p in once)

    @given(vector_sets(60))
    @settings(max_examples=150, deadline=None)
    def test_agrees_with_pairwise_bruteforce(self, points):
        floats = [tuple(float(x) for x in p) for p in points]
        expected = set()
        for p in dict.fromkeys(floats):
            dominated = any(
                all(qx <= px for qx, px in zip(q, p)) and q != p
                for q in dict.fromkeys(floats)
            )
            if not dominated:
                expected.add(p)
        assert set(filter_nondominated(points)) == expected

    def test_large_random_matches_bruteforce(self):
        import random

        rng = random.Random(99)
        points = [
            (rng.randint(0, 60), rng.randint(0, 60), rng.randint(0, 60))
            for _ in range(500)
        ]
        ours = set(filter_nondominated(points))
        floats = [tuple(float(x) for x in p) for p in points]
        unique = list(dict.fromkeys(floats))
        brute = {
            p
            for p in unique
            if not any(
                all(qx <= px for qx, px in zip(q, p)) and q != p for q in unique
            )
        }
        assert ours == brute


class TestRegion:
    def test_empty_region_rejected(self):
        with pytest.raises(ValueError):
            Region((0.0, 0.0), (0.0, 1.0))

    def test_contains_strict(self):
        r = Region((0.0, 0.0), (4.0, 10.0))
        assert region_contains(r, (2, 6), strict_upper=True)

    def test_upper_tie_excluded_when_strict(self):
        r = Region((0.0, 0.0), (4.0, 10.0))
        assert not region_contains(r, (4, 5), strict_upper=True)

    def test_upper_tie_included_when_not_strict(self):
        r = Region((0.0, 0.0), (4.0, 10.0))
        assert region_contains(r, (4, 5), strict_upper=False)

    def test_diameter(self):
        assert Region((0.0, 0.0), (4.0, 10.0)).diameter() == 10.0
