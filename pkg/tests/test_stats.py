from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ffgeom import oracles, stats
from ffgeom.errors import InvalidDistanceError
from ffgeom.field import PrimeField
from ffgeom.plane import Line
from ffgeom.pointsets import construct, from_points

F5, F7 = PrimeField(5), PrimeField(7)
SQUARE = from_points(F5, [(0, 0), (2, 0), (0, 2), (2, 2)])


def test_square_multiset():
    w = stats.bisector_multiset(SQUARE)
    assert dict(w) == {Line(1, 0, 4): 4, Line(0, 1, 4): 4, Line(1, 1, 3): 2, Line(1, 4, 0): 2}
    assert stats.distinct_bisector_count(SQUARE) == 4
    assert oracles.bisector_weights_bruteforce(SQUARE) == [2, 2, 4, 4]


def test_small_multisets():
    assert dict(stats.bisector_multiset(from_points(F5, [(0, 0), (2, 0)]))) == {Line(1, 0, 4): 2}
    assert not stats.bisector_multiset(from_points(F5, [(0, 0), (1, 2)]))


def test_square_energy():
    assert stats.bisector_energy(SQUARE) == 40 == oracles.energy_bruteforce(SQUARE)
    assert stats.bisector_energy(from_points(F5, [(1, 1)])) == 0
    assert stats.bisector_energy(from_points(F5, [])) == 0


def test_fixed_distance_example():
    classes = stats.distance_classes(SQUARE)
    assert classes[4] == 8
    bound = stats.fixed_distance_bound(5, 8)
    assert bound == Fraction(384, 5)
    assert stats.q_prime_d(SQUARE, 4) == oracles.q_prime_bruteforce(SQUARE)[4] <= bound
    with pytest.raises(InvalidDistanceError):
        stats.q_prime_d(SQUARE, 0)
    assert stats.q_prime_d(from_points(F5, [(1, 1)]), 2) == 0


def test_q_double_prime_examples():
    assert stats.q_double_prime(SQUARE) == 0
    P = construct(F7, "random", n=30, seed=3)
    assert stats.q_double_prime(P) == 0 == oracles.q_double_prime_bruteforce(P)


def test_distance_class_examples():
    full5 = stats.distance_classes(construct(F5, "full_plane"))
    assert full5 == {0: 225, 1: 100, 2: 100, 3: 100, 4: 100}
    full7 = stats.distance_classes(construct(F7, "full_plane"))
    assert full7[0] == 49 and all(full7[d] == 392 for d in range(1, 7))
    single = stats.distance_classes(from_points(F5, [(3, 3)]))
    assert single == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0}


def test_isosceles_examples():
    assert stats.isosceles_count(SQUARE) == 8
    assert stats.isosceles_count(from_points(F5, [(0, 0), (1, 0), (2, 0)])) == 2
    assert stats.isosceles_count(from_points(F5, [(0, 0), (1, 0)])) == 0


def test_pinned_examples():
    full = stats.pinned_distance_counts(construct(F5, "full_plane"))
    assert set(full.values()) == {5}
    pinned = stats.pinned_distance_counts(SQUARE)
    assert pinned[(0, 0)] == 3 and sorted(pinned.values()) == [3, 3, 3, 3]
    assert list(stats.pinned_distance_counts(from_points(F5, [(0, 0)])).values()) == [1]
    s = stats.pinned_summary(pinned, 5)
    assert s["min"] == 3 and s["at_least_half_q"] == 4


def test_ratio_reports_are_finite():
    P = construct(PrimeField(13), "random", n=40, seed=1)
    rep = stats.ratio_reports(P)
    assert all(v == v and abs(v) < float("inf") for v in rep.values())


def random_sets(qs=(3, 5, 7)):
    return st.sampled_from(qs).flatmap(
        lambda q: st.sets(st.tuples(st.integers(0, q - 1), st.integers(0, q - 1)), max_size=14).map(
            lambda s: from_points(PrimeField(q), s)
        )
    )


@settings(max_examples=60, deadline=None)
@given(random_sets())
def test_counts_match_oracles(P):
    assert stats.bisector_energy(P) == oracles.energy_bruteforce(P)
    assert stats.q_prime_counts(P) == oracles.q_prime_bruteforce(P)
    assert stats.q_double_prime(P) == oracles.q_double_prime_bruteforce(P)
    assert stats.isosceles_count(P) == oracles.isosceles_bruteforce(P)
    assert sorted(stats.bisector_multiset(P).values()) == oracles.bisector_weights_bruteforce(P)


@settings(max_examples=60, deadline=None)
@given(random_sets((5, 13)))
def test_bounds_hold(P):
    q, n = P.q, len(P)
    classes = stats.distance_classes(P)
    assert sum(classes.values()) == n * n
    assert classes[0] < 2 * n * q or n == 0
    assert stats.q_double_prime(P) <= 2 * (n * n - classes[0])
    qp = stats.q_prime_counts(P)
    for d in range(1, q):
        assert qp[d] <= stats.fixed_distance_bound(q, classes[d])
    w = stats.bisector_multiset(P)
    # Cauchy-Schwarz
    assert (n * n - classes[0]) ** 2 <= len(w) * stats.bisector_energy(P, w)


def test_q_double_prime_vanishes_on_whole_plane():
    # all four cross distances zero puts y, w on B(x, z) and x, z on B(y, w),
    # so the two bisectors are different lines: no quadruple qualifies
    P = construct(F5, "full_plane")
    assert oracles.q_double_prime_bruteforce(P) == 0 == stats.q_double_prime(P)


@pytest.mark.parametrize("q,k", [(5, 2), (5, 3), (7, 2), (7, 3)])
def test_parallel_lines_energy_counts_distinct_pairs(q, k):
    # each perpendicular line is the bisector of |P|(q-1)/q pairs of distinct points
    P = construct(PrimeField(q), "parallel_lines", k=k)
    n = len(P)
    assert stats.bisector_energy(P) * q >= n * n * (q - 1) ** 2
