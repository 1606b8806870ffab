"""Acceptance criteria, one marked group per criterion.

A summary line per criterion is printed at the end of the run (see conftest).
"""

import math
import statistics
import time
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from ffgeom import motions as mo
from ffgeom import oracles, plane, spectral, stats
from ffgeom.field import PrimeField
from ffgeom.motions import Kind
from ffgeom.plane import Circle, Point
from ffgeom.pointsets import Prng, construct, from_points
from ffgeom.verify import random_weighted_configuration, sample_sets

ALL_Q = [3, 5, 7, 11, 13]


def c(n, title):
    return pytest.mark.criterion(n, title)


def unit_count(q):
    return q - 1 if q % 4 == 1 else q + 1


# 1 ------------------------------------------------------------------------

C1 = c(1, "circle counts by case table")


@C1
def test_c1_circle_counts():
    start = time.perf_counter()
    for q in ALL_Q:
        F = PrimeField(q)
        rng = Prng(q)
        centers = [Point(0, 0)] + [Point(rng.below(q), rng.below(q)) for _ in range(4)]
        for u in centers:
            for r in range(q):
                size = len(plane.circle_points(F, Circle(u, r)))
                if q % 4 == 1:
                    want = 2 * q - 1 if r == 0 else q - 1
                else:
                    want = 1 if r == 0 else q + 1
                assert size == want, (q, u, r, size)
    assert time.perf_counter() - start < 5


# 2 ------------------------------------------------------------------------


@c(2, "rotation and reflection matrix counts")
@pytest.mark.parametrize("q", ALL_Q)
def test_c2_matrix_counts(q):
    F = PrimeField(q)
    assert len(mo.enumerate_rotation_matrices(F)) == unit_count(q)
    assert len(mo.enumerate_reflection_matrices(F)) == unit_count(q)


# 3 ------------------------------------------------------------------------

C3 = c(3, "reflection-pair decomposition counts and counting identity")


def _pair_products(F):
    refl = mo.enumerate_reflections(F)
    return Counter(mo.compose(F, s1, s2) for s1 in refl for s2 in refl)


@C3
@pytest.mark.parametrize("q", [5, 7])
def test_c3_decomposition_counts(q):
    start = time.perf_counter()
    F = PrimeField(q)
    products = _pair_products(F)
    for m in mo.enumerate_motions(F):
        n = products.get(m, 0)
        if m.kind is Kind.ROTATION:
            assert n == unit_count(q), m
        elif m.kind is Kind.TRANSLATION:
            assert n == (q if plane.norm(F, m.translation) else 0), m
        elif m.kind is Kind.IDENTITY:
            assert n == q * unit_count(q)
        else:
            assert n == 0
    assert time.perf_counter() - start < 30


@C3
@pytest.mark.parametrize("q", [5, 13])
def test_c3_counting_identity(q):
    F = PrimeField(q)
    products = _pair_products(F)
    by_kind = Counter()
    for m, n in products.items():
        key = m.kind
        if key is Kind.TRANSLATION and plane.norm(F, m.translation) == 0:
            key = "isotropic"
        by_kind[key] += n
    assert by_kind[Kind.ROTATION] == (q - 2) * q * q * (q - 1)
    assert by_kind[Kind.TRANSLATION] == (q - 1) ** 2 * q
    assert by_kind[Kind.IDENTITY] == (q - 1) * q
    assert by_kind["isotropic"] == 0
    assert sum(by_kind.values()) == (q - 1) ** 2 * q * q
    assert (q - 1) ** 2 * q * q == (q - 2) * q * q * (q - 1) + (q - 1) ** 2 * q + (q - 1) * q


# 4 ------------------------------------------------------------------------

C4 = c(4, "shared non-isotropic bisector forces equal cross distances")


@C4
def test_c4_exhaustive_q5():
    q = 5
    grid = np.array(plane.all_points(PrimeField(q)), dtype=np.int64)
    idx = np.stack(np.meshgrid(*[np.arange(q * q)] * 4, indexing="ij"), axis=-1).reshape(-1, 4)
    assert len(idx) == 5**8
    bad, held = oracles.distance_decomposition_violations(q, grid[idx])
    assert held > 0
    assert bad == 0


@C4
def test_c4_sampled_q13():
    q = 13
    grid = np.array(plane.all_points(PrimeField(q)), dtype=np.int64)
    rng = np.random.default_rng(20240613)
    total_bad = 0
    total = 0
    for _ in range(10):
        idx = rng.integers(0, q * q, size=(100_000, 4))
        bad, _ = oracles.distance_decomposition_violations(q, grid[idx])
        total_bad += bad
        total += len(idx)
    assert total == 10**6
    # uniform quadruples almost never share a bisector; add ones that do by construction
    F = PrimeField(q)
    refl = mo.enumerate_reflections(F)
    prng = Prng(13)
    quads = []
    for _ in range(20_000):
        x, y = Point(prng.below(q), prng.below(q)), Point(prng.below(q), prng.below(q))
        S = refl[prng.below(len(refl))]
        T = mo.translation(F, Point(prng.below(q), prng.below(q)))
        # x, S(x) and y, S(y) share the fixed line of S as bisector
        quads.append([x, y, S(x), S(y)])
        quads.append([x, T(x), y, T(y)])
    bad, held = oracles.distance_decomposition_violations(q, np.array(quads, dtype=np.int64))
    assert held > 10_000
    assert total_bad == 0 and bad == 0


# 5 ------------------------------------------------------------------------

C5 = c(5, "A^2 residual case table and row sums")


@C5
def test_c5_full_q3():
    G = spectral.bisector_graph(PrimeField(3), 1)
    E, max_rs = spectral.a_squared_residual(G)
    assert np.array_equal(E, spectral.expected_residual(G))
    assert set(np.abs(E).sum(axis=1).tolist()) == {(3 - 1) * (3 + 1)}


@C5
@pytest.mark.parametrize("d", [1, 2])
def test_c5_sampled_q5(d):
    G = spectral.bisector_graph(PrimeField(5), d)
    rows = sorted({Prng(d).below(G.n) for _ in range(30)})
    E, _ = spectral.a_squared_residual(G, rows)
    assert np.array_equal(E, spectral.expected_residual(G)[rows])
    assert set(np.abs(E).sum(axis=1).tolist()) == {3 * (5 - 1) ** 2}


# 6 ------------------------------------------------------------------------

C6 = c(6, "second eigenvalue bounds")


@C6
def test_c6_bisector_graphs():
    start = time.perf_counter()
    for q in (3, 5):
        for d in range(1, q):
            G = spectral.bisector_graph(PrimeField(q), d)
            eigs = spectral.spectrum(G)
            principal, rest = spectral.split_principal(eigs)
            assert abs(principal - q * unit_count(q)) <= 1e-8
            assert max(abs(x) for x in rest) <= 2 * (q - 1) + 1e-8
    assert time.perf_counter() - start < 60


@C6
def test_c6_incidence_graphs():
    start = time.perf_counter()
    for q in (3, 5, 7, 11):
        eigs = spectral.spectrum(spectral.incidence_graph(PrimeField(q)))
        principal, rest = spectral.split_principal(eigs)
        assert abs(principal - (q + 1)) <= 1e-8
        assert max(abs(x) for x in rest) <= math.sqrt(q) + 1e-8
    assert time.perf_counter() - start < 60


# 7 ------------------------------------------------------------------------


@c(7, "fixed-distance energy bound, exact rationals")
@pytest.mark.parametrize("q", [5, 7, 13])
def test_c7_fixed_distance_energy(q):
    F = PrimeField(q)
    for P in sample_sets(F, 100, lo=10, hi=40, seed=1):
        assert 10 <= len(P) <= 40
        qp = oracles.q_prime_bruteforce(P)
        classes = stats.distance_classes(P)
        for d in range(1, q):
            bound = Fraction(classes[d] ** 2, q) + 2 * (q - 1) * classes[d]
            assert Fraction(qp[d]) <= bound, (P, d)


# 8 ------------------------------------------------------------------------

C8 = c(8, "weighted point-line incidence bound")


@C8
@pytest.mark.parametrize("q", [3, 5, 7])
def test_c8_full_configuration(q):
    F = PrimeField(q)
    pw = {x: 1 for x in plane.all_points(F)}
    lw = {l: 1 for l in plane.all_lines(F)}
    rep = spectral.weighted_incidence_check(F, pw, lw)
    assert rep["incidences"] == q**3 + q**2
    assert rep["passed"]


@C8
@pytest.mark.parametrize("q", [5, 7])
def test_c8_random_weighted(q):
    F = PrimeField(q)
    for seed in range(50):
        pw, lw = random_weighted_configuration(F, 1000 * q + seed)
        rep = spectral.weighted_incidence_check(F, pw, lw)
        # independent incidence count by point enumeration along each line
        direct = sum(w * sum(pw.get(x, 0) for x in plane.line_points(F, l)) for l, w in lw.items())
        assert rep["incidences"] == direct
        assert rep["passed"], (seed, rep)


# 9 ------------------------------------------------------------------------

C9 = c(9, "energy identity and parallel-lines tightness")


@C9
def test_c9_energy_identity():
    rng = Prng(9)
    for i in range(50):
        q = ALL_Q[i % len(ALL_Q)]
        F = PrimeField(q)
        n = 1 + rng.below(min(30, q * q))
        P = construct(F, "random", n=n, seed=rng.next_u64())
        assert stats.bisector_energy(P) == oracles.energy_bruteforce(P)


@C9
@pytest.mark.parametrize("q,k", [(5, 2), (5, 3), (7, 2), (7, 3)])
def test_c9_tightness(q, k):
    P = construct(PrimeField(q), "parallel_lines", k=k)
    energy = oracles.energy_bruteforce(P)
    assert energy == stats.bisector_energy(P)
    assert energy >= q * len(P) ** 2


# 10 -----------------------------------------------------------------------


def _generated_sets(q):
    F = PrimeField(q)
    i = F.sqrt_minus_one
    sets = [construct(F, "isotropic_lines", k=k) for k in (1, 2, 3)]
    sets += [construct(F, "parallel_lines", k=2), construct(F, "single_line")]
    sets.append(construct(F, "circle", center=(1, 2), radius=0))
    crossing = [(t, i * t % q) for t in range(q)] + [(t, -i * t % q) for t in range(q)]
    sets.append(from_points(F, crossing))
    grid = [(t, (s * i * t + j) % q) for s in (1, -1) for j in range(2) for t in range(q)]
    sets.append(from_points(F, grid))
    sets += sample_sets(F, 10, lo=10, hi=40, seed=10)
    if q == 5:
        sets.append(construct(F, "full_plane"))
    return sets


@c(10, "Q'' and Pi_0 bounds")
@pytest.mark.parametrize("q", [5, 13])
def test_c10_zero_distance_bounds(q):
    # sets containing distinct points at distance zero, so the bound is exercised
    with_null_pairs = 0
    for P in _generated_sets(q):
        n = len(P)
        classes = stats.distance_classes(P)
        qpp = stats.q_double_prime(P)
        if n <= 60:
            assert qpp == oracles.q_double_prime_bruteforce(P)
        with_null_pairs += classes[0] > n
        assert qpp <= 2 * (n * n - classes[0])
        assert classes[0] < 2 * n * q
    assert with_null_pairs >= 5


# 11 -----------------------------------------------------------------------

C11 = c(11, "isosceles triangles equal bisector incidences; square fixture")


@C11
def test_c11_triangles_are_incidences():
    rng = Prng(11)
    for i in range(50):
        q = ALL_Q[1 + i % 4]
        F = PrimeField(q)
        P = construct(F, "random", n=2 + rng.below(min(28, q * q - 2)), seed=rng.next_u64())
        w = stats.bisector_multiset(P)
        tri = oracles.isosceles_bruteforce(P)
        assert stats.isosceles_count(P) == tri
        assert spectral.incidences(F, {x: 1 for x in P}, w) == tri


@C11
def test_c11_square_fixture():
    F = PrimeField(5)
    sq = from_points(F, [(0, 0), (2, 0), (0, 2), (2, 2)])
    assert oracles.energy_bruteforce(sq) == 40
    assert len(oracles.bisector_weights_bruteforce(sq)) == 4
    assert oracles.isosceles_bruteforce(sq) == 8
    N = oracles.norm_matrix(sq)
    assert sorted(len(set(row)) for row in N.tolist()) == [3, 3, 3, 3]
    assert stats.bisector_energy(sq) == 40
    assert stats.distinct_bisector_count(sq) == 4
    assert stats.isosceles_count(sq) == 8
    assert sorted(stats.pinned_distance_counts(sq).values()) == [3, 3, 3, 3]


# 12 -----------------------------------------------------------------------

# reported, never judged; "stable" means the spread across
# seeds stays within half the mean
STABILITY = 0.5
REPORTED = ("energy_over_bound", "distinct_bisectors_over_q2", "pinned_proportion_at_least_half_q")


@c(12, "ratio reports finite and stable across seeds")
@pytest.mark.parametrize("q", [13, 17, 19])
def test_c12_ratio_reports(q, capsys):
    F = PrimeField(q)
    n = math.ceil(q ** (4 / 3))
    reports = [stats.ratio_reports(construct(F, "random", n=n, seed=s)) for s in range(5)]
    with capsys.disabled():
        for name in REPORTED:
            values = [r[name] for r in reports]
            print(f"\n  report q={q} |P|={n} {name}: " + " ".join(f"{v:.6g}" for v in values), end="")
    for name in REPORTED:
        values = [r[name] for r in reports]
        assert all(math.isfinite(v) for v in values)
        mean = statistics.fmean(values)
        assert max(values) - min(values) <= STABILITY * abs(mean) + 1e-12
