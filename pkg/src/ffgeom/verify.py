"""Check batteries behind ``ffgeom verify``.

Each battery takes a field and returns :class:`CheckRecord` rows. Exact
statements become pass/fail records; quantities whose constants are implicit
become ``report`` records.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import motions, oracles, plane, spectral, stats
from .field import PrimeField
from .plane import Circle, Point
from .pointsets import PointSet, Prng, construct, from_points

SUITES = ("field", "plane", "motions", "spectral", "energy", "incidence")
SIZE_GUARDS = {
    "field": 2**31 - 1,
    "plane": 31,
    "motions": 13,
    "spectral": spectral.MAX_EIGEN_Q,
    "energy": 13,
    "incidence": spectral.MAX_INCIDENCE_Q,
}


@dataclass(frozen=True)
class CheckRecord:
    name: str
    status: str  # pass | fail | report
    expected: str
    actual: str
    q: int

    def as_dict(self) -> dict:
        return asdict(self)


def _check(name: str, q: int, expected, actual, ok: bool | None = None) -> CheckRecord:
    if ok is None:
        ok = expected == actual
    return CheckRecord(name, "pass" if ok else "fail", str(expected), str(actual), q)


def _report(name: str, q: int, value: float, note: str = "") -> CheckRecord:
    return CheckRecord(name, "report", note, f"{value:.12g}", q)


def circle_count_expected(q: int, r: int) -> int:
    if q % 4 == 1:
        return 2 * q - 1 if r == 0 else q - 1
    return 1 if r == 0 else q + 1


def unit_count(q: int) -> int:
    return q - 1 if q % 4 == 1 else q + 1


# ----------------------------------------------------------------- field


def field_suite(F: PrimeField) -> list[CheckRecord]:
    q = F.p
    xs = range(1, q) if q <= 2000 else [1, 2, q - 1, q // 2, q // 3 + 1]
    out = [
        _check("field.inverse.roundtrip", q, True, all(x * F.inv(x) % q == 1 for x in xs)),
        _check(
            "field.inverse.involution", q, True, all(F.inv(F.inv(x)) == x for x in xs)
        ),
    ]
    if q <= 2000:
        roots = {x: F.sqrt(x) for x in range(q)}
        canonical = all(
            r is None or (r * r % q == x and r <= q - r or r == 0) for x, r in roots.items()
        )
        out.append(_check("field.sqrt.canonical", q, True, canonical))
        squares = sum(1 for x in range(1, q) if roots[x] is not None)
        out.append(_check("field.sqrt.square_count", q, (q - 1) // 2, squares))
    i = F.sqrt_minus_one
    out.append(_check("field.sqrt_minus_one.presence", q, q % 4 == 1, i is not None))
    if i is not None:
        out.append(_check("field.sqrt_minus_one.value", q, q - 1, i * i % q))
    return out


# ----------------------------------------------------------------- plane


def _sample_centers(F: PrimeField, k: int = 3) -> list[Point]:
    q = F.p
    return [Point(0, 0), Point(1 % q, 2 % q), Point(q - 1, q // 2)][:k]


def plane_suite(F: PrimeField) -> list[CheckRecord]:
    q = F.p
    out = []
    for r in range(q):
        ok = all(
            len(plane.circle_points(F, Circle(u, r))) == circle_count_expected(q, r)
            for u in _sample_centers(F)
        )
        tag = "r_zero" if r == 0 else "r_nonzero"
        out.append(_check(f"plane.circles.count.{tag}.r{r}", q, circle_count_expected(q, r), "all sampled centers" if ok else "mismatch", ok))
    for u in _sample_centers(F, 2):
        lines = plane.lines_through(u, F)
        iso = sum(plane.is_isotropic(F, l) for l in lines)
        out.append(_check(f"plane.lines_through.count.{u[0]}_{u[1]}", q, q + 1, len(lines)))
        out.append(_check(f"plane.lines_through.isotropic.{u[0]}_{u[1]}", q, 2 if q % 4 == 1 else 0, iso))
    pts = plane.all_points(F)
    rng = Prng(q)
    pairs = [(pts[rng.below(len(pts))], pts[rng.below(len(pts))]) for _ in range(40)]
    locus_ok = True
    symmetric = True
    zero_iso = True
    for a, b in pairs:
        if a == b:
            continue
        l = plane.bisector(F, a, b)
        symmetric &= l == plane.bisector(F, b, a)
        locus_ok &= all(
            plane.on_line(F, l, c) == (plane.dist(F, c, a) == plane.dist(F, c, b)) for c in pts
        )
        if plane.dist(F, a, b) == 0:
            zero_iso &= plane.is_isotropic(F, l)
    out.append(_check("plane.bisector.locus", q, True, locus_ok))
    out.append(_check("plane.bisector.symmetric", q, True, symmetric))
    out.append(_check("plane.bisector.zero_distance_isotropic", q, True, zero_iso))
    if q <= 13:
        grid = np.array(pts, dtype=np.int64)
        diff = grid[:, None, :] - grid[None, :, :]
        counts = np.bincount(((diff**2).sum(axis=2) % q).ravel(), minlength=q)
        expected = [q * q * circle_count_expected(q, r) for r in range(q)]
        out.append(_check("plane.circles.ordered_pairs", q, expected, counts.tolist()))
    return out


# ----------------------------------------------------------------- motions


def motions_suite(F: PrimeField) -> list[CheckRecord]:
    q = F.p
    out = []
    rot = motions.enumerate_rotation_matrices(F)
    ref = motions.enumerate_reflection_matrices(F)
    out.append(_check("motions.rotation_matrices.count", q, unit_count(q), len(rot)))
    out.append(_check("motions.reflection_matrices.count", q, unit_count(q), len(ref)))
    unitary = all(
        motions.mat_mul(F, motions.transpose(M), M) == motions.identity_matrix() for M in rot + ref
    )
    out.append(_check("motions.unitary", q, True, unitary))

    u = Point(1 % q, 2 % q)
    non_trivial = [R for R in rot if R != motions.identity_matrix()]
    rot_counts = {len(motions.reflection_pair_decompositions(F, motions.rotation_about(F, u, R))) for R in non_trivial}
    out.append(_check("motions.decompositions.rotation", q, {unit_count(q)}, rot_counts))
    d_plain = Point(1, 0)
    out.append(
        _check(
            "motions.decompositions.translation_nonisotropic",
            q,
            q,
            len(motions.reflection_pair_decompositions(F, motions.translation(F, d_plain))),
        )
    )
    if F.sqrt_minus_one is not None:
        d_iso = Point(1, F.sqrt_minus_one)
        out.append(
            _check(
                "motions.decompositions.translation_isotropic",
                q,
                0,
                len(motions.reflection_pair_decompositions(F, motions.translation(F, d_iso))),
            )
        )
    if q <= 13:
        census = motions.reflection_pair_census(F)
        n_ref = len(motions.enumerate_reflections(F))
        out.append(_check("motions.reflections.count", q, q * unit_count(q), n_ref))
        if q % 4 == 1:
            expected = {
                "rotation": (q - 2) * q * q * (q - 1),
                "translation_nonisotropic": (q - 1) ** 2 * q,
                "identity": (q - 1) * q,
            }
            out.append(_check("motions.counting_identity", q, expected, dict(sorted(census.items()))))
            out.append(
                _check(
                    "motions.counting_identity.total",
                    q,
                    (q - 1) ** 2 * q * q,
                    sum(census.values()),
                )
            )
        else:
            expected = {
                "rotation": (q * (q + 1)) ** 2 - (q * q - 1) * q - q * (q + 1),
                "translation_nonisotropic": (q * q - 1) * q,
                "identity": q * (q + 1),
            }
            out.append(_check("motions.reflection_census", q, expected, dict(sorted(census.items()))))
    rng = Prng(1000 + q)
    violations = 0
    for _ in range(300 if q <= 7 else 60):
        quad = [Point(rng.below(q), rng.below(q)) for _ in range(2)]
        x, y = quad
        if plane.dist(F, x, y) == 0:
            continue
        m = motions.enumerate_motions(F)[rng.below(len(motions.enumerate_motions(F)))]
        z, w = m(x), m(y)
        if (x, y) == (z, w):
            continue
        direct = motions.count_reflection_pairs_mapping(F, x, y, z, w) if q <= 7 else None
        connecting = motions.motion_mapping_pair(F, x, y, z, w)
        via = len(motions.reflection_pair_decompositions(F, connecting))
        translate = (x[0] - y[0] - z[0] + w[0]) % q == 0 and (x[1] - y[1] - z[1] + w[1]) % q == 0
        if not translate:
            want = unit_count(q)
        else:
            want = q if plane.dist(F, x, z) else 0
        if via != want or (direct is not None and direct != want):
            violations += 1
    out.append(_check("motions.reflection_pairs_mapping", q, 0, violations))

    grid = np.array(plane.all_points(F), dtype=np.int64)
    rng = np.random.default_rng(q)
    if q <= 5:
        idx = np.array(list(itertools.product(range(q * q), repeat=4)), dtype=np.int64)
    else:
        idx = rng.integers(0, q * q, size=(200_000, 4))
    bad, held = oracles.distance_decomposition_violations(q, grid[idx])
    out.append(_check("motions.distance_decomposition", q, 0, bad))
    out.append(_report("motions.distance_decomposition.hypothesis_hits", q, held, "quadruples meeting the hypothesis"))
    return out


# ----------------------------------------------------------------- spectral


def spectral_suite(F: PrimeField) -> list[CheckRecord]:
    q = F.p
    out = []
    a, b = spectral.residual_coefficients(q)
    row_sum = 3 * (q - 1) ** 2 if q % 4 == 1 else (q - 1) * (q + 1)
    degree = q * unit_count(q)
    for d in sorted({1, q - 1}):
        G = spectral.bisector_graph(F, d)
        out.append(_check(f"spectral.bisector_graph.d{d}.order", q, q * q * unit_count(q), G.n))
        out.append(_check(f"spectral.bisector_graph.d{d}.regular", q, {degree}, set(G.degrees().tolist())))
        E, max_rs = spectral.a_squared_residual(G)
        out.append(_check(f"spectral.a_squared.d{d}.case_table", q, True, bool(np.array_equal(E, spectral.expected_residual(G)))))
        out.append(_check(f"spectral.a_squared.d{d}.row_sums", q, {row_sum}, set(np.abs(E).sum(axis=1).tolist())))
        eigs = spectral.spectrum(G)
        rep = spectral.second_eigenvalue_check(G, eigs)
        out.append(_check(f"spectral.second_eigenvalue.d{d}", q, f"<= {2 * (q - 1)}", f"{rep['second_abs']:.12g}", rep["passed"]))
        _, rest = spectral.split_principal(eigs)
        e_eigs = [lam * lam - b for lam in rest]
        out.append(_check(f"spectral.gershgorin.E.d{d}", q, f"<= {row_sum}", f"{max(abs(x) for x in e_eigs):.12g}", max(abs(x) for x in e_eigs) <= row_sum + 1e-6))
        P = construct(F, "random", n=min(10, q * q), seed=q)
        idx = [G.index((x, y)) for x in P for y in P if x != y and plane.dist(F, x, y) == d]
        mix = spectral.expander_mixing_check(G, idx, idx, lam=max(abs(x) for x in rest))
        out.append(_check(f"spectral.expander_mixing.d{d}", q, f"<= {mix['bound']:.12g}", f"{mix['deviation']:.12g}", mix["passed"]))
    return out


# ----------------------------------------------------------------- energy


def sample_sets(F: PrimeField, count: int, lo: int = 10, hi: int = 40, seed: int = 0) -> list[PointSet]:
    q = F.p
    rng = Prng(seed * 1_000_003 + q)
    hi = min(hi, q * q)
    lo = min(lo, hi)
    return [construct(F, "random", n=lo + rng.below(hi - lo + 1), seed=rng.next_u64()) for _ in range(count)]


def structured_sets(F: PrimeField) -> list[tuple[str, PointSet]]:
    q = F.p
    sets = [("parallel_lines_2", construct(F, "parallel_lines", k=2)), ("single_line", construct(F, "single_line"))]
    if F.sqrt_minus_one is not None:
        i = F.sqrt_minus_one
        sets.append(("isotropic_lines_2", construct(F, "isotropic_lines", k=2)))
        grid = [(t, (i * t + j) % q) for j in range(2) for t in range(q)]
        grid += [(t, (-i * t + j) % q) for j in range(2) for t in range(q)]
        sets.append(("isotropic_grid_2x2", from_points(F, grid)))
    return sets


def energy_checks(P: PointSet, label: str) -> list[CheckRecord]:
    F, q, n = P.field, P.q, len(P)
    out = []
    w = stats.bisector_multiset(P)
    energy = stats.bisector_energy(P, w)
    classes = stats.distance_classes(P)
    nonzero = n * n - classes[0]
    out.append(_check(f"energy.{label}.weights_total", q, nonzero, sum(w.values())))
    out.append(_check(f"energy.{label}.no_isotropic_weight", q, 0, sum(1 for l in w if plane.is_isotropic(F, l))))
    out.append(_check(f"energy.{label}.cauchy_schwarz", q, f"{nonzero**2} <= {len(w) * energy}", "", nonzero**2 <= len(w) * energy))
    out.append(_check(f"energy.{label}.pi0_bound", q, f"< {2 * n * q}", classes[0], classes[0] < 2 * n * q))
    qpp = stats.q_double_prime(P)
    out.append(_check(f"energy.{label}.q_double_prime_bound", q, f"<= {2 * nonzero}", qpp, qpp <= 2 * nonzero))
    qpd = stats.q_prime_counts(P)
    ok = all(qpd[d] <= stats.fixed_distance_bound(q, classes[d]) for d in range(1, q))
    out.append(_check(f"energy.{label}.fixed_distance_energy", q, True, ok))
    out.append(_check(f"energy.{label}.q_prime_decomposition", q, sum(qpd.values()), stats.q_prime(P)))
    if n <= 40:
        out.append(_check(f"energy.{label}.energy_identity", q, oracles.energy_bruteforce(P), energy))
        out.append(_check(f"energy.{label}.q_prime_oracle", q, oracles.q_prime_bruteforce(P), qpd))
    tri = stats.isosceles_count(P)
    I = spectral.incidences(F, {x: 1 for x in P}, w)
    out.append(_check(f"energy.{label}.isosceles_incidences", q, tri, I))
    return out


def energy_suite(F: PrimeField) -> list[CheckRecord]:
    q = F.p
    out = []
    for k, P in enumerate(sample_sets(F, 5, hi=30)):
        out += energy_checks(P, f"random{k}")
    for label, P in structured_sets(F):
        out += energy_checks(P, label)
    for k in (2, 3):
        if k > q:
            continue
        P = construct(F, "parallel_lines", k=k)
        energy = stats.bisector_energy(P)
        n = len(P)
        # as stated: every perpendicular line carries |P| pairs
        out.append(_check(f"energy.tightness.parallel_lines_{k}", q, f">= {q * n * n}", energy, energy >= q * n * n))
        # counting only pairs of distinct points: |P|(q-1)/q per perpendicular line
        floor = n * n * (q - 1) ** 2 // q
        out.append(_check(f"energy.tightness.parallel_lines_{k}.distinct_pairs", q, f">= {floor}", energy, energy * q >= n * n * (q - 1) ** 2))
    for k, P in enumerate(sample_sets(F, 3, lo=max(2, math.ceil(q ** (4 / 3))), hi=q * q // 2 + 1, seed=7)):
        for name, value in stats.ratio_reports(P).items():
            out.append(_report(f"energy.ratio.{name}.set{k}", q, value, f"|P|={len(P)}"))
    return out


# ----------------------------------------------------------------- incidence


def random_weighted_configuration(F: PrimeField, seed: int) -> tuple[dict, dict]:
    q = F.p
    rng = Prng(seed)
    pts = plane.all_points(F)
    lines = plane.all_lines(F)
    pw = {pts[rng.below(len(pts))]: 1 + rng.below(5) for _ in range(1 + rng.below(2 * q))}
    lw = {lines[rng.below(len(lines))]: 1 + rng.below(5) for _ in range(1 + rng.below(2 * q))}
    return pw, lw


def incidence_suite(F: PrimeField) -> list[CheckRecord]:
    q = F.p
    out = []
    G = spectral.incidence_graph(F)
    out.append(_check("incidence.graph.order", q, q * q + q + 1, G.n))
    out.append(_check("incidence.graph.regular", q, {q + 1}, set(G.degrees().tolist())))
    if q <= 11:
        rep = spectral.incidence_spectrum_check(G)
        out.append(_check("incidence.graph.principal", q, q + 1, f"{rep['principal']:.12g}", abs(rep["principal"] - q - 1) <= spectral.EIGEN_TOL))
        out.append(_check("incidence.graph.second_eigenvalue", q, f"<= {math.sqrt(q):.12g}", f"{rep['second_abs']:.12g}", rep["passed"]))
    full_p = {x: 1 for x in plane.all_points(F)}
    full_l = {l: 1 for l in plane.all_lines(F)}
    rep = spectral.weighted_incidence_check(F, full_p, full_l)
    out.append(_check("incidence.szemeredi_trotter.full", q, f"<= {rep['bound']:.12g}", rep["incidences"], rep["passed"]))
    fails = 0
    graph_mismatch = 0
    for seed in range(20):
        pw, lw = random_weighted_configuration(F, seed * 7919 + q)
        rep = spectral.weighted_incidence_check(F, pw, lw)
        fails += not rep["passed"]
        graph_mismatch += rep["incidences"] != spectral.incidences_via_graph(G, pw, lw)
    out.append(_check("incidence.szemeredi_trotter.random", q, 0, fails))
    out.append(_check("incidence.graph_route_agrees", q, 0, graph_mismatch))
    return out


BATTERIES = {
    "field": field_suite,
    "plane": plane_suite,
    "motions": motions_suite,
    "spectral": spectral_suite,
    "energy": energy_suite,
    "incidence": incidence_suite,
}


def run(qs: list[int], suites: list[str]) -> list[CheckRecord]:
    records = []
    for suite in suites:
        for q in qs:
            records += BATTERIES[suite](PrimeField(q))
    return sorted(records, key=lambda r: (r.name.split(".")[0], r.name, r.q))
