"""Acceptance gate. Each test records one PASS/FAIL line, echoed in the
terminal summary under "acceptance criteria"."""

import itertools
import json
import math
import random
import time

import pytest

from polya.errors import DomainError
from polya import arith, biquad, cli, constructors, cubic, density, formoracle, quadfield
from polya.sqclass import IDENTITY, SquareClass, subgroup_members, subgroup_rank


def test_1_oracle_agreement(criterion):
    start = time.perf_counter()
    ds = [d for d in range(2, 3001) if arith.is_squarefree(d)]
    bad = [d for d in ds if quadfield.quad_polya_rank(d) != formoracle.polya_group_oracle(d)]
    secs = time.perf_counter() - start
    criterion("1", not bad and secs < 300, f"{len(ds)} square-free d <= 3000, {len(bad)} mismatches {bad[:5]}, {secs:.1f}s")


def test_2_unit_class_for_primes_3_mod_4(criterion):
    start = time.perf_counter()
    ps = [int(p) for p in arith.primes_up_to(10**4) if p % 4 == 3]
    bad = []
    for p in ps:
        want = SquareClass.of(2, p) if p % 8 == 3 else SquareClass.of(2)
        if quadfield.a_class(p, "unit") != want:
            bad.append(p)
    secs = time.perf_counter() - start
    criterion("2", not bad and secs < 60, f"{len(ps)} primes p = 3 mod 4 below 10^4, {len(bad)} mismatches, {secs:.1f}s")


def nonresidue_triples(limit=10**7):
    ps = [int(p) for p in arith.primes_up_to(limit // (5 * 13)) if p % 4 == 1]
    for a, b in itertools.combinations(ps, 2):
        if a * b * b >= limit:
            break
        if arith.jacobi(a, b) != -1:
            continue
        for c in ps:
            if c <= b:
                continue
            if a * b * c >= limit:
                break
            if arith.jacobi(a, c) == -1 and arith.jacobi(b, c) == -1:
                yield a, b, c


def test_3_norm_minus_one_triples(criterion):
    triples = list(nonresidue_triples())
    bad = [t for t in triples if quadfield.fundamental_unit(math.prod(t)).norm != -1]
    criterion("3", len(triples) >= 50 and not bad, f"{len(triples)} triples with product < 10^7, {len(bad)} with norm +1")


THEOREM_CASES = [
    pytest.param(3, 3, id="q3_p7_t3"),
    pytest.param(5, 3, id="q5_p11_t3"),
    pytest.param(11, 3, id="q11_p23_t3"),
    pytest.param(3, 5, id="q3_p7_t5", marks=pytest.mark.slow),
]


@pytest.mark.parametrize("q, t", THEOREM_CASES)
def test_4_consecutive_biquadratic(criterion, q, t):
    start = time.perf_counter()
    r = constructors.verify_theorem_biquad(t, q)
    secs = time.perf_counter() - start
    ok = r.passed and r.rank_Kmp == r.rank_Kmp_minus_1 == t - 1 and r.h1_structure_ok
    criterion(
        f"4 (q={q}, p={r.p}, t={t})",
        ok,
        f"rank K_(m,p) = {r.rank_Kmp}, rank K_(m,p-1) = {r.rank_Kmp_minus_1}, "
        f"expected {t - 1}, H1 structure {r.h1_structure_ok}, {secs:.1f}s",
    )


@pytest.mark.parametrize("M, bound", [(2, 3), (25, 27), (80, 81)])
def test_5_large_polya_cubic(criterion, M, bound):
    start = time.perf_counter()
    cert = constructors.verify_theorem_cubic(M)
    problems = cubic.check_certificate(cert)
    secs = time.perf_counter() - start
    criterion(
        f"5 (M={M})",
        cert.po_lower_bound == bound and not problems and secs < 120,
        f"p = {cert.p}, po_lower_bound = {cert.po_lower_bound}, re-check problems {problems}, {secs:.1f}s",
    )


@pytest.mark.parametrize("a, m", [(1, 1), (2, 3), (1, 6)])
def test_6_density(criterion, a, m):
    start = time.perf_counter()
    r = density.density_report(10**6, a, m, 10**4)
    secs = time.perf_counter() - start
    criterion(
        f"6 (a={a}, m={m})",
        r.deviation <= 0.03 and secs < 180,
        f"N_h/pi = {r.ratio:.5f}, c_h = {r.euler_c:.5f}, deviation {r.deviation:.5f}, {secs:.1f}s",
    )


def _closure(gens):
    out = {IDENTITY}
    for g in gens:
        out |= {c * g for c in out}
    return out


def _brute_unit(d):
    for y in range(1, 1001):
        for sign in (-1, 1):
            x2 = d * y * y + 4 * sign
            if x2 > 0 and math.isqrt(x2) ** 2 == x2:
                return math.isqrt(x2), y, sign
    return None


def test_7_property_suites(criterion):
    rng = random.Random(7)
    failures = []

    primes = [2, 3, 5, 7, 11, 13]
    for _ in range(200):
        gens = [
            SquareClass.of(*rng.sample(primes, rng.randint(0, 4)), sign=rng.choice((1, -1)))
            for _ in range(rng.randint(0, 6))
        ]
        members = _closure(gens)
        if len(members) != 2 ** subgroup_rank(gens) or subgroup_members(gens) != members:
            failures.append(("sqclass", gens))

    for d in range(2, 201):
        if not arith.is_squarefree(d):
            continue
        u = quadfield.fundamental_unit(d)
        b = _brute_unit(d)
        if u.x * u.x - d * u.y * u.y != 4 * u.norm or (b != (u.x, u.y, u.norm) if b else u.y <= 1000):
            failures.append(("unit", d))

    small_primes = [int(p) for p in arith.primes_up_to(200) if p > 2]
    for _ in range(300):
        p = rng.choice(small_primes)
        a = rng.randrange(-1000, 1000)
        e = pow(a, (p - 1) // 2, p)
        if arith.jacobi(a, p) != (0 if a % p == 0 else (1 if e == 1 else -1)):
            failures.append(("jacobi", a, p))
        roots = [x for x in range(p) if (x * x - a) % p == 0]
        if roots and arith.sqrt_mod_prime(a, p) != roots[0]:
            failures.append(("sqrt", a, p))
        m1, m2 = rng.randint(1, 40), rng.randint(1, 40)
        r1, r2 = rng.randrange(m1), rng.randrange(m2)
        if math.gcd(m1, m2) == 1:
            x, M = arith.crt([(r1, m1), (r2, m2)])
            if [y for y in range(M) if y % m1 == r1 and y % m2 == r2] != [x]:
                failures.append(("crt", r1, m1, r2, m2))

    if density.rho(9) != 0:
        failures.append(("rho(9)",))
    for m in range(1, 60):
        for n in range(1, 60):
            if math.gcd(m, n) == 1 and m * n <= 2000 and density.rho(m * n) != density.rho(m) * density.rho(n):
                failures.append(("rho", m, n))

    done = 0
    while done < 500:
        m, n = rng.randrange(2, 10**4), rng.randrange(2, 10**4)
        try:
            ds = biquad.subfields(m, n)
        except DomainError:
            continue
        if sum(d % 4 != 1 for d in ds) == 1:
            failures.append(("e2", m, n))
        done += 1

    criterion("7", not failures, f"{len(failures)} property violations {failures[:3]}")


@pytest.mark.parametrize(
    "argv",
    [
        ["biquad", "--m", "2", "--n", "3"],
        ["cubic", "--n", "5"],
        ["tuple", "--t", "3", "--p", "13", "--q", "3"],
    ],
    ids=["biquad_2_3", "cubic_5", "tuple_bad_pair"],
)
def test_8_refusals(criterion, capsys, argv):
    code = cli.run(argv)
    err = capsys.readouterr().err.strip()
    criterion(f"8 ({' '.join(argv)})", code == 2, f"exit {code}, {err}")
