"""Acceptance suite: one test per criterion, one printed line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.

Criteria 1 and 10 contain assertions on two stated constants that direct
enumeration disproves (the quartic surface count over F_3 and the sign of
its alpha); those assertions are implemented as stated and fail red by
design.  See the repository README for the verified values; everything
else in both criteria is checked and passes before the failing assert.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from fqzeta.congruence import (
    HEIGHT2,
    INFINITE,
    ax_katz_check,
    check_height_congruence,
    classify_curve,
    honda_tate_traces,
)
from fqzeta.counting import (
    DiagonalForm,
    count_chain,
    count_diagonal,
    count_ngon,
    count_projective,
    projective_space_count,
)
from fqzeta.ffield import field_make
from fqzeta.formal_groups import (
    HeightResult,
    diagonal_height,
    dieudonne_slopes,
    elliptic_height,
    height_from_p_series,
    mult_by_p,
    stienstra_log,
)
from fqzeta.survey import EllipticCurveQ, elliptic_survey, k3_survey, weierstrass_count
from fqzeta.zeta import (
    ENRIQUES,
    ENRIQUES_TYPE_II,
    ENRIQUES_TYPE_III,
    K3_TYPE_II,
    K3_TYPE_III,
    FrobClass,
    SnclSurfaceData,
    build_enriques_zeta,
    build_k3_zeta,
    build_log_zeta,
    expand_rational,
    projective_product_class,
    projective_space_class,
    rational_points_class,
    strata_zeta,
    zeta_series_from_counts,
)

FERMAT = DiagonalForm(4, (1, 1, 1, 1))


def _line(n: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {detail}")


def test_criterion_1_paper_counts():
    stated = {3: 4, 5: 0, 7: 64}  # stated F_3 value contradicts enumeration (16)
    computed = {}
    ok_time = True
    for p in (3, 5, 7):
        t0 = time.monotonic()
        brute = count_projective(FERMAT, p, 1, 1)
        t_brute = time.monotonic() - t0
        t0 = time.monotonic()
        conv = count_diagonal(FERMAT, p, 1, 1)
        t_conv = time.monotonic() - t0
        assert brute == conv, f"count routes disagree at p={p}: {brute} vs {conv}"
        ok_time = ok_time and t_brute < 1.0 and t_conv < 1.0
        computed[p] = brute
    ok = ok_time and computed == stated
    _line(
        1,
        ok,
        f"quartic counts brute=convolution, each < 1 s; computed {computed}, "
        f"stated {stated}",
    )
    assert ok_time, "a count exceeded one second"
    assert computed == stated, (
        f"computed {computed} != stated {stated}: the F_3 value 4 is a defect; "
        "direct enumeration, a character-sum evaluation, and the split-quadric "
        "identity all give 16 = 1 + 3^2 + 3*2"
    )


def test_criterion_2_height_congruences_with_extensions():
    t0 = time.monotonic()
    counts = {p: [count_diagonal(FERMAT, p, 1, k) for k in (1, 2)] for p in (3, 5, 7)}
    assert counts[3][1] == 280
    assert count_projective(FERMAT, 3, 1, 2) == 280  # brute-force cross-check
    inf3 = check_height_congruence(counts[3], 3, 1, INFINITE)
    inf7 = check_height_congruence(counts[7], 7, 1, INFINITE)
    one5 = check_height_congruence(counts[5], 5, 1, 1)
    elapsed = time.monotonic() - t0
    ok = inf3.passed and inf7.passed and one5.passed and elapsed < 10.0
    _line(
        2,
        ok,
        f"infinite-height counts 1 mod q^k at p=3,7; height-one counts != 1 mod 5 "
        f"(counts {counts}); {elapsed:.2f} s",
    )
    assert inf3.passed and inf7.passed and one5.passed
    assert elapsed < 10.0


def test_criterion_3_height_machinery():
    results = {}
    for p in (3, 5, 7, 11, 13):
        order = p * p
        series = mult_by_p(stienstra_log(4, 1, order), p, order)
        results[p] = height_from_p_series(series, p, 2)
    expected = {
        3: HeightResult.not_detected_up_to(2),
        5: HeightResult.finite(1),
        7: HeightResult.not_detected_up_to(2),
        11: HeightResult.not_detected_up_to(2),
        13: HeightResult.finite(1),
    }
    agreement = all(
        (diagonal_height(4, p).is_finite) == (results[p].is_finite) for p in results
    )
    integrality = True
    for p in (3, 5, 7, 11, 13):
        mult_by_p(stienstra_log(4, 1, 50), p, 50)  # raises on any violation
    ok = results == expected and agreement and integrality
    _line(
        3,
        ok,
        "series heights " + ", ".join(f"p={p}: {results[p]}" for p in sorted(results))
        + "; residue criterion agrees; [p](t) p-integral to order 50",
    )
    assert results == expected
    assert agreement


def test_criterion_4_elliptic_checks():
    all_ok = True
    details = []
    for p in (7, 11, 19, 23):
        n = weierstrass_count(1, 0, field_make(p, 1))
        height = elliptic_height(p, 1, n)
        cls = classify_curve(p, 1, n)
        report = check_height_congruence([n], p, 1, height)
        ok = (
            n == p + 1
            and height == HeightResult.finite(2)
            and cls == HEIGHT2
            and report.passed
        )
        all_ok = all_ok and ok
        details.append(f"p={p}: N={n}")
    _line(4, all_ok, "y^2 = x^3 + x supersingular battery: " + ", ".join(details))
    assert all_ok


def test_criterion_5_dieudonne_slopes():
    ok = True
    for h in range(1, 11):
        for p in (2, 3, 5):
            data = dieudonne_slopes(h, p)
            expected_poly = tuple(
                (-(p ** (h - 1)) if i == 0 else (1 if i == h else 0))
                for i in range(h + 1)
            )
            ok = ok and data.charpoly == expected_poly
            ok = ok and data.slopes == tuple([Fraction(h - 1, h)] * h)
    _line(5, ok, "companion charpoly t^h - p^(h-1) and slopes (h-1)/h for h <= 10, p in {2,3,5}")
    assert ok


def _ngon_strata(n, q):
    lines = FrobClass.from_entries([(0, 0, (1, -1), n), (2, 2, (1, -q), n)])
    return [lines, rational_points_class(n)]


def _chain_strata(N, n, q):
    top = projective_space_class(N, q)
    for _ in range(n - 1):
        top = top + projective_product_class(N - 1, 1, q)
    mid = FrobClass.zero()
    for _ in range(n - 1):
        mid = mid + projective_space_class(N - 1, q)
    return [top, mid]


def test_criterion_6_strata_zeta_consistency():
    checked = 0
    for q in (2, 3, 5):
        for N in (1, 2, 3):
            z = strata_zeta([projective_space_class(N, q)])
            counts = [projective_space_count(N, q ** k) for k in range(1, 5)]
            assert expand_rational(z, 4) == zeta_series_from_counts(counts)
            checked += 1
        for n in range(1, 6):
            z = strata_zeta(_ngon_strata(n, q))
            counts = [count_ngon(n, q, 1, k) for k in range(1, 5)]
            assert expand_rational(z, 4) == zeta_series_from_counts(counts)
            checked += 1
        for N in (1, 2):
            for n in (1, 2, 3):
                z = strata_zeta(_chain_strata(N, n, q))
                counts = [count_chain(N, n, q, 1, k) for k in range(1, 5)]
                assert expand_rational(z, 4) == zeta_series_from_counts(counts)
                checked += 1
    _line(6, True, f"strata zeta = exp-of-counts to order 4 on {checked} stratified schemes")


def test_criterion_7_closed_form_golden_strings():
    golden = []
    # degenerate-fiber zeta, Type II K3
    z = build_k3_zeta(
        SnclSurfaceData(kind=K3_TYPE_II, q=3, M=3, M1=1, M2=2, m=2, d=2, trace=1)
    )
    golden.append(
        (str(z), "(1-3*t+27*t^2)/((1-t)*(1-3*t)^7*(1-9*t)^3*(1-t+3*t^2))")
    )
    # degenerate-fiber zeta, Type III K3, negative and positive exponents
    z = build_k3_zeta(
        SnclSurfaceData(kind=K3_TYPE_III, q=3, M=4, M1=4, M2=0, m=0, d=6, T=4)
    )
    golden.append((str(z), "(1-3*t)^2/((1-t)^2*(1-9*t)^4)"))
    z = build_k3_zeta(
        SnclSurfaceData(kind=K3_TYPE_III, q=3, M=5, M1=3, M2=2, m=2, d=5, T=2)
    )
    golden.append((str(z), "1/((1-t)^2*(1-3*t)^4*(1-9*t)^5)"))
    # degenerate-fiber zeta, Enriques
    z = build_enriques_zeta(
        SnclSurfaceData(kind=ENRIQUES_TYPE_II, q=5, M=2, M1=0, M2=2, m=0, d=1, trace=1)
    )
    golden.append((str(z), "(1-5*t+125*t^2)/((1-t)*(1-5*t)^5*(1-25*t)^2)"))
    with pytest.warns(UserWarning):
        data = SnclSurfaceData(
            kind=ENRIQUES_TYPE_III, q=3, M=3, M1=3, M2=0, m=1, d=3, T=1
        )
    golden.append((str(build_enriques_zeta(data)), "1/((1-t)*(1-3*t)*(1-9*t)^3)"))
    # inertia-invariant closed forms
    golden.append(
        (str(build_log_zeta(K3_TYPE_II, 5, 2).zeta),
         "1/((1-t)*(1-5*t)^18*(1-25*t)*(1-2*t+5*t^2))")
    )
    golden.append(
        (str(build_log_zeta(K3_TYPE_III, 3).zeta), "1/((1-t)^2*(1-3*t)^19*(1-9*t))")
    )
    golden.append(
        (str(build_log_zeta(ENRIQUES, 5).zeta), "1/((1-t)*(1-5*t)^10*(1-25*t))")
    )
    mismatches = [(got, want) for got, want in golden if got != want]

    rejects = 0
    for bad_call in (
        lambda: SnclSurfaceData(kind=K3_TYPE_III, q=3, M=4, M1=4, M2=0, m=0, d=5, T=4),
        lambda: SnclSurfaceData(
            kind=ENRIQUES_TYPE_III, q=3, M=3, M1=3, M2=0, m=1, d=4, T=1
        ),
        lambda: SnclSurfaceData(
            kind=ENRIQUES_TYPE_III, q=4, M=3, M1=3, M2=0, m=1, d=3, T=1
        ),
        lambda: build_log_zeta(ENRIQUES, 2),
    ):
        try:
            bad_call()
        except ValueError:
            rejects += 1
    ok = not mismatches and rejects == 4
    _line(7, ok, f"{len(golden)} golden factorizations verified, {rejects}/4 invalid inputs rejected")
    assert not mismatches, mismatches
    assert rejects == 4


def _random_admissible_system(rng):
    from fqzeta.counting import PolySystem
    from fqzeta.ffield import GenPow

    p, e = rng.choice([(2, 1), (3, 1), (2, 2), (5, 1)])
    n = rng.randint(2, 4)
    degrees = []
    budget = n
    for _ in range(rng.randint(1, 2)):
        if budget < 1:
            break
        d = rng.randint(1, budget)
        degrees.append(d)
        budget -= d
    polys = []
    for d in degrees:
        terms = {}
        for _ in range(rng.randint(1, 4)):
            exps = [0] * (n + 1)
            for _ in range(d):
                exps[rng.randrange(n + 1)] += 1
            coeff = GenPow(rng.randrange(p ** e - 1)) if p ** e > 2 else 1
            terms[tuple(exps)] = coeff
        polys.append(tuple(terms.items()))
    return PolySystem(n, tuple(polys), tuple(degrees)), p, e


def test_criterion_8_ax_katz_randomized():
    rng = random.Random(74207281)
    t0 = time.monotonic()
    failures = 0
    for _ in range(50):
        system, p, e = _random_admissible_system(rng)
        if not ax_katz_check(system, p, e, kmax=1).passed:
            failures += 1
    elapsed = time.monotonic() - t0
    ok = failures == 0 and elapsed < 60.0
    _line(8, ok, f"50 admissible systems all = 1 mod q in {elapsed:.2f} s")
    assert failures == 0
    assert elapsed < 60.0


def test_criterion_9_honda_tate():
    import math

    ok = True
    for p, e in [(2, 2), (5, 1), (3, 2), (5, 2), (7, 2)]:
        ts = honda_tate_traces(p, e)
        q = p ** e
        brute = set()
        for t in range(-math.isqrt(4 * q), math.isqrt(4 * q) + 1):
            admissible = (
                math.gcd(t, p) == 1
                or (e % 2 == 0 and t * t == 4 * q)
                or (e % 2 == 0 and p % 3 != 1 and t * t == q)
                or (e % 2 == 1 and p in (2, 3) and t * t == p ** (e + 1))
                or (t == 0 and (e % 2 == 1 or p % 4 != 1))
            )
            if admissible:
                brute.add(t)
        ok = ok and set(ts.traces) == brute
        ok = ok and set(ts.traces) == {-t for t in ts.traces}
    _line(9, ok, "trace sets for q in {4, 5, 9, 25, 49} match the five-case enumeration; negation-symmetric")
    assert ok


def test_criterion_10_surveys():
    t0 = time.monotonic()
    k3 = k3_survey(FERMAT, 200)
    k3_elapsed = time.monotonic() - t0
    supersingular = [r for r in k3.records if r.good and r.supersingular]
    invariants_ok = all(
        r.alpha is not None
        and abs(r.alpha) <= 22
        and (1 + r.p ** 2 + r.alpha * r.p - 1) % r.p == 0
        for r in supersingular
    )
    t0 = time.monotonic()
    ell = elliptic_survey(EllipticCurveQ(1, 0), -1, 10 ** 4)
    ell_elapsed = time.monotonic() - t0
    ell_ss = [r for r in ell.records if r.good and r.supersingular]
    ell_ok = bool(ell_ss) and all(r.alpha == 2 for r in ell_ss)

    by_p = {r.p: r for r in k3.records}
    stated = {3: -2, 7: 2}  # stated alpha at p=3 contradicts the verified count 16
    computed = {3: by_p[3].alpha, 7: by_p[7].alpha}
    ok = (
        k3_elapsed < 60.0
        and ell_elapsed < 60.0
        and invariants_ok
        and ell_ok
        and computed == stated
    )
    _line(
        10,
        ok,
        f"k3 survey {k3_elapsed:.2f} s (alpha integral, |alpha| <= 22, N = 1 mod p); "
        f"elliptic survey {ell_elapsed:.2f} s (all inert supersingular alpha = 2); "
        f"alpha at p=3,7 computed {computed}, stated {stated}",
    )
    assert k3_elapsed < 60.0 and ell_elapsed < 60.0
    assert invariants_ok
    assert ell_ok
    assert computed[7] == stated[7]
    assert computed == stated, (
        f"alpha at p=3 computed {computed[3]} != stated {stated[3]}: follows the "
        "F_3 count defect; 16 = 1 + 3^2 + 3*2 gives alpha = +2"
    )
