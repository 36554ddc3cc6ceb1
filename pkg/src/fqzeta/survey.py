"""Supersingular-reduction surveys.

Two sweeps over primes:

* an elliptic curve over Q, viewed in a quadratic field Q(sqrt(D));
  only inert primes have even residue degree, so the survey walks
  rational primes p <= sqrt(xmax) with (D/p) = -1, derives the count
  over F_{p^2} from the Frobenius relation a_{p^2} = a_p^2 - 2p, and
  classifies supersingular records by alpha = (N - 1 - q)/p;

* a diagonal quartic surface, counted over F_p directly, with the
  supersingular flag from the residue criterion (p != 1 mod 4) and
  alpha = (N - 1 - p^2)/p, which purity bounds by the middle Betti
  number 22.

Outputs are deterministic, ordered by prime, with exact rational ratio
samples (no floating point).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .counting import DiagonalForm, count_diagonal
from .congruence import _trace_cases
from .ffield import Field, is_prime
from .formal_groups import INFINITE_BY_CRITERION, diagonal_height


@dataclass(frozen=True)
class EllipticCurveQ:
    """y^2 = x^3 + A x + B over Q."""

    A: int
    B: int

    @property
    def disc(self) -> int:
        return -16 * (4 * self.A ** 3 + 27 * self.B ** 2)

    def __post_init__(self):
        if self.disc == 0:
            raise ValueError("singular curve: discriminant vanishes")


@dataclass(frozen=True)
class SurveyRecord:
    p: int
    f: int
    good: bool
    a_p: int | None
    supersingular: bool
    alpha: int | None
    tags: tuple[int, ...] = ()

    def to_csv_row(self) -> list:
        return [
            self.p,
            self.f,
            self.good,
            "" if self.a_p is None else self.a_p,
            self.supersingular,
            "" if self.alpha is None else self.alpha,
            "|".join(str(t) for t in self.tags),
        ]


CSV_COLUMNS = ["p", "f", "good", "a_p", "supersingular", "alpha", "case_tags"]


def write_records_csv(records: Sequence[SurveyRecord], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow(r.to_csv_row())


def _primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    return [i for i in range(n + 1) if sieve[i]]


def elliptic_trace(curve: EllipticCurveQ, p: int) -> int:
    """Frobenius trace a_p by the quadratic character sum over F_p (odd p)."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if p == 2:
        raise ValueError("short Weierstrass curves degenerate in characteristic 2")
    if curve.disc % p == 0:
        raise ValueError(f"bad reduction at p = {p}")
    a, b = curve.A % p, curve.B % p
    half = (p - 1) // 2
    total = 0
    for x in range(p):
        v = (x * x * x + a * x + b) % p
        if v:
            total += 1 if pow(v, half, p) == 1 else -1
    a_p = -total
    if a_p * a_p > 4 * p:
        raise ArithmeticError("character sum violates the Hasse bound")
    return a_p


def weierstrass_count(A: int, B: int, field: Field) -> int:
    """#E(F_q) for y^2 = x^3 + Ax + B by direct enumeration (odd q)."""
    if field.q % 2 == 0:
        raise ValueError("direct Weierstrass counting needs odd q")
    a = field.from_int(A).index
    b = field.from_int(B).index
    n = 1  # point at infinity
    for x in range(field.q):
        x3 = field.mul_idx(field.mul_idx(x, x), x)
        v = field.add_idx(field.add_idx(x3, field.mul_idx(a, x)), b)
        n += 1 + field.chi_idx(v)
    return n


def _splitting_in_quadratic(D: int, p: int) -> str:
    """'inert', 'split', or 'ramified' for p in Q(sqrt(D))."""
    if p == 2:
        r = D % 8
        if r == 1:
            return "split"
        if r == 5:
            return "inert"
        return "ramified"
    if D % p == 0:
        return "ramified"
    return "split" if pow(D % p, (p - 1) // 2, p) == 1 else "inert"


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def _log_spaced(lo: int, hi: int, samples: int = 12) -> list[int]:
    if hi <= lo:
        return [hi]
    out = []
    for i in range(samples):
        x = round(lo * (hi / lo) ** (i / (samples - 1)))
        if not out or x > out[-1]:
            out.append(x)
    if out[-1] != hi:
        out.append(hi)
    return out


@dataclass(frozen=True)
class EllipticSurveyResult:
    curve: EllipticCurveQ
    D: int
    xmax: int
    records: tuple[SurveyRecord, ...]
    x_samples: tuple[int, ...]
    ratios: dict[int, tuple[Fraction | None, ...]]

    def to_json(self) -> dict:
        return {
            "curve": {"A": self.curve.A, "B": self.curve.B},
            "D": self.D,
            "xmax": self.xmax,
            "x_samples": list(self.x_samples),
            "ratios": {
                f"alpha={a}": [None if r is None else str(r) for r in rs]
                for a, rs in sorted(self.ratios.items())
            },
            "records": [dict(zip(CSV_COLUMNS, r.to_csv_row())) for r in self.records],
        }


def elliptic_survey(
    curve: EllipticCurveQ, D: int, xmax: int
) -> EllipticSurveyResult:
    """Survey the inert primes of Q(sqrt(D)) with norm p^2 <= xmax.

    Records carry the rational trace a_p; the count over the residue
    field F_{p^2} is N = 1 + p^2 - (a_p^2 - 2p), supersingular iff
    p | a_p, in which case alpha = (N - 1 - p^2)/p.  Good-reduction
    failures stay in the denominator of the ratio samples but never in
    a numerator.
    """
    if D in (0, 1) or not _is_squarefree(D):
        raise ValueError("D must be a squarefree integer other than 0 and 1")
    if xmax < 5:
        raise ValueError("xmax must be at least 5")
    records = []
    for p in _primes_up_to(math.isqrt(xmax)):
        if _splitting_in_quadratic(D, p) != "inert":
            continue
        if p == 2 or curve.disc % p == 0:
            records.append(
                SurveyRecord(p=p, f=2, good=False, a_p=None, supersingular=False, alpha=None)
            )
            continue
        a_p = elliptic_trace(curve, p)
        a_q = a_p * a_p - 2 * p  # Frobenius relation over F_{p^2}
        supersingular = a_p % p == 0
        alpha = None
        if supersingular:
            alpha = (2 * p - a_p * a_p) // p
        records.append(
            SurveyRecord(
                p=p,
                f=2,
                good=True,
                a_p=a_p,
                supersingular=supersingular,
                alpha=alpha,
                tags=_trace_cases(a_q, p, 2, p * p),
            )
        )
    records.sort(key=lambda r: r.p)
    xs = _log_spaced(5, xmax)
    ratios: dict[int, list[Fraction | None]] = {a: [] for a in range(-2, 3)}
    for x in xs:
        eligible = [r for r in records if r.p * r.p <= x]
        denom = len(eligible)
        for a in range(-2, 3):
            if denom == 0:
                ratios[a].append(None)
            else:
                hits = sum(
                    1
                    for r in eligible
                    if r.good and r.supersingular and r.alpha == a
                )
                ratios[a].append(Fraction(hits, denom))
    return EllipticSurveyResult(
        curve=curve,
        D=D,
        xmax=xmax,
        records=tuple(records),
        x_samples=tuple(xs),
        ratios={a: tuple(v) for a, v in ratios.items()},
    )


@dataclass(frozen=True)
class K3SurveyResult:
    form: DiagonalForm
    xmax: int
    records: tuple[SurveyRecord, ...]
    alpha_histogram: dict[int, int]

    def to_json(self) -> dict:
        return {
            "form": {"d": self.form.d, "coeffs": list(self.form.coeffs)},
            "xmax": self.xmax,
            "alpha_histogram": {
                str(a): n for a, n in sorted(self.alpha_histogram.items())
            },
            "records": [dict(zip(CSV_COLUMNS, r.to_csv_row())) for r in self.records],
        }


def k3_survey(form: DiagonalForm, xmax: int) -> K3SurveyResult:
    """Sweep odd primes p <= xmax for a diagonal quartic surface.

    At good primes N = count over F_p; supersingular iff p != 1 mod 4
    (residue criterion for degree 4); then alpha = (N - 1 - p^2)/p is
    asserted integral (N = 1 mod p holds at infinite height) with
    |alpha| <= 22.  Primes dividing a coefficient are recorded as bad
    reduction and skipped.
    """
    if form.d != 4 or form.n_vars != 4:
        raise ValueError("the quartic surface survey needs d = 4 and four coefficients")
    if not all(isinstance(c, int) for c in form.coeffs):
        raise ValueError("survey coefficients must be integers to reduce at every p")
    if xmax < 3:
        raise ValueError("xmax must be at least 3")
    records = []
    histogram: dict[int, int] = {}
    for p in _primes_up_to(xmax):
        if p == 2:
            continue
        if any(c % p == 0 for c in form.coeffs):
            records.append(
                SurveyRecord(p=p, f=1, good=False, a_p=None, supersingular=False, alpha=None)
            )
            continue
        n = count_diagonal(form, p, 1, 1)
        trace_surplus = n - 1 - p * p
        supersingular = diagonal_height(4, p).kind == INFINITE_BY_CRITERION
        alpha = None
        if supersingular:
            if (n - 1) % p != 0:
                raise ArithmeticError(
                    f"count {n} at p = {p} is not 1 mod p at infinite height"
                )
            alpha = trace_surplus // p
            if trace_surplus != alpha * p or abs(alpha) > 22:
                raise ArithmeticError(
                    f"alpha = {trace_surplus}/{p} at p = {p} violates purity"
                )
            histogram[alpha] = histogram.get(alpha, 0) + 1
        records.append(
            SurveyRecord(
                p=p,
                f=1,
                good=True,
                a_p=trace_surplus,
                supersingular=supersingular,
                alpha=alpha,
            )
        )
    return K3SurveyResult(
        form=form, xmax=xmax, records=tuple(records), alpha_histogram=histogram
    )
