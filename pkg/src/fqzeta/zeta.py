"""Factored zeta functions and Grothendieck-group bookkeeping.

A Frobenius class is a virtual multiset of (cohomological degree, weight,
characteristic-polynomial factor) triples; its zeta function is the
alternating product of the factors.  Rational zeta functions stay in
factored form: integer polynomials with constant term 1, never factored
further and never expanded unless a series comparison asks for it.
Closed-form builders cover the semistable K3 and Enriques degenerations,
both the stratified point-count zeta and the inertia-invariant one.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .series import PowerSeries, series_exp

ZPoly = tuple[int, ...]


# ---------------------------------------------------------------------------
# integer polynomials in t with constant term 1


def zpoly(coeffs: Iterable[int]) -> ZPoly:
    c = list(int(x) for x in coeffs)
    while c and c[-1] == 0:
        c.pop()
    if not c or c[0] != 1:
        raise ValueError(f"zeta factors need constant term 1, got {tuple(coeffs)!r}")
    return tuple(c)


def zpoly_mul(a: ZPoly, b: ZPoly) -> ZPoly:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return tuple(out)


def zpoly_str(c: ZPoly) -> str:
    parts = []
    for i, x in enumerate(c):
        if x == 0:
            continue
        if i == 0:
            parts.append(str(x))
            continue
        t = "t" if i == 1 else f"t^{i}"
        mag = abs(x)
        body = t if mag == 1 else f"{mag}*{t}"
        parts.append(f"+{body}" if x > 0 else f"-{body}")
    return "".join(parts) if parts else "0"


_TERM_RE = re.compile(r"^([+-]?)(\d+)?(?:\*?t(?:\^(\d+))?)?$")


def zpoly_parse(s: str) -> ZPoly:
    """Parse the ASCII form "1-3*t+9*t^2" back into a coefficient tuple."""
    s = s.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    chunks = re.findall(r"[+-]?[^+-]+", s)
    coeffs: dict[int, int] = {}
    for chunk in chunks:
        m = _TERM_RE.match(chunk)
        if not m or (m.group(2) is None and "t" not in chunk):
            raise ValueError(f"cannot parse polynomial term {chunk!r}")
        sign = -1 if m.group(1) == "-" else 1
        mag = int(m.group(2)) if m.group(2) is not None else 1
        if "t" in chunk:
            power = int(m.group(3)) if m.group(3) is not None else 1
        else:
            power = 0
        coeffs[power] = coeffs.get(power, 0) + sign * mag
    deg = max(coeffs)
    return zpoly(coeffs.get(i, 0) for i in range(deg + 1))


def _sort_key(poly: ZPoly):
    return (len(poly) - 1, tuple(-c for c in poly[1:]))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalZeta:
    """A rational function as canonically sorted factor lists.

    No factor appears on both sides; multiplicities are positive; factors
    with negative aggregate exponents live on the other side of the bar.
    """

    num: tuple[tuple[ZPoly, int], ...]
    den: tuple[tuple[ZPoly, int], ...]

    @classmethod
    def from_exponents(cls, exps: Mapping[ZPoly, int]) -> "RationalZeta":
        num, den = {}, {}
        for poly, m in exps.items():
            poly = zpoly(poly)
            if len(poly) == 1 or m == 0:
                continue
            side = num if m > 0 else den
            side[poly] = side.get(poly, 0) + abs(m)
        return cls(
            num=tuple(sorted(num.items(), key=lambda kv: _sort_key(kv[0]))),
            den=tuple(sorted(den.items(), key=lambda kv: _sort_key(kv[0]))),
        )

    @classmethod
    def one(cls) -> "RationalZeta":
        return cls(num=(), den=())

    def exponents(self) -> dict[ZPoly, int]:
        exps: dict[ZPoly, int] = {}
        for poly, m in self.num:
            exps[poly] = exps.get(poly, 0) + m
        for poly, m in self.den:
            exps[poly] = exps.get(poly, 0) - m
        return exps

    def __mul__(self, other: "RationalZeta") -> "RationalZeta":
        exps = self.exponents()
        for poly, m in other.exponents().items():
            exps[poly] = exps.get(poly, 0) + m
        return RationalZeta.from_exponents(exps)

    def inverse(self) -> "RationalZeta":
        return RationalZeta.from_exponents({p: -m for p, m in self.exponents().items()})

    def expand(self, order: int) -> PowerSeries:
        return expand_rational(self, order)

    def __str__(self):
        def side(factors):
            return "*".join(
                f"({zpoly_str(p)})" + (f"^{m}" if m > 1 else "")
                for p, m in factors
            )

        num = side(self.num) or "1"
        if not self.den:
            return num
        den = side(self.den)
        if len(self.den) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def to_json(self) -> dict:
        return {
            "num": [[zpoly_str(p), m] for p, m in self.num],
            "den": [[zpoly_str(p), m] for p, m in self.den],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "RationalZeta":
        exps: dict[ZPoly, int] = {}
        for s, m in doc.get("num", []):
            poly = zpoly_parse(s)
            exps[poly] = exps.get(poly, 0) + int(m)
        for s, m in doc.get("den", []):
            poly = zpoly_parse(s)
            exps[poly] = exps.get(poly, 0) - int(m)
        return cls.from_exponents(exps)


# ---------------------------------------------------------------------------
# Frobenius classes and the motive library


@dataclass(frozen=True)
class FrobClass:
    """Virtual sum of (degree j, weight, det(1 - tF) factor) with multiplicities."""

    entries: tuple[tuple[int, int, ZPoly, int], ...]

    @classmethod
    def from_entries(cls, items: Iterable[tuple[int, int, Iterable[int], int]]):
        acc: dict[tuple[int, int, ZPoly], int] = {}
        for j, w, poly, mult in items:
            key = (j, w, zpoly(poly))
            acc[key] = acc.get(key, 0) + mult
        entries = tuple(
            sorted((j, w, poly, m) for (j, w, poly), m in acc.items() if m != 0)
        )
        return cls(entries)

    @classmethod
    def zero(cls) -> "FrobClass":
        return cls(())

    def __add__(self, other: "FrobClass") -> "FrobClass":
        return FrobClass.from_entries(
            [(j, w, p, m) for j, w, p, m in self.entries]
            + [(j, w, p, m) for j, w, p, m in other.entries]
        )

    def __neg__(self) -> "FrobClass":
        return FrobClass.from_entries((j, w, p, -m) for j, w, p, m in self.entries)

    def __sub__(self, other: "FrobClass") -> "FrobClass":
        return self + (-other)


def point_class() -> FrobClass:
    return FrobClass.from_entries([(0, 0, (1, -1), 1)])


def rational_points_class(count: int) -> FrobClass:
    """count points, each rational over the base field."""
    if count < 0:
        raise ValueError("point count must be nonnegative")
    return FrobClass.from_entries([(0, 0, (1, -1), count)] if count else [])


def projective_space_class(N: int, q: int) -> FrobClass:
    return FrobClass.from_entries(
        (2 * j, 2 * j, (1, -(q ** j)), 1) for j in range(N + 1)
    )


def projective_product_class(a: int, b: int, q: int) -> FrobClass:
    """P^a x P^b via the Kunneth decomposition."""
    entries = []
    for j in range(a + b + 1):
        mult = sum(1 for u in range(a + 1) if 0 <= j - u <= b)
        if mult:
            entries.append((2 * j, 2 * j, (1, -(q ** j)), mult))
    return FrobClass.from_entries(entries)


def curve_class(q: int, h1_poly: Iterable[int]) -> FrobClass:
    """Smooth proper curve with the supplied degree-1 factor det(1 - tF | H^1)."""
    return FrobClass.from_entries(
        [(0, 0, (1, -1), 1), (1, 1, zpoly(h1_poly), 1), (2, 2, (1, -q), 1)]
    )


def class_zeta(c: FrobClass) -> RationalZeta:
    """Zeta function of a class: product of factors with exponent (-1)^(j+1)."""
    exps: dict[ZPoly, int] = {}
    for j, _w, poly, mult in c.entries:
        sign = -1 if j % 2 == 0 else 1
        exps[poly] = exps.get(poly, 0) + sign * mult
    return RationalZeta.from_exponents(exps)


def zeta_series_from_counts(counts: Sequence[int], order: int | None = None) -> PowerSeries:
    """exp(sum_k N_k t^k / k) truncated after the supplied counts."""
    if not counts:
        raise ValueError("need at least one count")
    order = len(counts) if order is None else order
    if not 1 <= order <= len(counts):
        raise ValueError("series order needs counts N_1..N_order")
    body = PowerSeries(
        order, {k: Fraction(int(counts[k - 1]), k) for k in range(1, order + 1)}
    )
    return series_exp(body)


def expand_rational(z: RationalZeta, order: int) -> PowerSeries:
    out = PowerSeries.one(order)
    for poly, mult in z.num:
        factor = PowerSeries(order, poly)
        for _ in range(mult):
            out = out * factor
    for poly, mult in z.den:
        inv = PowerSeries(order, poly).inverse()
        for _ in range(mult):
            out = out * inv
    return out


StratumLike = Union[FrobClass, Sequence]


def _stratum_class(level: StratumLike) -> FrobClass:
    if isinstance(level, FrobClass):
        return level
    entries = []
    for j, factors in enumerate(level):
        if factors is None:
            continue
        if factors and isinstance(factors[0], int):
            factors = [factors]
        for poly in factors:
            entries.append((j, j, zpoly(poly), 1))
    return FrobClass.from_entries(entries)


def strata_zeta(strata: Sequence[StratumLike]) -> RationalZeta:
    """Zeta of a stratified scheme: factors of level i, degree j get sign (-1)^(i+j+1).

    Each stratum is a FrobClass from the motive library, or a plain list
    over j of factor polynomials.
    """
    exps: dict[ZPoly, int] = {}
    for i, level in enumerate(strata):
        for j, _w, poly, mult in _stratum_class(level).entries:
            sign = 1 if (i + j + 1) % 2 == 0 else -1
            exps[poly] = exps.get(poly, 0) + sign * mult
    return RationalZeta.from_exponents(exps)


# ---------------------------------------------------------------------------
# semistable K3 / Enriques degenerations

K3_TYPE_II = "K3-TypeII"
K3_TYPE_III = "K3-TypeIII"
ENRIQUES_TYPE_II = "Enriques-TypeII"
ENRIQUES_TYPE_III = "Enriques-TypeIII"
ENRIQUES = "Enriques"


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"q = {q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ValueError(f"q = {q} is not a prime power")
    return p, e


@dataclass(frozen=True)
class SnclSurfaceData:
    """Combinatorial data of a semistable K3 or Enriques degeneration.

    M components, of which M1 have minimal model P^2 and M2 are ruled;
    m total blow-downs to reach the minimal models; d double curves;
    T triple points; trace is the H^1 trace of the double elliptic curve
    (Type II only, det(1 - tF | H^1) = 1 - trace*t + q*t^2).
    """

    kind: str
    q: int
    M: int
    M1: int
    M2: int
    m: int = 0
    d: int = 0
    T: int = 0
    trace: int | None = None

    def __post_init__(self):
        if self.kind not in (K3_TYPE_II, K3_TYPE_III, ENRIQUES_TYPE_II, ENRIQUES_TYPE_III):
            raise ValueError(f"unknown degeneration kind {self.kind!r}")
        p, _ = _prime_power(self.q)
        if any(x < 0 for x in (self.M, self.M1, self.M2, self.m, self.d, self.T)):
            raise ValueError("combinatorial counts must be nonnegative")
        if self.M1 + self.M2 != self.M:
            raise ValueError(f"M1 + M2 = {self.M1 + self.M2} != M = {self.M}")
        if self.kind in (ENRIQUES_TYPE_II, ENRIQUES_TYPE_III) and p == 2:
            raise ValueError("classical Enriques degenerations need p != 2")
        if self.kind in (K3_TYPE_II, ENRIQUES_TYPE_II):
            if self.T != 0 or self.d != self.M - 1:
                raise ValueError(
                    "Type II dual graphs are chains: T = 0 and d = M - 1"
                )
            if self.trace is None:
                raise ValueError("Type II needs the trace of the double elliptic curve")
            if self.trace * self.trace > 4 * self.q:
                raise ValueError(f"trace {self.trace} violates |a| <= 2 sqrt(q)")
            if self.M < 2:
                raise ValueError("a Type II degeneration has at least two components")
        else:
            if self.trace is not None:
                raise ValueError("Type III carries no double elliptic curve")
            euler = 2 if self.kind == K3_TYPE_III else 1
            if self.M - self.d + self.T != euler:
                raise ValueError(
                    f"M - d + T = {self.M - self.d + self.T}, expected {euler} "
                    f"for {self.kind}"
                )
            if self.T % 2 == 1 and p != 2:
                warnings.warn(
                    f"odd triple-point count T = {self.T} with p = {p} != 2",
                    stacklevel=3,
                )


def _h1_pair(a: int, q: int) -> tuple[ZPoly, ZPoly]:
    # det(1 - tF | H^1(E)) and its Tate twist det(1 - qtF | H^1(E))
    return (1, -a, q), (1, -a * q, q ** 3)


def build_k3_zeta(data: SnclSurfaceData) -> RationalZeta:
    """Point-count zeta of a semistable combinatorial K3 degeneration."""
    if data.kind not in (K3_TYPE_II, K3_TYPE_III):
        raise ValueError(f"expected a K3 kind, got {data.kind!r}")
    q, M, M1, M2, m = data.q, data.M, data.M1, data.M2, data.m
    exps: dict[ZPoly, int] = {}
    if data.kind == K3_TYPE_II:
        h1, h1_tw = _h1_pair(data.trace, q)
        exps[h1_tw] = M - 2
        exps[(1, -1)] = -1
        exps[h1] = exps.get(h1, 0) - 1
        exps[(1, -q)] = -(M1 + 2 * M2 + M - 3 + m)
        exps[(1, -(q * q))] = exps.get((1, -(q * q)), 0) - M
    else:
        exps[(1, -1)] = -2
        exps[(1, -q)] = -(M1 + 2 * M2 + m - data.d)
        exps[(1, -(q * q))] = -M
    return RationalZeta.from_exponents(exps)


def build_enriques_zeta(data: SnclSurfaceData) -> RationalZeta:
    """Point-count zeta of a semistable classical Enriques degeneration (p != 2)."""
    if data.kind not in (ENRIQUES_TYPE_II, ENRIQUES_TYPE_III):
        raise ValueError(f"expected an Enriques kind, got {data.kind!r}")
    q, M, M1, M2, m = data.q, data.M, data.M1, data.M2, data.m
    exps: dict[ZPoly, int] = {}
    if data.kind == ENRIQUES_TYPE_II:
        _h1, h1_tw = _h1_pair(data.trace, q)
        exps[h1_tw] = M - 1
        exps[(1, -1)] = -1
        exps[(1, -q)] = -(M1 + 2 * M2 + M - 1 + m)
        exps[(1, -(q * q))] = exps.get((1, -(q * q)), 0) - M
    else:
        exps[(1, -1)] = -1
        exps[(1, -q)] = -(M1 + 2 * M2 + m - data.d)
        exps[(1, -(q * q))] = -M
    return RationalZeta.from_exponents(exps)


def k3_type2_h2_diagnostic(data: SnclSurfaceData) -> dict[str, int]:
    """Informational eigenvalue bookkeeping for the Type II middle degree.

    Not enforced: no closed identity ties (M, M1, M2, m) to the 22
    middle-degree eigenvalues of a smoothing.
    """
    if data.kind != K3_TYPE_II:
        raise ValueError("diagnostic applies to K3 Type II data")
    numerator_degree = 2 * (data.M - 2)
    den_h1_degree = 2
    den_qt_multiplicity = data.M1 + 2 * data.M2 + data.M - 3 + data.m
    return {
        "numerator_degree": numerator_degree,
        "denominator_h1_degree": den_h1_degree,
        "denominator_qt_multiplicity": den_qt_multiplicity,
        "net_middle_eigenvalues": den_h1_degree + den_qt_multiplicity - numerator_degree,
    }


@dataclass(frozen=True)
class LogZeta:
    """Inertia-invariant zeta of a semistable surface, with per-degree factors."""

    kind: str
    q: int
    trace: int | None
    degree_factors: tuple[tuple[int, tuple[tuple[ZPoly, int], ...]], ...]
    zeta: RationalZeta

    def factors(self, i: int) -> tuple[tuple[ZPoly, int], ...]:
        for j, fs in self.degree_factors:
            if j == i:
                return fs
        return ()

    def __str__(self):
        return str(self.zeta)


def build_log_zeta(kind: str, q: int, a: int | None = None) -> LogZeta:
    """Closed-form inertia-invariant zeta for minimal semistable surfaces.

    kind "K3-TypeII" needs the elliptic trace a; "K3-TypeIII" and
    "Enriques" reject one.  H^0 contributes 1 - t, H^1 and H^3 are
    trivial, H^4 contributes 1 - q^2 t, and H^2 is per kind:
    (1 - a t + q t^2)(1 - qt)^18, (1 - t)(1 - qt)^19, or (1 - qt)^10.
    """
    p, _ = _prime_power(q)
    if kind == K3_TYPE_II:
        if a is None:
            raise ValueError("K3 Type II needs the trace of the double elliptic curve")
        if a * a > 4 * q:
            raise ValueError(f"trace {a} violates |a| <= 2 sqrt(q)")
        h2 = (((1, -a, q), 1), ((1, -q), 18))
    elif kind == K3_TYPE_III:
        if a is not None:
            raise ValueError("K3 Type III carries no trace parameter")
        h2 = (((1, -1), 1), ((1, -q), 19))
    elif kind == ENRIQUES:
        if a is not None:
            raise ValueError("Enriques carries no trace parameter")
        if p == 2:
            raise ValueError("classical Enriques surfaces need p != 2")
        h2 = (((1, -q), 10),)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    degree_factors = (
        (0, (((1, -1), 1),)),
        (1, ()),
        (2, h2),
        (3, ()),
        (4, (((1, -(q * q)), 1),)),
    )
    exps: dict[ZPoly, int] = {}
    for i, factors in degree_factors:
        sign = 1 if (i + 1) % 2 == 0 else -1
        for poly, mult in factors:
            key = zpoly(poly)
            exps[key] = exps.get(key, 0) + sign * mult
    return LogZeta(
        kind=kind,
        q=q,
        trace=a,
        degree_factors=degree_factors,
        zeta=RationalZeta.from_exponents(exps),
    )
