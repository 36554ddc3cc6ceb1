"""Congruence checkers for point counts.

The height checker evaluates counts N_k against the modulus dictated by
the formal-group height: q^k when the height is infinite,
p^ceil(ek(1 - 1/h)) for finite h >= 2, and the anti-congruence
N_k != 1 mod p when h = 1.  Alongside: the floor((ke+1)/2) bound, the
Ax-Katz checker (which refuses inadmissible systems), the supersingular
count classification for curves with one-dimensional H^0 and H^1, and
the enumeration of admissible Frobenius traces of elliptic curves.

All congruences are evaluated in Z on integer counts.  Whether a given
variety satisfies the cohomological hypotheses behind the height checker
is the caller's responsibility; a point count cannot certify them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .counting import PolySystem, count_projective
from .ffield import DEFAULT_MAX_FIELD_SIZE, is_prime
from .formal_groups import FINITE, INFINITE_BY_CRITERION, HeightResult

INFINITE = math.inf

HEIGHT2 = "Height2"
NOT_HEIGHT2 = "NotHeight2"


@dataclass(frozen=True)
class CongruenceRow:
    k: int
    count: int
    modulus: int
    residue: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "count": self.count,
            "modulus": self.modulus,
            "residue": self.residue,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class CongruenceReport:
    rows: tuple[CongruenceRow, ...]
    note: str = ""

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_json(self) -> dict:
        return {
            "rows": [r.to_json() for r in self.rows],
            "pass": self.passed,
            "note": self.note,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "CongruenceReport":
        rows = tuple(
            CongruenceRow(
                k=int(r["k"]),
                count=int(r["count"]),
                modulus=int(r["modulus"]),
                residue=int(r["residue"]),
                passed=bool(r["pass"]),
            )
            for r in doc["rows"]
        )
        return cls(rows=rows, note=doc.get("note", ""))

    def to_table(self) -> str:
        header = f"{'k':>3} {'count':>12} {'modulus':>10} {'residue':>8} {'pass':>5}"
        lines = [header]
        for r in self.rows:
            lines.append(
                f"{r.k:>3} {r.count:>12} {r.modulus:>10} {r.residue:>8} "
                f"{'yes' if r.passed else 'NO':>5}"
            )
        lines.append(f"overall: {'pass' if self.passed else 'FAIL'}"
                     + (f"  ({self.note})" if self.note else ""))
        return "\n".join(lines)


HeightSpec = Union[int, float, HeightResult]


def _height_value(height: HeightSpec):
    if isinstance(height, HeightResult):
        if height.kind == FINITE:
            return height.h
        if height.kind == INFINITE_BY_CRITERION:
            return INFINITE
        raise ValueError(f"cannot check congruences against {height}")
    return height


def check_height_congruence(
    counts: Sequence[int], p: int, e: int, height: HeightSpec
) -> CongruenceReport:
    """Congruence of N_k per the height: q^k-modulus, p^ceil(ek(1-1/h)), or h=1."""
    if not counts:
        raise ValueError("need at least one count")
    if not is_prime(p) or e < 1:
        raise ValueError("needs a prime p and e >= 1")
    h = _height_value(height)
    q = p ** e
    rows = []
    if h == INFINITE:
        note = "modulus q^k (infinite height)"
        for k, n in enumerate(counts, start=1):
            mod = q ** k
            rows.append(CongruenceRow(k, n, mod, n % mod, n % mod == 1))
    elif h == 1:
        note = "anti-congruence: count != 1 mod p (height one)"
        for k, n in enumerate(counts, start=1):
            rows.append(CongruenceRow(k, n, p, n % p, n % p != 1))
    elif isinstance(h, int) and h >= 2:
        note = f"modulus p^ceil(ek(1-1/{h}))"
        for k, n in enumerate(counts, start=1):
            mod = p ** (-((-e * k * (h - 1)) // h))
            rows.append(CongruenceRow(k, n, mod, n % mod, n % mod == 1))
    else:
        raise ValueError(f"height must be a positive integer or infinity, got {h!r}")
    return CongruenceReport(rows=tuple(rows), note=note)


def gauss_bound_check(counts: Sequence[int], p: int, e: int) -> CongruenceReport:
    """N_k = 1 mod p^floor((ke+1)/2); implied by height 2, weaker otherwise."""
    if not counts:
        raise ValueError("need at least one count")
    if not is_prime(p) or e < 1:
        raise ValueError("needs a prime p and e >= 1")
    rows = []
    for k, n in enumerate(counts, start=1):
        mod = p ** ((k * e + 1) // 2)
        rows.append(CongruenceRow(k, n, mod, n % mod, n % mod == 1))
    return CongruenceReport(rows=tuple(rows), note="modulus p^floor((ke+1)/2)")


def ax_katz_check(
    system: PolySystem,
    p: int,
    e: int,
    kmax: int = 1,
    *,
    max_field_size: int = DEFAULT_MAX_FIELD_SIZE,
    threads: int = 1,
) -> CongruenceReport:
    """Count the intersection over F_{q^k} for k <= kmax and check = 1 mod q^k.

    Refuses systems with sum of degrees exceeding the ambient dimension,
    where no congruence is claimed.
    """
    total = sum(system.degrees)
    if total > system.n:
        raise ValueError(
            f"sum of degrees {total} exceeds ambient dimension {system.n}; "
            "the congruence hypothesis fails"
        )
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    q = p ** e
    rows = []
    for k in range(1, kmax + 1):
        n = count_projective(
            system, p, e, k, max_field_size=max_field_size, threads=threads
        )
        mod = q ** k
        rows.append(CongruenceRow(k, n, mod, n % mod, n % mod == 1))
    return CongruenceReport(rows=tuple(rows), note="modulus q^k (degree sum <= n)")


def classify_curve(p: int, e: int, N: int) -> str:
    """Whether a count N of a curve with one-dimensional H^0, H^1 fits height 2.

    Case split on (e mod 2, p): e odd with p >= 5 needs N = 1 + q; e odd
    with p in {2, 3} also allows N = 1 + q +- p^((e+1)/2); e even needs
    N = 1 + q + alpha p^(e/2) with |alpha| <= 2.
    """
    if not is_prime(p) or e < 1:
        raise ValueError("needs a prime p and e >= 1")
    q = p ** e
    t = 1 + q - N
    if t * t > 4 * q:
        raise ValueError(f"count {N} violates purity: |1+q-N| <= 2 sqrt(q)")
    if e % 2 == 1:
        if p >= 5:
            ok = t == 0
        else:
            half = p ** ((e + 1) // 2)
            ok = t in (0, half, -half)
    else:
        ok = t % (p ** (e // 2)) == 0
    return HEIGHT2 if ok else NOT_HEIGHT2


@dataclass(frozen=True)
class TraceSet:
    """Admissible elliptic Frobenius traces over F_q with their case tags."""

    p: int
    e: int
    q: int
    entries: tuple[tuple[int, tuple[int, ...]], ...]  # (trace, sorted case tags)

    @property
    def traces(self) -> tuple[int, ...]:
        return tuple(t for t, _ in self.entries)

    def tags(self, t: int) -> tuple[int, ...]:
        for trace, tags in self.entries:
            if trace == t:
                return tags
        return ()

    def __contains__(self, t: int) -> bool:
        return any(t == trace for trace, _ in self.entries)


def _trace_cases(t: int, p: int, e: int, q: int) -> tuple[int, ...]:
    cases = []
    if math.gcd(t, p) == 1:
        cases.append(1)
    if e % 2 == 0:
        root = p ** (e // 2)
        if abs(t) == 2 * root:
            cases.append(2)
        if p % 3 != 1 and abs(t) == root:
            cases.append(3)
    else:
        if p in (2, 3) and abs(t) == p ** ((e + 1) // 2):
            cases.append(4)
    if t == 0 and (e % 2 == 1 or p % 4 != 1):
        cases.append(5)
    return tuple(cases)


def honda_tate_traces(p: int, e: int) -> TraceSet:
    """All integers |t| <= 2 sqrt(q) admissible as elliptic traces over F_q.

    Every t is tagged with the case numbers (1..5) that admit it:
    (1) t coprime to p; (2) e even, t = +-2 sqrt(q); (3) e even,
    p != 1 mod 3, t = +-sqrt(q); (4) e odd, p in {2, 3},
    t = +-p^((e+1)/2); (5) e odd, or e even with p != 1 mod 4, t = 0.
    """
    if not is_prime(p) or e < 1:
        raise ValueError("needs a prime p and e >= 1")
    q = p ** e
    bound = math.isqrt(4 * q)
    entries = []
    for t in range(-bound, bound + 1):
        cases = _trace_cases(t, p, e, q)
        if cases:
            entries.append((t, cases))
    return TraceSet(p=p, e=e, q=q, entries=tuple(entries))
