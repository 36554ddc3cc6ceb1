"""One-dimensional formal group machinery.

Covers the logarithm of the deformation group of a diagonal hypersurface,
the multiplication-by-p series [p](t) = l^{-1}(p l(t)), height detection
from the mod-p shape of [p](t), the residue-criterion height of diagonal
forms, the trace criterion for elliptic curves, and the Dieudonne slope
data (companion matrix, characteristic polynomial, Newton polygon).

All series arithmetic is exact rational; [p](t) is reduced mod p only
after the exact computation, and p-integrality of its coefficients is
asserted rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .ffield import is_prime
from .series import PowerSeries, solve_composition

FINITE = "finite"
INFINITE_BY_CRITERION = "infinite-by-criterion"
NOT_DETECTED = "not-detected"


@dataclass(frozen=True)
class HeightResult:
    """Outcome of a height computation.

    Finite(h) is only produced when a unit coefficient was found at
    exponent exactly p^h; NotDetectedUpTo(bound) makes no claim beyond
    the scanned range and is never promoted to infinity; only the proved
    residue criterion for diagonal forms yields InfiniteByCriterion.
    """

    kind: str
    h: int | None = None
    bound: int | None = None

    @classmethod
    def finite(cls, h: int) -> "HeightResult":
        if h < 1:
            raise ValueError("finite heights are positive")
        return cls(FINITE, h=h)

    @classmethod
    def infinite_by_criterion(cls) -> "HeightResult":
        return cls(INFINITE_BY_CRITERION)

    @classmethod
    def not_detected_up_to(cls, bound: int) -> "HeightResult":
        return cls(NOT_DETECTED, bound=bound)

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    def __str__(self):
        if self.kind == FINITE:
            return f"Finite({self.h})"
        if self.kind == INFINITE_BY_CRITERION:
            return "InfiniteByCriterion"
        return f"NotDetectedUpTo({self.bound})"


def stienstra_log(d: int, a: int, order: int) -> PowerSeries:
    """Logarithm sum_m a^m (md)!/(m!)^d t^(md+1)/(md+1) truncated at order."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    if order < 1:
        raise ValueError("order must be >= 1")
    coeffs = {}
    m = 0
    while m * d + 1 <= order:
        coeffs[m * d + 1] = Fraction(
            a ** m * factorial(m * d), factorial(m) ** d * (m * d + 1)
        )
        m += 1
    return PowerSeries(order, coeffs)


def mult_by_p(log: PowerSeries, p: int, order: int) -> PowerSeries:
    """[p](t) = l^{-1}(p l(t)) to the given order, with p-integrality asserted."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if order < 1:
        raise ValueError("order must be >= 1")
    if log.order < order:
        raise ValueError(
            f"logarithm of order {log.order} cannot produce [p](t) to order {order}"
        )
    if log.coefficient(0) != 0:
        raise ValueError("a group-law logarithm has no constant term")
    c1 = log.coefficient(1)
    if c1 == 0 or c1.numerator % p == 0 or c1.denominator % p == 0:
        raise ValueError("logarithm needs a unit linear coefficient")
    log = log.truncate(order)
    series = solve_composition(log, log.scale(p))
    for n in range(1, order + 1):
        c = series.coefficient(n)
        if c.denominator % p == 0:
            raise ArithmeticError(
                f"[p](t) coefficient at t^{n} is not {p}-integral: {c}"
            )
    return series


def height_from_p_series(pseries: PowerSeries, p: int, bound: int) -> HeightResult:
    """Height read off the smallest exponent of [p](t) with a unit coefficient.

    Scans up to p^bound.  The leading nonzero exponent mod p must be a
    power p^h with h >= 1; anything else signals a series that is not a
    multiplication-by-p series.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    limit = p ** bound
    if pseries.order < limit:
        raise ValueError(
            f"series order {pseries.order} is too small to scan up to p^{bound} = {limit}"
        )
    for n in range(1, limit + 1):
        c = pseries.coefficient(n)
        if c.denominator % p == 0:
            raise ArithmeticError(f"coefficient at t^{n} is not {p}-integral")
        if c.numerator % p == 0:
            continue
        h, m = 0, n
        while m % p == 0:
            m //= p
            h += 1
        if m != 1 or h < 1:
            raise ArithmeticError(
                f"leading unit coefficient at t^{n}, which is not a power of {p}"
            )
        return HeightResult.finite(h)
    return HeightResult.not_detected_up_to(bound)


def diagonal_height(d: int, p: int) -> HeightResult:
    """Height of the diagonal degree-d hypersurface group: 1 iff p = 1 mod d."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d % p == 0:
        raise ValueError(f"criterion needs gcd(d, p) = 1, got d = {d}, p = {p}")
    if (p - 1) % d == 0:
        return HeightResult.finite(1)
    return HeightResult.infinite_by_criterion()


def elliptic_height(p: int, e: int, count: int) -> HeightResult:
    """Finite(2) when p divides the trace 1 + q - count, else Finite(1)."""
    if not is_prime(p) or e < 1:
        raise ValueError("needs a prime p and e >= 1")
    q = p ** e
    a = 1 + q - count
    if a * a > 4 * q:
        raise ValueError(
            f"count {count} violates the Hasse bound |1+q-count| <= 2 sqrt(q)"
        )
    return HeightResult.finite(2) if a % p == 0 else HeightResult.finite(1)


# ---------------------------------------------------------------------------
# Dieudonne slope data


@dataclass(frozen=True)
class DieudonneSlopeData:
    h: int
    p: int
    charpoly: tuple[int, ...]  # ascending; det(tI - A) = t^h - p^(h-1)
    slopes: tuple[Fraction, ...]


def _charpoly(matrix: list[list[int]]) -> tuple[int, ...]:
    """det(tI - A) via trace Newton identities, exact arithmetic."""
    h = len(matrix)
    powers = [[Fraction(x) for x in row] for row in matrix]
    traces = [sum(powers[i][i] for i in range(h))]
    cur = powers
    for _ in range(h - 1):
        cur = [
            [sum(cur[i][k] * matrix[k][j] for k in range(h)) for j in range(h)]
            for i in range(h)
        ]
        traces.append(sum(cur[i][i] for i in range(h)))
    # e_k = (1/k) sum_{i=1..k} (-1)^(i-1) e_{k-i} t_i
    es = [Fraction(1)]
    for k in range(1, h + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * es[k - i] * traces[i - 1]
        es.append(acc / k)
    coeffs = []
    for i in range(h + 1):
        c = (-1) ** (h - i) * es[h - i]
        if c.denominator != 1:
            raise ArithmeticError("characteristic polynomial is not integral")
        coeffs.append(c.numerator)
    return tuple(coeffs)


def newton_slopes(coeffs: tuple[int, ...], p: int) -> tuple[Fraction, ...]:
    """Valuations of the roots, from the lower Newton polygon of the polynomial.

    coeffs ascend; the constant and leading coefficients must be nonzero.
    Returns one slope per root, ascending, as exact fractions.
    """
    if not coeffs or coeffs[0] == 0 or coeffs[-1] == 0:
        raise ValueError("polynomial needs nonzero constant and leading coefficients")

    def vp(n: int) -> int:
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        return v

    pts = [(i, vp(c)) for i, c in enumerate(coeffs) if c != 0]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes: list[Fraction] = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        s = Fraction(y1 - y2, x2 - x1)  # root valuation on this segment
        slopes.extend([s] * (x2 - x1))
    return tuple(sorted(slopes))


def dieudonne_slopes(h: int, p: int) -> DieudonneSlopeData:
    """Slope data of a height-h one-dimensional group: all slopes (h-1)/h.

    Builds the matrix of F on the quotient module presented by the relation
    F = V^(h-1), in the basis (1, V, ..., V^(h-1)), confirms that its
    characteristic polynomial is t^h - p^(h-1), and reads the slopes off
    the Newton polygon.
    """
    if h < 1:
        raise ValueError("height must be >= 1")
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    mat = [[0] * h for _ in range(h)]
    mat[h - 1][0] = 1  # F . 1 = V^(h-1)
    for j in range(1, h):
        mat[j - 1][j] = p  # F . V^j = p V^(j-1)
    cp = _charpoly(mat)
    expected = tuple(
        (-(p ** (h - 1)) if i == 0 else (1 if i == h else 0)) for i in range(h + 1)
    )
    if cp != expected:
        raise ArithmeticError(f"characteristic polynomial {cp} != t^{h} - {p}^{h - 1}")
    return DieudonneSlopeData(h=h, p=p, charpoly=cp, slopes=newton_slopes(cp, p))
