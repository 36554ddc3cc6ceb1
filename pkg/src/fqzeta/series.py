"""Truncated power series with exact rational coefficients.

A series of truncation order N stores its coefficients 0..N as one
integer vector over a single positive denominator.  Multiplication is
then an integer convolution plus one renormalisation, which is what
keeps the compositional Newton solves for formal-group arithmetic fast
even when the coefficients involve factorials of a few hundred.

Operations never silently exceed the stated truncation order: binary
operations truncate to the smaller order of their operands.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class PowerSeries:
    """Exact rational power series truncated at a fixed order."""

    __slots__ = ("order", "nums", "den")

    def __init__(self, order, coeffs=None):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        nums = [0] * (order + 1)
        den = 1
        if coeffs is not None:
            items = coeffs.items() if hasattr(coeffs, "items") else enumerate(coeffs)
            fracs = []
            for n, c in items:
                n = int(n)
                if n < 0:
                    raise ValueError("negative exponent in series coefficients")
                if n <= order:
                    fracs.append((n, Fraction(c)))
            for _, c in fracs:
                den = den * c.denominator // gcd(den, c.denominator)
            for n, c in fracs:
                nums[n] += c.numerator * (den // c.denominator)
        self.order = order
        self.nums, self.den = _normalized(nums, den)

    @classmethod
    def _raw(cls, order, nums, den):
        s = cls.__new__(cls)
        s.order = order
        s.nums, s.den = _normalized(nums, den)
        return s

    @classmethod
    def zero(cls, order):
        return cls._raw(order, [0] * (order + 1), 1)

    @classmethod
    def one(cls, order):
        return cls._raw(order, [1] + [0] * order, 1)

    @classmethod
    def identity(cls, order):
        """The series t."""
        if order < 1:
            raise ValueError("identity series needs order >= 1")
        nums = [0] * (order + 1)
        nums[1] = 1
        return cls._raw(order, nums, 1)

    # -- inspection ----------------------------------------------------------

    def coefficient(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} outside truncation order {self.order}")
        return Fraction(self.nums[n], self.den)

    def coefficients(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.nums]

    def valuation(self) -> int | None:
        """Smallest exponent with nonzero coefficient, None for the zero series."""
        for i, c in enumerate(self.nums):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return (
            self.order == other.order
            and self.den == other.den
            and self.nums == other.nums
        )

    def __hash__(self):
        return hash((self.order, self.den, tuple(self.nums)))

    # -- ring operations -----------------------------------------------------

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return PowerSeries._raw(order, self.nums[: order + 1], self.den)

    def __neg__(self):
        return PowerSeries._raw(self.order, [-c for c in self.nums], self.den)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _constant(self.order, other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        order = min(self.order, other.order)
        d = self.den * other.den // gcd(self.den, other.den)
        ma, mb = d // self.den, d // other.den
        nums = [
            self.nums[i] * ma + other.nums[i] * mb for i in range(order + 1)
        ]
        return PowerSeries._raw(order, nums, d)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, PowerSeries) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PowerSeries":
        c = Fraction(c)
        return PowerSeries._raw(
            self.order, [n * c.numerator for n in self.nums], self.den * c.denominator
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        order = min(self.order, other.order)
        a, b = self.nums, other.nums
        na = sum(1 for c in a[: order + 1] if c)
        nb = sum(1 for c in b[: order + 1] if c)
        if nb < na:
            a, b = b, a
        out = [0] * (order + 1)
        for i in range(min(len(a) - 1, order) + 1):
            ai = a[i]
            if ai:
                for j in range(min(len(b) - 1, order - i) + 1):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
        return PowerSeries._raw(order, out, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "PowerSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        if self.nums[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        order = self.order
        c0 = Fraction(self.nums[0], self.den)
        inv = _constant(0, 1 / c0)
        prec = 0
        while prec < order:
            prec = min(2 * prec + 1, order)
            t = self.truncate(prec)
            inv = _lift(inv, prec)
            inv = inv * (2 - t * inv)
        return inv

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return self * other.inverse()

    def derivative(self) -> "PowerSeries":
        if self.order == 0:
            return PowerSeries.zero(0)
        nums = [i * self.nums[i] for i in range(1, self.order + 1)]
        return PowerSeries._raw(self.order - 1, nums, self.den)

    # -- composition ---------------------------------------------------------

    def compose(self, g: "PowerSeries") -> "PowerSeries":
        """self(g); g must have zero constant term."""
        if g.nums[0] != 0:
            raise ValueError("composition needs a series with zero constant term")
        order = min(self.order, g.order)
        g = g.truncate(order)
        acc_nums = [0] * (order + 1)
        acc = PowerSeries._raw(order, acc_nums, 1) + self.coefficient(0)
        cache: dict[int, PowerSeries] = {}
        power = None  # g^e for the current support exponent e
        prev = 0
        for e in range(1, order + 1):
            if self.nums[e] == 0:
                continue
            step = _binary_power(g, e - prev, cache) if prev else _binary_power(g, e, cache)
            power = step if power is None else power * step
            prev = e
            acc = acc + power.scale(self.coefficient(e))
        return acc

    def reverse(self) -> "PowerSeries":
        """Compositional inverse; requires zero constant and unit linear term."""
        return solve_composition(self, PowerSeries.identity(self.order))

    # -- presentation ---------------------------------------------------------

    def __str__(self):
        parts = []
        for n, c in enumerate(self.nums):
            if not c:
                continue
            coeff = Fraction(c, self.den)
            mag = abs(coeff)
            if n == 0:
                body = str(mag)
            else:
                t = "t" if n == 1 else f"t^{n}"
                body = t if mag == 1 else f"{mag}*{t}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": {
                str(n): str(Fraction(c, self.den))
                for n, c in enumerate(self.nums)
                if c
            },
        }

    @classmethod
    def from_json(cls, doc: dict) -> "PowerSeries":
        return cls(int(doc["order"]), {int(k): Fraction(v) for k, v in doc["coeffs"].items()})

    def __repr__(self):
        return f"PowerSeries(order={self.order}, {self})"


def _normalized(nums, den):
    if den < 0:
        den = -den
        nums = [-c for c in nums]
    g = den
    for c in nums:
        if c:
            g = gcd(g, c)
            if g == 1:
                break
    if g > 1:
        den //= g
        nums = [c // g for c in nums]
    elif not isinstance(nums, list):
        nums = list(nums)
    return list(nums), den


def _constant(order, c):
    c = Fraction(c)
    nums = [0] * (order + 1)
    nums[0] = c.numerator
    return PowerSeries._raw(order, nums, c.denominator)


def _lift(s: PowerSeries, order: int) -> PowerSeries:
    """Reinterpret s at a larger truncation order (upper coefficients zero)."""
    if order <= s.order:
        return s.truncate(order)
    return PowerSeries._raw(order, s.nums + [0] * (order - s.order), s.den)


def _binary_power(g: PowerSeries, n: int, cache: dict[int, PowerSeries]) -> PowerSeries:
    if n in cache:
        return cache[n]
    if n == 1:
        cache[1] = g
        return g
    half = _binary_power(g, n // 2, cache)
    out = half * half
    if n % 2:
        out = out * g
    cache[n] = out
    return out


def series_compose(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    return f.compose(g)


def series_reverse(f: PowerSeries) -> PowerSeries:
    return f.reverse()


def solve_composition(f: PowerSeries, target: PowerSeries) -> PowerSeries:
    """The series s with f(s) = target, to target's truncation order.

    Both f and target need zero constant terms and f a nonzero linear
    coefficient.  Newton iteration with doubling precision; the result is
    verified by resubstitution before it is returned.
    """
    if f.nums[0] != 0 or target.nums[0] != 0:
        raise ValueError("compositional solve needs zero constant terms")
    if f.nums[1] == 0:
        raise ValueError("compositional solve needs a unit linear coefficient")
    order = target.order
    if f.order < order:
        raise ValueError(
            f"series of order {f.order} is too short to solve to order {order}"
        )
    f1 = f.coefficient(1)
    s = PowerSeries.identity(1).scale(target.coefficient(1) / f1)
    fprime = f.derivative()
    prec = 1
    while prec < order:
        prec = min(2 * prec, order)
        s = _lift(s, prec)
        defect = f.truncate(prec).compose(s) - target.truncate(prec)
        if defect.is_zero():
            continue
        m = min(prec, fprime.order)
        # the defect has valuation >= 2, so the divisor is only ever needed
        # to order prec - 2 and lifting with zeros is sound
        dfs = _lift(fprime.truncate(m).compose(s.truncate(m)), prec)
        s = s - defect / dfs
    check = f.truncate(order).compose(s) - target
    if not check.is_zero():
        raise ArithmeticError("compositional Newton solve failed to converge")
    return s


def series_exp(f: PowerSeries) -> PowerSeries:
    """exp(f) for a series with zero constant term."""
    if f.nums[0] != 0:
        raise ValueError("series exponential needs a zero constant term")
    order = f.order
    fc = f.coefficients()
    out = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        acc = Fraction(0)
        for j in range(1, n + 1):
            if fc[j]:
                acc += j * fc[j] * out[n - j]
        out[n] = acc / n
    return PowerSeries(order, out)
