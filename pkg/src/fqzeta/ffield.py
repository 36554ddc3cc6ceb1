"""Exact arithmetic in small finite fields F_{p^e}.

Construction is deterministic for fixed (p, e): the modulus is the first
monic irreducible polynomial of degree e over F_p in the base-p counter
order on its lower coefficients, and the generator is the first element
(in enumeration order) whose multiplicative order is certified to be
p^e - 1 by checking g^((p^e-1)/r) != 1 for every prime r | p^e - 1.

Elements live in the polynomial basis and are addressed by the integer
index sum(c_i * p^i).  Extension fields carry exp/log tables for the
multiplicative group, and a Zech logarithm table when q <= 2^16, so the
counting loops elsewhere pay one lookup per multiplication or addition.
Prime fields use plain modular arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Union

DEFAULT_MAX_FIELD_SIZE = 1 << 20
ZECH_TABLE_LIMIT = 1 << 16
# exp/log tables above this size cost more to build than they save;
# larger extension fields fall back to per-operation polynomial reduction
_TABLE_LIMIT = ZECH_TABLE_LIMIT

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n below 3.3 * 10^24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime factors of n in ascending order (trial division)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


# ---------------------------------------------------------------------------
# dense polynomials over F_p: tuples of coefficients, ascending degree


def _ptrim(a: list[int]) -> tuple[int, ...]:
    i = len(a)
    while i and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _ptrim(a)


def _pmulmod(a, b, m, p):
    return _pmod(_pmul(a, b, p), m, p)


def _ppowmod(a, n, m, p):
    result = (1,)
    base = _pmod(a, m, p)
    while n:
        if n & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        n >>= 1
    return result


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [
        ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
        for i in range(n)
    ]
    return _ptrim(out)


def _pgcd(a, b, p):
    while b:
        inv = pow(b[-1], p - 2, p)
        nb = tuple(c * inv % p for c in b)  # make monic for stable reduction
        a, b = b, _pmod(a, nb, p)
    return a


def _is_irreducible(m, p, e):
    # Rabin test: x^(p^e) == x mod m, and gcd(x^(p^(e/r)) - x, m) = 1
    # for every prime r | e
    x = (0, 1)
    for r in prime_factors(e):
        h = _ppowmod(x, p ** (e // r), m, p)
        g = _pgcd(m, _psub(h, x, p), p)
        if len(g) > 1:
            return False
    return _ppowmod(x, p ** e, m, p) == x


def _lowest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """First monic irreducible of degree e, lower coefficients counted in base p."""
    if e == 1:
        return (0, 1)
    for value in range(p ** e):
        tail, v = [], value
        for _ in range(e):
            v, r = divmod(v, p)
            tail.append(r)
        m = tuple(tail) + (1,)
        if _is_irreducible(m, p, e):
            return m
    raise RuntimeError(f"no irreducible polynomial of degree {e} over F_{p}")


# ---------------------------------------------------------------------------


class Field:
    """The finite field with q = p**e elements."""

    def __init__(self, p: int, e: int, max_size: int = DEFAULT_MAX_FIELD_SIZE):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"p = {p!r} is not a prime number")
        if not isinstance(e, int) or e < 1:
            raise ValueError(f"exponent e = {e!r} must be a positive integer")
        q = p ** e
        if q > max_size:
            raise ValueError(
                f"field size {q} = {p}^{e} exceeds the enumeration bound {max_size}"
            )
        self.p = p
        self.e = e
        self.q = q
        self.o = q - 1  # multiplicative group order
        self.modulus = _lowest_irreducible(p, e)
        self._exp: list[int] | None = None
        self._log: list[int | None] | None = None
        self._zech: list[int | None] | None = None
        self._gen_index = self._find_generator()
        if e > 1 and q <= _TABLE_LIMIT:
            self._build_tables()

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"Field(p={self.p}, e={self.e})"

    # -- index <-> coefficient vector ---------------------------------------

    def coeffs_of(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            index, r = divmod(index, self.p)
            out.append(r)
        return tuple(out)

    def index_of(self, coeffs) -> int:
        if len(coeffs) > self.e:
            raise ValueError(f"coefficient vector longer than e = {self.e}")
        idx = 0
        for c in reversed(tuple(coeffs)):
            idx = idx * self.p + (c % self.p)
        return idx

    # -- construction helpers ------------------------------------------------

    def _mul_idx_raw(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        prod = _pmulmod(self.coeffs_of(a), self.coeffs_of(b), self.modulus, self.p)
        return self.index_of(prod + (0,) * (self.e - len(prod)))

    def _pow_idx_raw(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul_idx_raw(result, base)
            base = self._mul_idx_raw(base, base)
            n >>= 1
        return result

    def _find_generator(self) -> int:
        if self.o == 1:
            return 1
        factors = prime_factors(self.o)
        for idx in range(2, self.q):
            if all(self._pow_idx_raw(idx, self.o // r) != 1 for r in factors):
                if self._pow_idx_raw(idx, self.o) != 1:
                    continue  # not a unit of full order; cannot happen
                return idx
        raise RuntimeError(f"no generator found in F_{self.q}")

    def _build_tables(self):
        exp = [0] * self.o
        log: list[int | None] = [None] * self.q
        cur = 1
        for i in range(self.o):
            exp[i] = cur
            log[cur] = i
            cur = self._mul_idx_raw(cur, self._gen_index)
        if cur != 1:
            raise RuntimeError("generator order verification failed")
        self._exp, self._log = exp, log
        if self.q <= ZECH_TABLE_LIMIT:
            zech: list[int | None] = [None] * self.o
            for i in range(self.o):
                s = self._add_coeffwise(1, exp[i])
                zech[i] = None if s == 0 else log[s]
            self._zech = zech

    def _add_coeffwise(self, a: int, b: int) -> int:
        p, idx, mult = self.p, 0, 1
        for _ in range(self.e):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            idx += ((ra + rb) % p) * mult
            mult *= p
        return idx

    # -- index arithmetic ----------------------------------------------------

    def add_idx(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self._zech is not None:
            if a == 0:
                return b
            if b == 0:
                return a
            la, lb = self._log[a], self._log[b]
            z = self._zech[(lb - la) % self.o]
            return 0 if z is None else self._exp[(la + z) % self.o]
        return self._add_coeffwise(a, b)

    def neg_idx(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        return self.mul_idx(a, self.p - 1)

    def sub_idx(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        return self.add_idx(a, self.neg_idx(b))

    def mul_idx(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % self.o]
        return self._mul_idx_raw(a, b)

    def inv_idx(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in finite field")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(-self._log[a]) % self.o]
        return self._pow_idx_raw(a, self.o - 1)

    def div_idx(self, a: int, b: int) -> int:
        return self.mul_idx(a, self.inv_idx(b))

    def pow_idx(self, a: int, n: int) -> int:
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        n %= self.o or 1  # a^(q-1) = 1 for a != 0
        if self._log is not None and self.e > 1:
            return self._exp[(self._log[a] * n) % self.o]
        if self.e == 1:
            return pow(a, n, self.p)
        return self._pow_idx_raw(a, n)

    def frobenius_idx(self, a: int) -> int:
        return self.pow_idx(a, self.p)

    def chi_idx(self, a: int) -> int:
        """Quadratic character: 0 on zero, +1 on nonzero squares, -1 otherwise."""
        if self.q % 2 == 0:
            raise ValueError("quadratic character needs odd field order")
        if a == 0:
            return 0
        if self._log is not None and self.e > 1:
            return 1 if self._log[a] % 2 == 0 else -1
        return 1 if self.pow_idx(a, self.o // 2) == 1 else -1

    # -- element-level API ---------------------------------------------------

    def element(self, index: int) -> "FieldElement":
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} out of range for F_{self.q}")
        return FieldElement(self, index)

    def from_coeffs(self, coeffs) -> "FieldElement":
        return FieldElement(self, self.index_of(coeffs))

    def from_int(self, c: int) -> "FieldElement":
        return FieldElement(self, c % self.p)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def generator(self) -> "FieldElement":
        return FieldElement(self, self._gen_index)

    def gen_power(self, k: int) -> "FieldElement":
        return FieldElement(self, self.pow_idx(self._gen_index, k))

    def elements(self) -> Iterator["FieldElement"]:
        """All q elements, zero first, in coefficient-vector order."""
        for idx in range(self.q):
            yield FieldElement(self, idx)

    def nonzero_elements(self) -> Iterator["FieldElement"]:
        return itertools.islice(self.elements(), 1, None)


@dataclass(frozen=True)
class FieldElement:
    """An element of F_{p^e} in the polynomial basis of its field."""

    field: Field
    index: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs_of(self.index)

    def _peer(self, other) -> int:
        if not isinstance(other, FieldElement):
            if isinstance(other, int):
                return other % self.field.p
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.field != self.field:
            raise ValueError("elements belong to different fields")
        return other.index

    def __add__(self, other):
        return FieldElement(self.field, self.field.add_idx(self.index, self._peer(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub_idx(self.index, self._peer(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub_idx(self._peer(other), self.index))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul_idx(self.index, self._peer(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div_idx(self.index, self._peer(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div_idx(self._peer(other), self.index))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_idx(self.index))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow_idx(self.index, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_idx(self.index))

    def frobenius(self) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius_idx(self.index))

    def __bool__(self):
        return self.index != 0

    def __repr__(self):
        if self.field.e == 1:
            return f"F{self.field.p}({self.index})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                if i == 0:
                    terms.append(str(c))
                else:
                    x = "x" if i == 1 else f"x^{i}"
                    terms.append(x if c == 1 else f"{c}*{x}")
        return f"F{self.field.q}({' + '.join(terms) if terms else '0'})"


# ---------------------------------------------------------------------------
# coefficient specifications: integers (image of Z) or generator powers


@dataclass(frozen=True)
class GenPow:
    """Coefficient given as generator**power of the resolving field."""

    power: int


CoeffSpec = Union[int, GenPow]


def resolve_coeff(spec: CoeffSpec, field: Field) -> FieldElement:
    if isinstance(spec, GenPow):
        return field.gen_power(spec.power)
    if isinstance(spec, bool) or not isinstance(spec, int):
        raise TypeError(f"coefficient spec must be int or GenPow, got {spec!r}")
    return field.from_int(spec)


_FIELD_CACHE: dict[tuple[int, int], Field] = {}


def field_make(p: int, e: int, max_size: int = DEFAULT_MAX_FIELD_SIZE) -> Field:
    """Construct (or fetch) the canonical F_{p^e}; deterministic per (p, e)."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p = {p!r} is not a prime number")
    if not isinstance(e, int) or e < 1:
        raise ValueError(f"exponent e = {e!r} must be a positive integer")
    if p ** e > max_size:
        raise ValueError(
            f"field size {p ** e} = {p}^{e} exceeds the enumeration bound {max_size}"
        )
    key = (p, e)
    field = _FIELD_CACHE.get(key)
    if field is None:
        field = Field(p, e, max_size=max(p ** e, DEFAULT_MAX_FIELD_SIZE))
        _FIELD_CACHE[key] = field
    return field
