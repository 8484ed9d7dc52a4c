"""Exact arithmetic over prime fields.

Scalars and univariate polynomials with coefficients mod p, plus binomial
coefficients computed digit-wise in base p.  Every value carries a reference
to a shared PrimeField context; mixing contexts is rejected eagerly.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Union

NEG_INF = float("-inf")  # degree of the zero polynomial


class FieldMismatch(ValueError):
    """Values from different prime-field contexts were combined."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def binom_mod_p(a: int, b: int, p: int) -> int:
    """C(a, b) mod p via the base-p digit product.

    Returns 0 whenever b > a.  Each digit factor is a binomial of arguments
    below p, so intermediate values stay tiny.
    """
    if a < 0 or b < 0:
        raise ValueError(f"binomial arguments must be nonnegative, got ({a}, {b})")
    if b > a:
        return 0
    result = 1
    while b > 0:
        ad, bd = a % p, b % p
        if bd > ad:
            return 0
        result = result * math.comb(ad, bd) % p
        a //= p
        b //= p
    return result % p


def is_power_of(q: int, p: int) -> bool:
    """True when q = p^e for some e >= 1."""
    if q < p:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def lucas_symmetry_check(a: int, b: int, q: int, p: int) -> bool:
    """Check C(a, q-1-b) = (-1)^(a+b) C(b, q-1-a) mod p for 0 <= a, b < q.

    Here q must be a power of p.  Both sides vanish together when the
    column index exceeds the row index.
    """
    if not is_power_of(q, p):
        raise ValueError(f"{q} is not a power of {p}")
    if not (0 <= a < q and 0 <= b < q):
        raise ValueError(f"need 0 <= a, b < q, got a={a}, b={b}, q={q}")
    lhs = binom_mod_p(a, q - 1 - b, p)
    rhs = binom_mod_p(b, q - 1 - a, p)
    if (a + b) % 2 == 1:
        rhs = (-rhs) % p
    return lhs == rhs


@lru_cache(maxsize=None)
def signed_binom_row(h: int, p: int) -> tuple[int, ...]:
    """Row ((-1)^i C(h, i) mod p for 0 <= i <= h), cached."""
    row = []
    for i in range(h + 1):
        v = binom_mod_p(h, i, p)
        row.append((-v) % p if i % 2 else v)
    return tuple(row)


class PrimeField:
    """Arithmetic context for the field with p elements, p an odd prime.

    p = 2 is accepted nowhere in this package: the constructions divide by 2
    and the parity arguments need -1 != 1.
    """

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        self.p = p

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def element(self, value: Union[int, "Fp"]) -> "Fp":
        if isinstance(value, Fp):
            if value.field != self:
                raise FieldMismatch(f"element of {value.field} used in {self}")
            return value
        return Fp(int(value) % self.p, self)

    @property
    def zero(self) -> "Fp":
        return Fp(0, self)

    @property
    def one(self) -> "Fp":
        return Fp(1, self)

    def binom(self, a: int, b: int) -> "Fp":
        return Fp(binom_mod_p(a, b, self.p), self)

    def poly(self, coeffs: Iterable[Union[int, "Fp"]]) -> "FpPoly":
        return FpPoly(self, coeffs)


class Fp:
    """An element of F_p.  Immutable; arithmetic closes over the context."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = value % field.p
        self.field = field

    def _coerce(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.field != self.field:
                raise FieldMismatch("cannot mix elements of different prime fields")
            return other
        if isinstance(other, int):
            return Fp(other, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(self.value + other.value, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(self.value - other.value, self.field)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(other.value - self.value, self.field)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(self.value * other.value, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.field)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return Fp(pow(self.value, self.field.p - 2, self.field.p), self.field)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.value, e, self.field.p), self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, Fp):
            return other.field == self.field and other.value == self.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Fp({self.value}, p={self.field.p})"


class FpPoly:
    """Univariate polynomial over F_p, stored dense, low degree first.

    Used both for coefficient polynomials in t and for the series variable X;
    the indeterminate has no name of its own.  Instances are immutable and
    always normalized (no trailing zero coefficients).
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs: Iterable[Union[int, Fp]] = ()):
        p = field.p
        cs = []
        for c in coeffs:
            if isinstance(c, Fp):
                if c.field != field:
                    raise FieldMismatch("polynomial coefficient from a different field")
                cs.append(c.value)
            else:
                cs.append(int(c) % p)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field: PrimeField) -> "FpPoly":
        return cls(field, ())

    @classmethod
    def one(cls, field: PrimeField) -> "FpPoly":
        return cls(field, (1,))

    @classmethod
    def monomial(cls, field: PrimeField, coefficient: Union[int, Fp], exponent: int) -> "FpPoly":
        c = int(coefficient) % field.p if not isinstance(coefficient, Fp) else coefficient.value
        if c == 0:
            return cls.zero(field)
        return cls(field, (0,) * exponent + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, j: int) -> int:
        # coefficient of the j-th power; 0 outside the support
        if j < 0 or j >= len(self.coeffs):
            return 0
        return self.coeffs[j]

    def coeff(self, j: int) -> Fp:
        return Fp(self[j], self.field)

    def _check(self, other: "FpPoly") -> None:
        if other.field != self.field:
            raise FieldMismatch("cannot mix polynomials over different prime fields")

    def __add__(self, other: "FpPoly") -> "FpPoly":
        if not isinstance(other, FpPoly):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.field.p
        return FpPoly(self.field, out)

    def __sub__(self, other: "FpPoly") -> "FpPoly":
        if not isinstance(other, FpPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "FpPoly":
        p = self.field.p
        return FpPoly(self.field, tuple((-c) % p for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fp)):
            return self.scale(other)
        if not isinstance(other, FpPoly):
            return NotImplemented
        self._check(other)
        if self.is_zero() or other.is_zero():
            return FpPoly.zero(self.field)
        p = self.field.p
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
        return FpPoly(self.field, out)

    __rmul__ = __mul__

    def scale(self, s: Union[int, Fp]) -> "FpPoly":
        sv = s.value if isinstance(s, Fp) else int(s) % self.field.p
        if sv == 0:
            return FpPoly.zero(self.field)
        if sv == 1:
            return self
        p = self.field.p
        return FpPoly(self.field, tuple(c * sv % p for c in self.coeffs))

    def shift(self, k: int) -> "FpPoly":
        """Multiply by the k-th power of the indeterminate, k >= 0."""
        if k < 0:
            raise ValueError("negative shift")
        if self.is_zero():
            return self
        return FpPoly(self.field, (0,) * k + self.coeffs)

    def __pow__(self, e: int) -> "FpPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = FpPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "FpPoly") -> tuple["FpPoly", "FpPoly"]:
        if not isinstance(other, FpPoly):
            return NotImplemented
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.field.p
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = pow(other.coeffs[-1], p - 2, p)
        quot = [0] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = c * lead_inv % p
            quot[i - d] = f
            for j, oc in enumerate(other.coeffs):
                rem[i - d + j] = (rem[i - d + j] - f * oc) % p
        return FpPoly(self.field, quot), FpPoly(self.field, rem)

    def __mod__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[0]

    def divides(self, other: "FpPoly") -> bool:
        return (other % self).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpPoly):
            return NotImplemented
        return other.field == self.field and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash((self.field.p, self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"FpPoly(p={self.field.p}, {list(self.coeffs)})"


def x_minus_one_pow(field: PrimeField, k: int) -> FpPoly:
    """(X - 1)^k, expanded via binomials rather than repeated multiplication."""
    p = field.p
    out = []
    for j in range(k + 1):
        v = binom_mod_p(k, j, p)
        out.append((-v) % p if (k - j) % 2 else v)
    return FpPoly(field, out)
