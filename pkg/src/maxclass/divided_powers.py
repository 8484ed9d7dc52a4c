"""Truncated divided powers and the operator model built on them.

The ring has basis x^(0), ..., x^(q-1) over F_p with q = p^c and product
x^(i) x^(j) = C(i+j, i) x^(i+j), truncated to zero when i + j >= q (the
binomial coefficient vanishes mod p there anyway, by Kummer).  Scalars are
extended to polynomials in a central variable t, and the algebra acting on
this module is generated by multiplication operators together with

    Z = -(d/dx) - t * (multiplication by x^(q-1)),

whose key property is Z x^(i) = -x^(i-1) for 0 < i < q and Z 1 = -t x^(q-1),
so iterating Z walks down the divided-power ladder and re-enters at the top
with one more factor of t.  Pairs (module element, operator) form a Lie
algebra under the semidirect bracket; generators of the maximal-class
algebras live there.
"""

from __future__ import annotations

from typing import Iterator, Optional, Union

from .arith import Fp, FpPoly, PrimeField, binom_mod_p

Scalar = Union[int, Fp]


class DividedPowers:
    """Context object fixing the field and the truncation order q = p^c."""

    __slots__ = ("field", "c", "q")

    def __init__(self, field: PrimeField, c: int):
        if c < 1:
            raise ValueError(f"exponent c must be positive, got {c}")
        self.field = field
        self.c = c
        self.q = field.p ** c

    def __eq__(self, other) -> bool:
        if not isinstance(other, DividedPowers):
            return NotImplemented
        return self.field == other.field and self.c == other.c

    def __hash__(self) -> int:
        return hash((self.field.p, self.c))

    def __repr__(self) -> str:
        return f"DividedPowers(p={self.field.p}, c={self.c})"

    def mul_coeff(self, i: int, j: int) -> int:
        """C(i+j, i) mod p, without truncation."""
        if i < 0 or j < 0:
            raise ValueError("divided-power exponents must be nonnegative")
        return binom_mod_p(i + j, i, self.field.p)

    def dp_mul(self, i: int, j: int) -> Optional[tuple[int, int]]:
        """x^(i) x^(j) as (coefficient, exponent), or None when it vanishes.

        Exponents must lie in [0, q); products reaching q are truncated
        (their binomial coefficient is 0 mod p regardless).
        """
        if not (0 <= i < self.q and 0 <= j < self.q):
            raise ValueError(f"exponents must lie in [0, {self.q}), got ({i}, {j})")
        if i + j >= self.q:
            return None
        coeff = self.mul_coeff(i, j)
        if coeff == 0:
            return None
        return coeff, i + j


def _as_poly(ring: DividedPowers, value: Union[Scalar, FpPoly]) -> FpPoly:
    if isinstance(value, FpPoly):
        if value.field != ring.field:
            raise ValueError("scalar polynomial over a different field")
        return value
    return FpPoly(ring.field, [value])


class DPElement:
    """Module element sum_i f_i(t) x^(i), stored sparsely as exponent -> f_i."""

    __slots__ = ("ring", "parts")

    def __init__(self, ring: DividedPowers, parts: Optional[dict[int, FpPoly]] = None):
        clean = {}
        if parts:
            for i, poly in parts.items():
                if not (0 <= i < ring.q):
                    raise ValueError(f"exponent {i} outside [0, {ring.q})")
                if poly.field != ring.field:
                    raise ValueError("coefficient over a different field")
                if poly:
                    clean[i] = poly
        self.ring = ring
        self.parts = clean

    @classmethod
    def zero(cls, ring: DividedPowers) -> "DPElement":
        return cls(ring)

    @classmethod
    def basis(cls, ring: DividedPowers, exponent: int, t_power: int = 0,
              coeff: Scalar = 1) -> "DPElement":
        """coeff * t^t_power * x^(exponent)."""
        poly = FpPoly.monomial(ring.field, coeff, t_power)
        return cls(ring, {exponent: poly})

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DPElement):
            return NotImplemented
        return self.ring == other.ring and self.parts == other.parts

    def __add__(self, other: "DPElement") -> "DPElement":
        if self.ring != other.ring:
            raise ValueError("elements from different rings")
        out = dict(self.parts)
        for i, poly in other.parts.items():
            out[i] = out.get(i, FpPoly.zero(self.ring.field)) + poly
        return DPElement(self.ring, out)

    def __neg__(self) -> "DPElement":
        return DPElement(self.ring, {i: -poly for i, poly in self.parts.items()})

    def __sub__(self, other: "DPElement") -> "DPElement":
        return self + (-other)

    def scale(self, value: Union[Scalar, FpPoly]) -> "DPElement":
        poly = _as_poly(self.ring, value)
        return DPElement(self.ring, {i: f * poly for i, f in self.parts.items()})

    def monomials(self) -> Iterator[tuple[int, int, int]]:
        """Yield (exponent, t_power, coefficient) over all nonzero monomials."""
        for i in sorted(self.parts):
            poly = self.parts[i]
            for s, c in enumerate(poly.coeffs):
                if c:
                    yield i, s, c

    def __repr__(self) -> str:
        return f"DPElement({self.parts!r})"


class Endo:
    """t-linear endomorphism of the module, as a sparse matrix over F_p[t].

    entries[(row, col)] = f(t) means x^(col) contributes f(t) x^(row).
    Instances are immutable by convention: all operations return new ones.
    """

    __slots__ = ("ring", "entries", "_by_row")

    def __init__(self, ring: DividedPowers, entries: Optional[dict] = None):
        clean = {}
        if entries:
            for (row, col), poly in entries.items():
                if not (0 <= row < ring.q and 0 <= col < ring.q):
                    raise ValueError(f"index ({row}, {col}) outside [0, {ring.q})^2")
                if poly.field != ring.field:
                    raise ValueError("entry over a different field")
                if poly:
                    clean[(row, col)] = poly
        self.ring = ring
        self.entries = clean
        self._by_row = None

    @classmethod
    def zero(cls, ring: DividedPowers) -> "Endo":
        return cls(ring)

    @classmethod
    def derivation(cls, ring: DividedPowers) -> "Endo":
        """x^(i) -> x^(i-1); kills 1.  A derivation of the divided-power
        product, by the Pascal rule on the coefficients."""
        one = FpPoly.one(ring.field)
        return cls(ring, {(i - 1, i): one for i in range(1, ring.q)})

    @classmethod
    def mult_op(cls, ring: DividedPowers, shift: int,
                scale: Union[Scalar, FpPoly] = 1) -> "Endo":
        """Multiplication by scale * x^(shift): x^(j) -> scale C(j+shift, shift) x^(j+shift)."""
        if not (0 <= shift < ring.q):
            raise ValueError(f"shift must lie in [0, {ring.q})")
        poly = _as_poly(ring, scale)
        p = ring.field.p
        entries = {}
        for j in range(ring.q - shift):
            coeff = binom_mod_p(j + shift, shift, p)
            if coeff:
                entries[(j + shift, j)] = poly.scale(coeff)
        return cls(ring, entries)

    @classmethod
    def z_op(cls, ring: DividedPowers) -> "Endo":
        """Z = -(d/dx) - t * (multiplication by x^(q-1))."""
        t = FpPoly.monomial(ring.field, 1, 1)
        return -cls.derivation(ring) - cls.mult_op(ring, ring.q - 1, t)

    def _rows(self) -> dict:
        if self._by_row is None:
            by_row = {}
            for (row, col), poly in self.entries.items():
                by_row.setdefault(row, []).append((col, poly))
            self._by_row = by_row
        return self._by_row

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Endo):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __add__(self, other: "Endo") -> "Endo":
        if self.ring != other.ring:
            raise ValueError("operators from different rings")
        out = dict(self.entries)
        zero = FpPoly.zero(self.ring.field)
        for key, poly in other.entries.items():
            out[key] = out.get(key, zero) + poly
        return Endo(self.ring, out)

    def __neg__(self) -> "Endo":
        return Endo(self.ring, {k: -poly for k, poly in self.entries.items()})

    def __sub__(self, other: "Endo") -> "Endo":
        return self + (-other)

    def scale(self, value: Union[Scalar, FpPoly]) -> "Endo":
        poly = _as_poly(self.ring, value)
        return Endo(self.ring, {k: f * poly for k, f in self.entries.items()})

    def compose(self, other: "Endo") -> "Endo":
        """Operator product self applied after other."""
        if self.ring != other.ring:
            raise ValueError("operators from different rings")
        zero = FpPoly.zero(self.ring.field)
        out = {}
        other_rows = other._rows()
        for (row, mid), left in self.entries.items():
            for col, right in other_rows.get(mid, ()):
                key = (row, col)
                out[key] = out.get(key, zero) + left * right
        return Endo(self.ring, out)

    def bracket(self, other: "Endo") -> "Endo":
        return self.compose(other) - other.compose(self)

    def apply(self, element: DPElement) -> DPElement:
        if self.ring != element.ring:
            raise ValueError("operator and element from different rings")
        zero = FpPoly.zero(self.ring.field)
        out = {}
        for (row, col), poly in self.entries.items():
            part = element.parts.get(col)
            if part is not None:
                out[row] = out.get(row, zero) + poly * part
        return DPElement(self.ring, out)

    def __repr__(self) -> str:
        return f"Endo({len(self.entries)} entries, q={self.ring.q})"


class SemidirectElement:
    """Pair (module element, operator) under the bracket

        [(f, A), (g, B)] = (A g - B f, AB - BA).

    Operators act on the module; the module itself brackets to zero, so
    pairs (f, 0) span an abelian ideal.
    """

    __slots__ = ("vec", "op")

    def __init__(self, vec: DPElement, op: Endo):
        if vec.ring != op.ring:
            raise ValueError("module part and operator part from different rings")
        self.vec = vec
        self.op = op

    @property
    def ring(self) -> DividedPowers:
        return self.vec.ring

    @classmethod
    def zero(cls, ring: DividedPowers) -> "SemidirectElement":
        return cls(DPElement.zero(ring), Endo.zero(ring))

    def __bool__(self) -> bool:
        return bool(self.vec) or bool(self.op)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SemidirectElement):
            return NotImplemented
        return self.vec == other.vec and self.op == other.op

    def __add__(self, other: "SemidirectElement") -> "SemidirectElement":
        return SemidirectElement(self.vec + other.vec, self.op + other.op)

    def __neg__(self) -> "SemidirectElement":
        return SemidirectElement(-self.vec, -self.op)

    def __sub__(self, other: "SemidirectElement") -> "SemidirectElement":
        return self + (-other)

    def scale(self, value: Union[Scalar, FpPoly]) -> "SemidirectElement":
        return SemidirectElement(self.vec.scale(value), self.op.scale(value))

    def bracket(self, other: "SemidirectElement") -> "SemidirectElement":
        return SemidirectElement(
            self.op.apply(other.vec) - other.op.apply(self.vec),
            self.op.bracket(other.op))

    def proportional_to(self, other: "SemidirectElement") -> Optional[Fp]:
        """Scalar lam with self == lam * other, or None if there is none.

        The zero element is 0 * anything; a nonzero self against zero other
        has no scalar.
        """
        field = self.ring.field
        if not self:
            return field.zero
        if not other:
            return None
        pairs = []
        for mine, theirs in ((self.vec.parts, other.vec.parts),
                             (self.op.entries, other.op.entries)):
            if set(mine) != set(theirs):
                return None
            for key, poly in mine.items():
                ref = theirs[key]
                if poly.degree != ref.degree:
                    return None
                pairs.append((poly, ref))
        lam = None
        for poly, ref in pairs:
            for k in range(int(ref.degree) + 1):
                a, b = poly[k], ref[k]
                if (a == 0) != (b == 0):
                    return None
                if b == 0:
                    continue
                ratio = Fp(a, field) / Fp(b, field)
                if lam is None:
                    lam = ratio
                elif lam != ratio:
                    return None
        return lam

    def __repr__(self) -> str:
        return f"SemidirectElement(vec={self.vec!r}, op={self.op!r})"


def make_generators(ring: DividedPowers, n: int, m: int
                    ) -> tuple[SemidirectElement, SemidirectElement]:
    """The degree-1 and degree-n generators of the type-n algebra with
    parameter m: z = (0, Z) and e_n = (x^(q+m-n), t * multiplication by x^(q-n)).

    Requires 0 < m < n <= q.
    """
    if not (0 < m < n <= ring.q):
        raise ValueError(f"need 0 < m < n <= q = {ring.q}, got n={n}, m={m}")
    z = SemidirectElement(DPElement.zero(ring), Endo.z_op(ring))
    t = FpPoly.monomial(ring.field, 1, 1)
    e_n = SemidirectElement(
        DPElement.basis(ring, ring.q + m - n),
        Endo.mult_op(ring, ring.q - n, t))
    return z, e_n


def graded_degree(element: SemidirectElement, m: int) -> int:
    """Degree of a homogeneous element: a monomial t^r x^(i) in the module
    sits in degree r q + (q + m) - i, and an operator entry t^s at
    (row, col) in degree col - row + s q.  Raises on zero or mixed input.
    """
    ring = element.ring
    q = ring.q
    degrees = set()
    for i, r, _ in element.vec.monomials():
        degrees.add(r * q + q + m - i)
    for (row, col), poly in element.op.entries.items():
        for s, coeff in enumerate(poly.coeffs):
            if coeff:
                degrees.add(col - row + s * q)
    if not degrees:
        raise ValueError("the zero element has no degree")
    if len(degrees) > 1:
        raise ValueError(f"inhomogeneous element, degrees {sorted(degrees)}")
    return degrees.pop()
