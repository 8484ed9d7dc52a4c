"""The exceptional family of maximal-class algebras and its validation.

For a prime power q = p^c and parameters 0 < m < n <= q, the pair

    z   = (0, Z),
    e_n = (x^(q+m-n), t * multiplication by x^(q-n))

inside the semidirect product of divided-power operators generates a graded
Lie algebra of maximal class of type n.  This module constructs it to a
requested depth, extracts its structure-constant sequence by exact
proportionality, and checks everything against independent closed forms:
piecewise formulas for the entries, a rational generating series, expected
constituent lengths, and the subalgebra route that reaches the same algebra
from the type-(m+1) member of the family.

Parameters with 1 < n < p and q > p are the ones the classification
theorem speaks about ("theorem mode"); the construction itself works for
any 0 < m < n <= q ("construction mode").
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .arith import FpPoly, PrimeField, binom_mod_p, x_minus_one_pow
from .divided_powers import (
    DividedPowers,
    DPElement,
    Endo,
    SemidirectElement,
    graded_degree,
    make_generators,
)
from .sequences import (
    BetaSequence,
    RationalSeries,
    bracket_coeff,
    constituents,
    jacobi_verify,
    subalgebra_sequence,
)


class ConstructionError(Exception):
    """An internal invariant of the operator construction failed."""


@dataclass(frozen=True)
class ExceptionalParams:
    field: PrimeField
    c: int
    n: int
    m: int

    def __post_init__(self):
        if self.c < 1:
            raise ValueError(f"exponent c must be positive, got {self.c}")
        q = self.field.p ** self.c
        if not (0 < self.m < self.n <= q):
            raise ValueError(
                f"need 0 < m < n <= q = {q}, got n={self.n}, m={self.m}")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.p ** self.c

    @property
    def mode(self) -> str:
        """'theorem' when 1 < n < p and q > p, else 'construction'."""
        if 1 < self.n < self.p and self.q > self.p:
            return "theorem"
        return "construction"

    @property
    def default_depth(self) -> int:
        """Three full periods plus slack: enough to see the first
        constituent and at least two complete later ones."""
        return 3 * self.q + 2 * self.n

    def to_dict(self) -> dict:
        return {"p": self.p, "c": self.c, "q": self.q, "n": self.n,
                "m": self.m, "mode": self.mode}


@dataclass
class ConstructedAlgebra:
    params: ExceptionalParams
    sequence: BetaSequence
    elements: dict

    @property
    def depth(self) -> int:
        return self.sequence.depth


def construct(params: ExceptionalParams, depth: Optional[int] = None) -> ConstructedAlgebra:
    """Build the algebra by iterated bracketing with z and read off the
    sequence.

    Every graded component is checked to be the expected monomial pair, and
    each entry beta_i is obtained as the exact scalar with
    [e_i, e_n] = beta_i e_(i+n); failure of proportionality raises
    ConstructionError with the offending degree.
    """
    if depth is None:
        depth = params.default_depth
    q, n, m = params.q, params.n, params.m
    if depth < n + 1:
        raise ValueError(f"depth {depth} too shallow, need at least {n + 1}")
    ring = DividedPowers(params.field, params.c)
    z, e_n = make_generators(ring, n, m)
    t = FpPoly.monomial(params.field, 1, 1)
    elements = {n: e_n}
    current = e_n
    for j in range(n + 1, depth + n + 1):
        current = current.bracket(z)
        if not current:
            raise ConstructionError(f"bracketing with z died at degree {j}")
        if graded_degree(current, m) != j:
            raise ConstructionError(f"element at degree {j} is not homogeneous of degree {j}")
        if j <= q + m:
            expected = SemidirectElement(
                DPElement.basis(ring, q + m - j),
                Endo.mult_op(ring, q - j, t) if j <= q else Endo.zero(ring))
        else:
            r, jp = divmod(j - m - 1, q)
            jp += 1
            expected = SemidirectElement(
                DPElement.basis(ring, q - jp, t_power=r), Endo.zero(ring))
        if current != expected:
            raise ConstructionError(f"element at degree {j} deviates from its closed form")
        elements[j] = current
    betas = []
    for i in range(n + 1, depth + 1):
        lam = elements[i].bracket(e_n).proportional_to(elements[i + n])
        if lam is None:
            raise ConstructionError(
                f"[e_{i}, e_{n}] is not a scalar multiple of e_{i + n}")
        betas.append(int(lam))
    return ConstructedAlgebra(params=params,
                              sequence=BetaSequence(params.field, n, betas),
                              elements=elements)


def expected_first_length(params: ExceptionalParams) -> int:
    """q + m for odd m, q + m + 1 for even m."""
    return params.q + params.m + (0 if params.m % 2 else 1)


def expected_lengths(params: ExceptionalParams, count: int) -> list[int]:
    """The first `count` constituent lengths: the first length, then q - 1
    in second place when m is even, then q forever."""
    q, m = params.q, params.m
    out = [expected_first_length(params)]
    if count > 1:
        out.append(q - 1 if m % 2 == 0 else q)
    out.extend([q] * (count - len(out)))
    return out[:count]


def _require_two_constituent_room(params: ExceptionalParams) -> None:
    if 2 * params.n > params.q + params.m:
        raise ValueError(
            f"closed forms require 2n <= q + m, got n={params.n}, "
            f"q={params.q}, m={params.m}")


def closed_form_betas(params: ExceptionalParams, depth: int) -> list[int]:
    """Piecewise formula for the entries beta_(n+1), ..., beta_depth.

    Up to index q + m only the top n positions are nonzero:
        beta_(q+m-j) = (-1)^j ((-1)^m C(n-1-m, j-m) - C(n-1, j)),  0 <= j < n.
    Past q + m the pattern has period q: writing i = r q + m + j' with
    r >= 1 and 0 < j' <= q, entries vanish for j' <= q - n, and for
    j' = q - j with 0 <= j < n:
        beta_i = (-1)^(j+1) C(n-1, j).
    """
    _require_two_constituent_room(params)
    p, q, n, m = params.p, params.q, params.n, params.m

    def entry(i: int) -> int:
        if i <= q + m:
            j = q + m - i
            if j >= n:
                return 0
            sign_m = -1 if m % 2 else 1
            term = sign_m * binom_mod_p(n - 1 - m, j - m, p) if j >= m else 0
            val = term - binom_mod_p(n - 1, j, p)
            return (-val if j % 2 else val) % p
        r, jp = divmod(i - m - 1, q)
        jp += 1
        if jp <= q - n:
            return 0
        j = q - jp
        val = binom_mod_p(n - 1, j, p)
        return (val if j % 2 else -val) % p

    return [entry(i) for i in range(n + 1, depth + 1)]


def genfunc_closed_form(params: ExceptionalParams) -> RationalSeries:
    """The sequence as a rational series:

        sum_i beta_i X^i
          = X^(q+m+1-n) ((X-1)^(n-m-1) (1 - X^q) - (X-1)^(n-1)) / (1 - X^q).
    """
    _require_two_constituent_room(params)
    field, q, n, m = params.field, params.q, params.n, params.m
    one_minus_xq = FpPoly.one(field) - FpPoly.monomial(field, 1, q)
    num = x_minus_one_pow(field, n - m - 1) * one_minus_xq - x_minus_one_pow(field, n - 1)
    return RationalSeries(num.shift(q + m + 1 - n), one_minus_xq)


def first_length_coverage(field: PrimeField, c: int, n: int) -> dict:
    """First constituent lengths over all m: as m runs through 1..n-1 the
    value q + m (m odd) or q + m + 1 (m even) sweeps out exactly the even
    numbers in (q, q + n], with odd m and the following even m landing on
    the same value.
    """
    q = field.p ** c
    by_m = {m: expected_first_length(ExceptionalParams(field, c, n, m))
            for m in range(1, n)}
    expected = [v for v in range(q + 1, q + n + 1) if v % 2 == 0]
    values = sorted(set(by_m.values()))
    return {"q": q, "n": n, "by_m": by_m,
            "values": values,
            "expected": expected,
            "ok": values == expected}


@dataclass
class AbelianIdealReport:
    depth: int
    pairs_checked: int
    pairs_ok: bool
    adjoint_series_ok: bool
    adjoint_window: tuple[int, int]
    top_action_ok: bool
    failure: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.pairs_ok and self.adjoint_series_ok and self.top_action_ok

    def to_dict(self) -> dict:
        return {"depth": self.depth, "pairs_checked": self.pairs_checked,
                "pairs_ok": self.pairs_ok,
                "adjoint_series_ok": self.adjoint_series_ok,
                "adjoint_window": list(self.adjoint_window),
                "top_action_ok": self.top_action_ok,
                "ok": self.ok, "failure": self.failure}


def abelian_ideal_check(params: ExceptionalParams, depth: Optional[int] = None,
                        algebra: Optional[ConstructedAlgebra] = None) -> AbelianIdealReport:
    """For the n = m + 1 member: the span of e_i for i > q is an abelian
    ideal (an ideal automatically, by grading).

    Three independent confirmations:
      1. every bracket coefficient gamma(i, j) with i, j > q vanishes;
      2. the adjoint action of e_(q+1) in series form equals
         X^m (X-1)^(q-m) + X^m, whose coefficients vanish past degree q;
      3. [e_i, e_q] = -e_(i+q) for i > q, so the complement degree q still
         acts transitively down the ideal.
    """
    if params.n != params.m + 1:
        raise ValueError("the abelian ideal lives in the n = m + 1 member")
    if algebra is None:
        algebra = construct(params, depth)
    seq = algebra.sequence
    q, n, m, p = params.q, params.n, params.m, params.p
    D = seq.depth
    report = AbelianIdealReport(depth=D, pairs_checked=0, pairs_ok=True,
                                adjoint_series_ok=True,
                                adjoint_window=(n, D - q - 1 + n), top_action_ok=True)
    for i in range(q + 1, D):
        for j in range(i, D):
            if i + j - n > D:
                break
            report.pairs_checked += 1
            val = bracket_coeff(seq, i, j)
            if int(val) != 0:
                report.pairs_ok = False
                report.failure = {"kind": "pair", "indices": [i, j], "value": int(val)}
                return report
    rhs = x_minus_one_pow(params.field, q - m).shift(m) + FpPoly.monomial(params.field, 1, m)
    for i in range(n, D - q - 1 + n + 1):
        val = bracket_coeff(seq, i, q + 1)
        if val is None:
            break
        if int(val) != rhs[i]:
            report.adjoint_series_ok = False
            report.failure = {"kind": "adjoint_series", "index": i,
                              "value": int(val), "expected": rhs[i]}
            return report
    for i in range(q + 1, D - q + 1):
        val = bracket_coeff(seq, i, q)
        if int(val) != (p - 1):
            report.top_action_ok = False
            report.failure = {"kind": "top_action", "index": i, "value": int(val)}
            return report
    return report


def subalgebra_tower(sequence: BetaSequence, steps: int) -> BetaSequence:
    """Apply the subalgebra transform `steps` times, raising the type by
    one each time and losing one depth per step."""
    out = sequence
    for _ in range(steps):
        out = subalgebra_sequence(out)
    return out


def two_path_check(params: ExceptionalParams, depth: Optional[int] = None,
                   algebra: Optional[ConstructedAlgebra] = None) -> bool:
    """The same sequence arises by direct construction with (n, m) and by
    transforming the type-(m + 1) family member n - m - 1 times."""
    if algebra is None:
        algebra = construct(params, depth)
    steps = params.n - params.m - 1
    parent_params = ExceptionalParams(params.field, params.c, params.m + 1, params.m)
    parent = construct(parent_params, algebra.depth + steps)
    return subalgebra_tower(parent.sequence, steps) == algebra.sequence


@dataclass
class ExceptionalReport:
    params: ExceptionalParams
    depth: int
    ell: Optional[int]
    ell_expected: int
    lengths: list[int]
    lengths_expected: list[int]
    ordinary_ok: bool
    trailing_ok: bool
    closed_form_ok: bool
    genfunc_ok: bool
    two_path_ok: bool
    jacobi_ok: bool
    jacobi_depth: int
    ideal_ok: Optional[bool]   # present on the n = m + 1 member, else None
    violations: list[str]

    @property
    def ok(self) -> bool:
        return (self.ell == self.ell_expected
                and self.lengths == self.lengths_expected
                and self.ordinary_ok and self.trailing_ok
                and self.closed_form_ok and self.genfunc_ok
                and self.two_path_ok and self.jacobi_ok
                and self.ideal_ok is not False
                and not self.violations)

    def to_dict(self) -> dict:
        return {"params": self.params.to_dict(), "depth": self.depth,
                "ell": self.ell, "ell_expected": self.ell_expected,
                "lengths": self.lengths, "lengths_expected": self.lengths_expected,
                "ordinary_ok": self.ordinary_ok, "trailing_ok": self.trailing_ok,
                "closed_form_ok": self.closed_form_ok, "genfunc_ok": self.genfunc_ok,
                "two_path_ok": self.two_path_ok,
                "jacobi_ok": self.jacobi_ok, "jacobi_depth": self.jacobi_depth,
                "ideal_ok": self.ideal_ok, "violations": self.violations,
                "ok": self.ok}


def exceptional_report(params: ExceptionalParams, depth: Optional[int] = None,
                       algebra: Optional[ConstructedAlgebra] = None,
                       jacobi_cap: int = 0) -> ExceptionalReport:
    """Full validation of one family member, all at tolerance zero:
    constituent statistics against their predicted values, entries against
    the piecewise closed form and the rational series, the two
    construction paths against each other, and the bracket axioms by
    exhaustive sweep (capped at 3q by default; pass jacobi_cap to change).
    """
    if algebra is None:
        algebra = construct(params, depth)
    seq = algebra.sequence
    D = seq.depth
    rep = constituents(seq)
    count = len(rep.constituents)
    ordinary_ok = all(c.ordinary for c in rep.constituents[1:]) and count > 1
    trailing_ok = all(c.entries[-1] == params.p - 1 for c in rep.constituents[1:])
    closed_ok = list(seq.betas) == closed_form_betas(params, D)
    genfunc_ok = list(seq.betas) == genfunc_closed_form(params).expand(D)[params.n + 1:]
    jacobi_depth = min(D, jacobi_cap) if jacobi_cap else min(D, 3 * params.q)
    jacobi_ok = jacobi_verify(seq, depth=jacobi_depth).ok
    two_path_ok = two_path_check(params, algebra=algebra)
    ideal_ok = None
    if params.n == params.m + 1:
        ideal_ok = abelian_ideal_check(params, algebra=algebra).ok
    return ExceptionalReport(
        params=params, depth=D, ell=rep.ell,
        ell_expected=expected_first_length(params),
        lengths=rep.lengths(), lengths_expected=expected_lengths(params, count),
        ordinary_ok=ordinary_ok, trailing_ok=trailing_ok,
        closed_form_ok=closed_ok, genfunc_ok=genfunc_ok,
        two_path_ok=two_path_ok, jacobi_ok=jacobi_ok, jacobi_depth=jacobi_depth,
        ideal_ok=ideal_ok, violations=rep.violations)


def theorem_parameter_grid(field: PrimeField, c: int) -> list[ExceptionalParams]:
    """All (n, m) in theorem mode for the given prime power: 1 < n < p,
    0 < m < n.  Empty unless q > p."""
    if c < 2:
        return []
    return [ExceptionalParams(field, c, n, m)
            for n in range(2, field.p)
            for m in range(1, n)]
