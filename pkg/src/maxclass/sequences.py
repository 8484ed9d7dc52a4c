"""Structure-constant sequences for graded Lie algebras of maximal class.

An algebra of type n is generated by elements z (degree 1) and e_n (degree n),
with e_i = [e_(i-1), z] and [e_i, e_n] = beta_i e_(i+n) for i > n.  The whole
bracket table is determined by the sequence (beta_i): expanding e_b as an
iterated bracket of e_n with z gives

    [e_a, e_b] = sum_i (-1)^i C(b - n, i) beta_(a+i) e_(a+b),

with beta_n read as 0.  Everything here works with finite prefixes of the
sequence: reads beyond the recorded depth are unknowns, never silent zeros.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence, Union

from .arith import Fp, FpPoly, PrimeField, binom_mod_p, signed_binom_row


class DepthError(Exception):
    """A sequence entry outside the recorded window (n, depth] was requested."""


class BetaSequence:
    """A finite prefix (beta_i) for n < i <= depth of a type-n sequence.

    Entry i of the backing list holds beta_(n+1+i).  n = 1 is allowed so the
    same machinery can validate type-1 data before projection.
    """

    __slots__ = ("field", "n", "betas")

    def __init__(self, field: PrimeField, n: int, betas: Sequence[Union[int, Fp]]):
        if n < 1:
            raise ValueError(f"type must be a positive integer, got {n}")
        p = field.p
        vals = []
        for b in betas:
            if isinstance(b, Fp):
                if b.field != field:
                    raise ValueError("sequence entry from a different field")
                vals.append(b.value)
            else:
                vals.append(int(b) % p)
        self.field = field
        self.n = n
        self.betas = tuple(vals)

    @property
    def depth(self) -> int:
        return self.n + len(self.betas)

    @classmethod
    def all_zero(cls, field: PrimeField, n: int, depth: int) -> "BetaSequence":
        return cls(field, n, [0] * (depth - n))

    @classmethod
    def all_ones(cls, field: PrimeField, n: int, depth: int) -> "BetaSequence":
        return cls(field, n, [1] * (depth - n))

    def beta(self, i: int) -> Fp:
        if not (self.n < i <= self.depth):
            raise DepthError(f"beta_{i} outside recorded window ({self.n}, {self.depth}]")
        return Fp(self.betas[i - self.n - 1], self.field)

    def _beta_int(self, i: int) -> int:
        # bracket expansions read beta_n, which is 0 by [e_n, e_n] = 0
        if i == self.n:
            return 0
        if not (self.n < i <= self.depth):
            raise DepthError(f"beta_{i} outside recorded window ({self.n}, {self.depth}]")
        return self.betas[i - self.n - 1]

    def first_nonzero(self) -> Optional[int]:
        for k, v in enumerate(self.betas):
            if v:
                return self.n + 1 + k
        return None

    @property
    def normalized(self) -> Optional[bool]:
        """Whether the first nonzero entry is 1; None for the zero prefix."""
        i = self.first_nonzero()
        if i is None:
            return None
        return self.betas[i - self.n - 1] == 1

    def normalize(self) -> "BetaSequence":
        """Rescale so the first nonzero entry becomes 1 (rescaling e_n scales
        the whole sequence uniformly)."""
        i = self.first_nonzero()
        if i is None:
            return self
        inv = Fp(self.betas[i - self.n - 1], self.field).inverse().value
        p = self.field.p
        return BetaSequence(self.field, self.n, [v * inv % p for v in self.betas])

    def truncate(self, depth: int) -> "BetaSequence":
        if not (self.n <= depth <= self.depth):
            raise ValueError(f"cannot truncate depth {self.depth} prefix to {depth}")
        return BetaSequence(self.field, self.n, self.betas[: depth - self.n])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BetaSequence):
            return NotImplemented
        return (other.field == self.field and other.n == self.n and other.betas == self.betas)

    def __repr__(self) -> str:
        return f"BetaSequence(p={self.field.p}, n={self.n}, depth={self.depth})"

    def to_dict(self) -> dict:
        return {"p": self.field.p, "n": self.n, "depth": self.depth, "betas": list(self.betas)}

    @classmethod
    def from_dict(cls, data: dict) -> "BetaSequence":
        seq = cls(PrimeField(data["p"]), data["n"], data["betas"])
        if seq.depth != data["depth"]:
            raise ValueError(f"depth field {data['depth']} does not match {len(data['betas'])} entries")
        return seq

    def to_file(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, sort_keys=True)
            fh.write("\n")

    @classmethod
    def from_file(cls, path) -> "BetaSequence":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def bracket_coeff(seq: BetaSequence, a: int, b: int) -> Optional[Fp]:
    """Coefficient of e_(a+b) in [e_a, e_b], for a, b >= n.

    Returns None when the value is not determined by the recorded prefix,
    which happens exactly when the window end a + b - n exceeds the depth
    (that term always carries a unit binomial coefficient).  Interior terms
    killed by a vanishing binomial are skipped.
    """
    n = seq.n
    if a < n or b < n:
        raise ValueError(f"bracket_coeff needs a, b >= n = {n}, got ({a}, {b})")
    p = seq.field.p
    row = signed_binom_row(b - n, p)
    total = 0
    for i, c in enumerate(row):
        if c == 0:
            continue
        idx = a + i
        if idx > seq.depth:
            return None
        total += c * seq._beta_int(idx)
    return Fp(total, seq.field)


def _gamma_table(seq: BetaSequence, bound: int) -> list[list[int]]:
    """gamma[a - n][b - n] = bracket coefficient of [e_a, e_b] for a + b <= bound.

    All windows close strictly inside the prefix, so every entry is exact.
    """
    n, p = seq.n, seq.field.p
    if bound > seq.depth:
        raise DepthError(f"gamma table to {bound} needs depth {bound}, have {seq.depth}")
    betas = (0,) + seq.betas  # local index i - n
    table: list[list[int]] = []
    for a in range(n, bound - n + 1):
        row_out = []
        base = a - n
        for b in range(n, bound - a + 1):
            srow = signed_binom_row(b - n, p)
            s = 0
            for i, c in enumerate(srow):
                if c:
                    s += c * betas[base + i]
            row_out.append(s % p)
        table.append(row_out)
    return table


@dataclass
class JacobiReport:
    depth: int
    pairs_checked: int = 0
    triples_checked: int = 0
    pascal_checked: int = 0
    failure: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "pairs_checked": self.pairs_checked,
            "triples_checked": self.triples_checked,
            "pascal_checked": self.pascal_checked,
            "ok": self.ok,
            "failure": self.failure,
        }


def jacobi_verify(seq: BetaSequence, depth: Optional[int] = None,
                  pascal_samples: int = 25, seed: int = 20260823) -> JacobiReport:
    """Consistency of the bracket table determined by the prefix.

    Checks, over all indices that close within `depth`:
      1. antisymmetry: [e_a, e_b] = -[e_b, e_a] as expanded coefficients,
         including the diagonal [e_a, e_a] = 0 (for a, b >= n, a + b <= depth);
      2. Jacobi on basis triples (e_a, e_b, e_c) for a <= b <= c,
         a + b + c <= depth;
      3. the Pascal recurrence gamma(a,b) = gamma(a+1,b) + gamma(a,b+1),
         which encodes the Jacobi instances involving z, asserted on seeded
         random index pairs (it holds identically, whatever the prefix).

    Reports the first violation found, with indices and value.
    """
    D = seq.depth if depth is None else depth
    if D > seq.depth:
        raise DepthError(f"verify to depth {D} needs depth {D}, have {seq.depth}")
    n, p = seq.n, seq.field.p
    report = JacobiReport(depth=D)
    if D < 2 * n:
        return report
    G = _gamma_table(seq, D)

    def g(a: int, b: int) -> int:
        return G[a - n][b - n]

    for a in range(n, D // 2 + 1):
        for b in range(a, D - a + 1):
            report.pairs_checked += 1
            r = (g(a, b) + g(b, a)) % p
            if r:
                report.failure = {"kind": "antisymmetry", "indices": [a, b], "value": r}
                return report
    for a in range(n, D // 3 + 1):
        for b in range(a, (D - a) // 2 + 1):
            gab = g(a, b)
            for c in range(b, D - a - b + 1):
                report.triples_checked += 1
                v = (g(b, c) * g(a, b + c) - gab * g(a + b, c) + g(a, c) * g(a + c, b)) % p
                if v:
                    report.failure = {"kind": "jacobi", "indices": [a, b, c], "value": v}
                    return report
    rng = random.Random(seed)
    for _ in range(pascal_samples):
        if D < 2 * n + 1:
            break
        a = rng.randrange(n, D - n)
        b = rng.randrange(n, D - a)
        report.pascal_checked += 1
        v = (g(a, b) - g(a + 1, b) - g(a, b + 1)) % p
        if v:
            report.failure = {"kind": "pascal", "indices": [a, b], "value": v}
            return report
    return report


@dataclass
class Constituent:
    start: int                 # index of the first entry
    length: int                # number of covered indices (first constituent counts from n+1 and adds n)
    leading: int               # index of the leading term, n-th position from the end
    trailing: int              # index of the last nonzero entry
    entries: list[int]
    ordinary: Optional[bool]   # binomial form relative to the last entry; None when undecided

    def to_dict(self) -> dict:
        return {"start": self.start, "length": self.length, "leading": self.leading,
                "trailing": self.trailing, "entries": self.entries, "ordinary": self.ordinary}


@dataclass
class ConstituentReport:
    p: int
    n: int
    depth: int
    ell: Optional[int]                      # first constituent length; None if no nonzero seen
    constituents: list[Constituent] = dc_field(default_factory=list)
    incomplete_tail: Optional[dict] = None  # {"start": .., "leading": .. or None}
    metabelian_within_depth: bool = False
    violations: list[str] = dc_field(default_factory=list)

    def lengths(self) -> list[int]:
        return [c.length for c in self.constituents]

    def to_dict(self) -> dict:
        return {
            "p": self.p, "n": self.n, "depth": self.depth, "ell": self.ell,
            "constituents": [c.to_dict() for c in self.constituents],
            "incomplete_tail": self.incomplete_tail,
            "metabelian_within_depth": self.metabelian_within_depth,
            "violations": self.violations,
        }


def _is_ordinary(entries: list[int], n: int, p: int) -> bool:
    """Entries (lam_(j-m+1), ..., lam_j) with lam_(j-i) = (-1)^i C(n-1, i) lam_j."""
    last = entries[-1]
    for i in range(len(entries)):
        want = binom_mod_p(n - 1, i, p) * last
        if i % 2:
            want = -want
        if entries[-1 - i] != want % p:
            return False
    return True


def constituents(seq: BetaSequence) -> ConstituentReport:
    """Partition the prefix into constituents.

    The first constituent is (beta_(n+1), ..., beta_ell) where the first
    nonzero entry sits at index ell - n + 1.  After a constituent ending at
    index j, the next nonzero entry at index j + m - n + 1 opens a
    constituent (beta_(j+1), ..., beta_(j+m)) of length m.  A trailing
    fragment cut off by the depth horizon is reported as incomplete, never
    dropped.  Violations of the general bounds (even ell, zero runs of at
    most ell - n, lengths between ell/2 and ell) are flagged.
    """
    report = ConstituentReport(p=seq.field.p, n=seq.n, depth=seq.depth, ell=None)
    n, D = seq.n, seq.depth
    c = seq.first_nonzero()
    if c is None:
        report.metabelian_within_depth = True
        return report
    ell = c + n - 1
    report.ell = ell
    if ell % 2:
        report.violations.append("ell_odd")
    if ell > D:
        report.incomplete_tail = {"start": n + 1, "leading": c}
        return report
    entries = [seq._beta_int(i) for i in range(n + 1, ell + 1)]
    trailing = max(i for i in range(n + 1, ell + 1) if seq._beta_int(i))
    report.constituents.append(Constituent(
        start=n + 1, length=ell, leading=c, trailing=trailing, entries=entries,
        ordinary=_is_ordinary(entries, n, seq.field.p) if entries else None))
    j = ell
    while True:
        lead = None
        for i in range(j + 1, D + 1):
            if seq._beta_int(i):
                lead = i
                break
        if lead is None:
            if j < D:
                report.incomplete_tail = {"start": j + 1, "leading": None}
                if D - j > ell - n:
                    report.violations.append(f"zero_run_exceeds:{j + 1}-{D}")
            break
        m = lead - j + n - 1
        end = j + m
        if lead - 1 - j > ell - n:
            report.violations.append(f"zero_run_exceeds:{j + 1}-{lead - 1}")
        if end > D:
            report.incomplete_tail = {"start": j + 1, "leading": lead}
            break
        entries = [seq._beta_int(i) for i in range(j + 1, end + 1)]
        trailing = max(i for i in range(j + 1, end + 1) if seq._beta_int(i))
        report.constituents.append(Constituent(
            start=j + 1, length=m, leading=lead, trailing=trailing, entries=entries,
            ordinary=_is_ordinary(entries, n, seq.field.p)))
        if m > ell:
            report.violations.append(f"length_exceeds_first:{len(report.constituents)}")
        if 2 * m < ell:
            report.violations.append(f"length_below_half:{len(report.constituents)}")
        j = end
    return report


class AlphaSequence:
    """A finite prefix (alpha_i) for 1 < i <= depth of a type-1 sequence.

    Type-1 sequences satisfy: of any two consecutive entries, at least one
    vanishes.  That is validated on ingestion.
    """

    __slots__ = ("field", "alphas")

    def __init__(self, field: PrimeField, alphas: Sequence[Union[int, Fp]]):
        p = field.p
        vals = [int(a) % p if not isinstance(a, Fp) else a.value for a in alphas]
        for k in range(len(vals) - 1):
            if vals[k] and vals[k + 1]:
                raise ValueError(
                    f"consecutive entries alpha_{k + 2}, alpha_{k + 3} are both nonzero")
        self.field = field
        self.alphas = tuple(vals)

    @property
    def depth(self) -> int:
        return 1 + len(self.alphas)

    def alpha(self, i: int) -> Fp:
        if not (1 < i <= self.depth):
            raise DepthError(f"alpha_{i} outside recorded window (1, {self.depth}]")
        return Fp(self.alphas[i - 2], self.field)

    def nonzero_indices(self) -> list[int]:
        return [k + 2 for k, v in enumerate(self.alphas) if v]

    def to_beta(self) -> BetaSequence:
        """View as a type-1 BetaSequence, e.g. to run jacobi_verify on it."""
        return BetaSequence(self.field, 1, self.alphas)

    def to_dict(self) -> dict:
        return {"p": self.field.p, "depth": self.depth, "alphas": list(self.alphas)}

    @classmethod
    def from_dict(cls, data: dict) -> "AlphaSequence":
        seq = cls(PrimeField(data["p"]), data["alphas"])
        if seq.depth != data["depth"]:
            raise ValueError("depth field does not match entry count")
        return seq

    @classmethod
    def from_file(cls, path) -> "AlphaSequence":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_file(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, sort_keys=True)
            fh.write("\n")


def project_type1(alpha: AlphaSequence, n: int) -> BetaSequence:
    """Sequence of the type-n subalgebra generated by z and e_n inside a
    type-1 algebra with sequence alpha:

        beta_i = sum_k (-1)^k C(n-1, k) alpha_(i+k),  0 <= k <= n - 1.

    Output depth is alpha.depth - n + 1.  When consecutive nonzero alpha
    entries are at least n apart, every complete later constituent of the
    result is ordinary; that is asserted.
    """
    if n < 1:
        raise ValueError("type must be positive")
    p = alpha.field.p
    D_out = alpha.depth - n + 1
    if D_out <= n:
        raise ValueError(f"alpha depth {alpha.depth} too shallow to project to type {n}")
    row = signed_binom_row(n - 1, p)
    alphas = alpha.alphas

    def a_int(i):  # alpha_i, defined for 1 < i <= alpha.depth
        return alphas[i - 2]

    betas = []
    for i in range(n + 1, D_out + 1):
        s = 0
        for k, c in enumerate(row):
            if c:
                s += c * a_int(i + k)
        betas.append(s % p)
    out = BetaSequence(alpha.field, n, betas)
    nz = alpha.nonzero_indices()
    if all(b - a >= n for a, b in zip(nz, nz[1:])):
        rep = constituents(out)
        for con in rep.constituents[1:]:
            if not con.ordinary:
                raise ValueError(
                    f"projection produced a non-ordinary constituent at {con.start} "
                    f"despite alpha spacing >= {n}")
    return out


def genfunc(seq: BetaSequence) -> FpPoly:
    """Generating series prefix sum_i beta_i X^i, i over (n, depth]."""
    coeffs = [0] * (seq.n + 1) + list(seq.betas)
    return FpPoly(seq.field, coeffs)


def subalgebra_sequence(seq: BetaSequence) -> BetaSequence:
    """Sequence of the type-(n+1) subalgebra generated by z and e_(n+1):
    tilde beta_i = beta_i - beta_(i+1), one depth shallower.

    In series form this is multiplication by (1 - 1/X) plus a correction
    discarding the action on e_n.  The coefficient surviving at X^(n+1)
    must vanish (it equals [e_(n+1), e_(n+1)]); a nonzero value means the
    input was not the sequence of an algebra, and is rejected.
    """
    n, p = seq.n, seq.field.p
    D_out = seq.depth - 1
    if D_out < n + 1:
        raise ValueError("prefix too shallow to transform")
    resid = (seq._beta_int(n + 1) - seq._beta_int(n + 2)) % p if D_out > n + 1 else 0
    if resid:
        raise ValueError(
            f"beta_{n + 1} - beta_{n + 2} = {resid} != 0: not an algebra sequence")
    betas = [(seq._beta_int(i) - seq._beta_int(i + 1)) % p for i in range(n + 2, D_out + 1)]
    return BetaSequence(seq.field, n + 1, betas)


@dataclass(frozen=True)
class RationalSeries:
    """num/den over F_p in X, with den(0) invertible; expandable to any depth."""

    num: FpPoly
    den: FpPoly

    def __post_init__(self):
        if self.num.field != self.den.field:
            raise ValueError("numerator and denominator over different fields")
        if self.den[0] == 0:
            raise ValueError("denominator must have invertible constant term")

    def expand(self, depth: int) -> list[int]:
        """Coefficients 0..depth of the power-series expansion."""
        p = self.num.field.p
        d0_inv = pow(self.den[0], p - 2, p)
        out = []
        for k in range(depth + 1):
            s = self.num[k]
            for j in range(1, min(k, int(self.den.degree) if self.den.degree >= 0 else 0) + 1):
                s -= self.den[j] * out[k - j]
            out.append(s * d0_inv % p)
        return out

    def to_dict(self) -> dict:
        return {"num": list(self.num.coeffs), "den": list(self.den.coeffs)}


def eih_residual(seq: BetaSequence, i: int, h: int) -> Optional[Fp]:
    """The two-row constraint usable whenever beta_(n+h) = 0 (caller-checked):

        beta_(i+h+n) sum_g (-1)^g C(h, g) beta_(i+g)
          - beta_i sum_g (-1)^g C(h, g) beta_(i+n+g)  = 0.

    Returns None when entries beyond the depth are required; terms killed by
    a vanishing binomial are skipped first.
    """
    n = seq.n
    if i <= n or h <= 0:
        raise ValueError(f"need i > n and h > 0, got i={i}, h={h}")
    if i + h + n > seq.depth:
        return None
    p = seq.field.p
    row = signed_binom_row(h, p)
    s1 = s2 = 0
    for g, c in enumerate(row):
        if c == 0:
            continue
        if i + n + g > seq.depth:
            return None
        s1 += c * seq._beta_int(i + g)
        s2 += c * seq._beta_int(i + n + g)
    val = seq._beta_int(i + h + n) * s1 - seq._beta_int(i) * s2
    return Fp(val, seq.field)


@dataclass
class LcsReport:
    """Constituent lengths recovered from the lower central series of the
    derived subalgebra: the r-th length is dim of the r-th quotient, the
    first with n added."""

    depth: int
    lengths: list[int]
    incomplete_count: Optional[int]   # entries of the last, depth-cut quotient
    no_second_power: bool
    contiguous: bool

    def to_dict(self) -> dict:
        return {"depth": self.depth, "lengths": self.lengths,
                "incomplete_count": self.incomplete_count,
                "no_second_power": self.no_second_power, "contiguous": self.contiguous}


def constituents_via_lcs(seq: BetaSequence, depth: Optional[int] = None) -> LcsReport:
    """Recover constituent lengths from dimensions of lower-central-series
    quotients of the derived subalgebra, as an independent cross-check.

    Requires beta_(n+1) = 0; the dimension bookkeeping breaks down otherwise
    (the all-ones sequence is the standing counterexample), so such input is
    refused.  A prefix with no nonzero bracket among degrees > n reports
    no_second_power instead of lengths.
    """
    D = seq.depth if depth is None else depth
    if D > seq.depth:
        raise DepthError(f"lcs to depth {D} needs depth {D}, have {seq.depth}")
    n, p = seq.n, seq.field.p
    if D > n + 1 and seq._beta_int(n + 1) != 0:
        raise ValueError(
            "constituent lengths via the lower central series require beta_(n+1) = 0")
    G = _gamma_table(seq, D)

    def g(a: int, b: int) -> int:
        return G[a - n][b - n]

    current = set(range(n + 1, D + 1))
    levels = [current]
    while levels[-1]:
        prev = levels[-1]
        nxt = set()
        for d in prev:
            for b in range(n + 1, D - d + 1):
                if g(d, b):
                    nxt.add(d + b)
        levels.append(nxt)
    if len(levels) >= 2 and not levels[1]:
        return LcsReport(depth=D, lengths=[], incomplete_count=None,
                         no_second_power=True, contiguous=True)
    contiguous = all(lv == set(range(min(lv), D + 1)) for lv in levels if lv)
    lengths = []
    incomplete = None
    for r in range(len(levels) - 1):
        count = len(levels[r]) - len(levels[r + 1])
        if r == 0:
            count += n
        if levels[r + 1]:
            lengths.append(count)
        else:
            incomplete = count  # cut off by the horizon, not a true dimension
    return LcsReport(depth=D, lengths=lengths, incomplete_count=incomplete,
                     no_second_power=False, contiguous=contiguous)


def first_constituent_poly(seq: BetaSequence) -> FpPoly:
    """g(X) = beta_(ell-n+1) X^(n-1) + beta_(ell-n+2) X^(n-2) + ... + beta_ell,
    built from the last n entries of the first constituent."""
    rep = constituents(seq)
    if rep.ell is None or rep.ell > seq.depth:
        raise ValueError("first constituent not complete within depth")
    ell, n = rep.ell, seq.n
    return FpPoly(seq.field, [seq._beta_int(ell - k) for k in range(n)])


@dataclass
class BridgeReport:
    ell: int
    ell2: int
    k: int                      # exponent ell - n + 1
    window: tuple[int, int]     # j range, half-open (lo, hi]
    ok: bool
    failures: list[tuple[int, int]]

    def to_dict(self) -> dict:
        return {"ell": self.ell, "ell2": self.ell2, "k": self.k,
                "window": list(self.window), "ok": self.ok,
                "failures": [list(f) for f in self.failures]}


def bridge_check(seq: BetaSequence) -> Optional[BridgeReport]:
    """Link between the linear recurrence satisfied across the second
    constituent and coefficient vanishing: with g built from the first
    constituent's last n entries,

        [X^j] (X - 1)^(ell - n + 1) g(X) = 0  for ell - ell2 < j <= ell - n.

    Needs two complete constituents; returns None otherwise.
    """
    from .polycheck import product_coeff_int
    rep = constituents(seq)
    if len(rep.constituents) < 2:
        return None
    ell = rep.constituents[0].length
    ell2 = rep.constituents[1].length
    g = first_constituent_poly(seq)
    k = ell - seq.n + 1
    p = seq.field.p
    failures = []
    for j in range(ell - ell2 + 1, ell - seq.n + 1):
        v = product_coeff_int(g.coeffs, k, j, p)
        if v:
            failures.append((j, v))
    return BridgeReport(ell=ell, ell2=ell2, k=k, window=(ell - ell2, ell - seq.n),
                        ok=not failures, failures=failures)
