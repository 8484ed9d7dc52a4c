"""Coefficient-vanishing window checks for (X - 1)^k g(X) over F_p.

The central question: for which exponents k does some monic g of degree n - 1
make every coefficient of (X - 1)^k g(X) vanish in the window
ceil((k + n)/2) <= j < k?  classify_admissible_k answers by exhausting all
p^(n-1) candidates per k; the admissible k are then compared against a short
menu of values tied to powers of p.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import product

from .arith import Fp, FpPoly, PrimeField, binom_mod_p, x_minus_one_pow

CLASSIFY_BUDGET = 5_000_000  # candidate-times-exponent cost bound per call


def coeff(f: FpPoly, j: int) -> Fp:
    """Coefficient of the j-th power of f, zero outside the support."""
    return f.coeff(j)


def product_coeff_int(g_coeffs: tuple[int, ...], k: int, j: int, p: int) -> int:
    """[X^j] of (X - 1)^k g(X), with g given by its coefficient tuple.

    Uses [X^m](X - 1)^k = (-1)^(k-m) C(k, m); only deg(g) + 1 terms
    contribute, so no full product is ever formed.
    """
    total = 0
    for i, gi in enumerate(g_coeffs):
        if gi == 0:
            continue
        m = j - i
        if m < 0 or m > k:
            continue
        c = binom_mod_p(k, m, p)
        if (k - m) % 2:
            c = -c
        total += gi * c
    return total % p


def product_coeff(g: FpPoly, k: int, j: int) -> Fp:
    return Fp(product_coeff_int(g.coeffs, k, j, g.field.p), g.field)


@dataclass(frozen=True)
class RangeCondition:
    """The window ceil((k + n)/2) <= j < k for a fixed exponent k and degree cutoff n."""

    field: PrimeField
    n: int
    k: int

    def __post_init__(self):
        p = self.field.p
        if not (1 < self.n < p):
            raise ValueError(f"need 1 < n < p, got n={self.n}, p={p}")
        if self.k <= self.n + 1:
            raise ValueError(f"need k > n + 1, got k={self.k}")

    @property
    def j_lo(self) -> int:
        return (self.k + self.n + 1) // 2  # ceil((k + n)/2)

    @property
    def j_hi(self) -> int:
        return self.k  # exclusive


def range_condition_holds(g: FpPoly, cond: RangeCondition) -> bool:
    """Whether every window coefficient of (X - 1)^k g(X) vanishes.

    g must be monic of degree n - 1 over the condition's field.
    """
    if g.field != cond.field:
        raise ValueError("polynomial and condition live over different fields")
    if g.degree != cond.n - 1 or g.coeffs[-1] != 1:
        raise ValueError(f"g must be monic of degree {cond.n - 1}, got {g!r}")
    p = cond.field.p
    for j in range(cond.j_lo, cond.j_hi):
        if product_coeff_int(g.coeffs, cond.k, j, p) != 0:
            return False
    return True


def _survivors_for_k(p: int, n: int, k: int) -> list[tuple[int, ...]]:
    """All monic g (as coefficient tuples, low degree first) passing the window at k."""
    j_lo = (k + n + 1) // 2
    # per-window row of signed C(k, j - i) values, indexed so that
    # row[j - j_lo][i] multiplies g_i
    rows = []
    for j in range(j_lo, k):
        row = []
        for i in range(n):
            m = j - i
            if m < 0 or m > k:
                row.append(0)
                continue
            c = binom_mod_p(k, m, p)
            if (k - m) % 2:
                c = -c % p
            row.append(c)
        rows.append(tuple(row))
    out = []
    for low in product(range(p), repeat=n - 1):
        g = low + (1,)
        ok = True
        for row in rows:
            s = 0
            for gi, ci in zip(g, row):
                if gi:
                    s += gi * ci
            if s % p:
                ok = False
                break
        if ok:
            out.append(g)
    return out


def _survivors_job(args: tuple[int, int, int]) -> tuple[int, list[tuple[int, ...]]]:
    p, n, k = args
    return k, _survivors_for_k(p, n, k)


def powers_of(p: int, limit: int, above: int = 1) -> list[int]:
    """Powers p^e <= limit with p^e > above."""
    out, q = [], p
    while q <= limit:
        if q > above:
            out.append(q)
        q *= p
    return out


def in_large_k_menu(p: int, n: int, k: int) -> bool:
    """k = 2q - n + 1 or q - n < k < q + n for some power q > p of p."""
    for q in powers_of(p, 2 * k + n, above=p):
        if k == 2 * q - n + 1 or q - n < k < q + n:
            return True
    return False


def in_small_k_menu(p: int, n: int, k: int) -> bool:
    """Menu for k < 4p: the short interval list plus the power-of-p values
    taken over every power q > 1 (small powers matter here, e.g. q = p itself)."""
    if n + 1 < k < p or 2 * p - n < k < 2 * p or 3 * p - n < k < 3 * p or k == 4 * p - n + 1:
        return True
    for q in powers_of(p, 2 * k + n):
        if k == 2 * q - n + 1 or q - n < k < q + n:
            return True
    return False


@dataclass
class ClassifyReport:
    field: PrimeField
    n: int
    k_max: int
    survivors: dict[int, list[tuple[int, ...]]]  # only nonempty k
    menu_ok: bool = True
    menu_violations: list[int] = dc_field(default_factory=list)
    structure_ok: bool = True
    structure_violations: list[tuple[int, tuple[int, ...], str]] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.menu_ok and self.structure_ok

    def admissible_k(self) -> list[int]:
        return sorted(self.survivors)

    def to_dict(self) -> dict:
        return {
            "p": self.field.p,
            "n": self.n,
            "k_max": self.k_max,
            "admissible": {str(k): [list(g) for g in gs] for k, gs in sorted(self.survivors.items())},
            "menu_ok": self.menu_ok,
            "menu_violations": self.menu_violations,
            "structure_ok": self.structure_ok,
            "structure_violations": [[k, list(g), why] for k, g, why in self.structure_violations],
        }


def _check_structure(report: ClassifyReport) -> None:
    """Per-survivor shape assertions at the power-of-p exponents:

    - k = 2q - n + 1 (q > p)        -> g = (X - 1)^(n-1), and it is the only survivor
    - k = q - p + k0, p - n < k0 < p -> (X - 1)^(p - k0) divides g
    - k = q + k0, 0 < k0 < n        -> X^k0 divides g
    """
    fld, n, p = report.field, report.n, report.field.p
    for k, gs in sorted(report.survivors.items()):
        qs = powers_of(p, 2 * k + n, above=p)
        for q in qs:
            if k == 2 * q - n + 1:
                want = x_minus_one_pow(fld, n - 1)
                if len(gs) != 1 or FpPoly(fld, gs[0]) != want:
                    report.structure_ok = False
                    report.structure_violations.append(
                        (k, gs[0] if gs else (), f"expected unique survivor (X-1)^{n - 1}"))
            if q - n < k < q:
                k0 = k - q + p
                if p - n < k0 < p:
                    divisor = x_minus_one_pow(fld, p - k0)
                    for g in gs:
                        if not divisor.divides(FpPoly(fld, g)):
                            report.structure_ok = False
                            report.structure_violations.append(
                                (k, g, f"(X-1)^{p - k0} does not divide g"))
            if q < k < q + n:
                k0 = k - q
                for g in gs:
                    if any(g[i] for i in range(k0)):
                        report.structure_ok = False
                        report.structure_violations.append((k, g, f"X^{k0} does not divide g"))


def classify_admissible_k(field: PrimeField, n: int, k_max: int,
                          workers: int | None = None) -> ClassifyReport:
    """Exhaust all monic g of degree n - 1 per exponent n + 1 < k <= k_max.

    Requires 1 < n < p.  Enumeration of g is lexicographic on the coefficient
    vector, low degree first, so reports are deterministic.  Refuses when the
    total cost p^(n-1) * k_max exceeds the desk-scale budget.
    """
    p = field.p
    if not (1 < n < p):
        raise ValueError(f"need 1 < n < p, got n={n}, p={p}")
    cost = p ** (n - 1) * k_max
    if cost > CLASSIFY_BUDGET:
        raise ValueError(
            f"refusing classify run: cost p^(n-1)*k_max = {cost} exceeds budget {CLASSIFY_BUDGET}")
    if workers is None:
        workers = int(os.environ.get("MAXCLASS_WORKERS", "1"))
    ks = range(n + 2, k_max + 1)
    survivors: dict[int, list[tuple[int, ...]]] = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for k, gs in pool.map(_survivors_job, [(p, n, k) for k in ks], chunksize=8):
                if gs:
                    survivors[k] = gs
    else:
        for k in ks:
            gs = _survivors_for_k(p, n, k)
            if gs:
                survivors[k] = gs
    report = ClassifyReport(field, n, k_max, survivors)
    for k in sorted(survivors):
        if k >= 4 * p:
            if not in_large_k_menu(p, n, k):
                report.menu_ok = False
                report.menu_violations.append(k)
        else:
            if not in_small_k_menu(p, n, k):
                report.menu_ok = False
                report.menu_violations.append(k)
    _check_structure(report)
    return report


def classify_fixture_text(report: ClassifyReport) -> str:
    """Plain-text regression form: one line per admissible k,
    '(p, n, k): g1; g2; ...' with g as comma-separated coefficients, low degree first."""
    lines = [f"# classify p={report.field.p} n={report.n} k_max={report.k_max}"]
    for k in sorted(report.survivors):
        gs = "; ".join(",".join(str(c) for c in g) for g in report.survivors[k])
        lines.append(f"({report.field.p}, {report.n}, {k}): {gs}")
    return "\n".join(lines) + "\n"


def lemma_pairs_check(field: PrimeField, k_max: int, strengthened: bool = False) -> list[tuple[int, int]]:
    """All pairs (k, a) with 1 < k <= k_max and a in F_p such that every
    coefficient of (X - 1)^k (X - a) vanishes for k/2 + 1 <= j <= k
    (strengthened: (k + 1)/2 <= j <= k; differs only for odd k).

    Returned as (k, a) with a a residue in [0, p); sorted.
    """
    p = field.p
    out = []
    for k in range(2, k_max + 1):
        if strengthened:
            j_lo = (k + 2) // 2  # ceil((k + 1)/2)
        else:
            j_lo = k // 2 + 2 if k % 2 else k // 2 + 1  # ceil(k/2 + 1)
        for a in range(p):
            ok = True
            for j in range(j_lo, k + 1):
                # [X^j](X - 1)^k (X - a) = [X^(j-1)](X-1)^k - a [X^j](X-1)^k
                c1 = binom_mod_p(k, j - 1, p)
                if (k - j + 1) % 2:
                    c1 = -c1
                c2 = binom_mod_p(k, j, p)
                if (k - j) % 2:
                    c2 = -c2
                if (c1 - a * c2) % p:
                    ok = False
                    break
            if ok:
                out.append((k, a))
    return out


def expected_pairs(field: PrimeField, k_max: int, strengthened: bool = False) -> set[tuple[int, int]]:
    """The pair menu {(2, -2), (3, -3)} plus {(q-1, 1), (q, 0), (2q-1, 1)} over
    powers q of p, restricted to 1 < k <= k_max.  The strengthened window
    drops (3, -3) and (2q-1, 1)."""
    p = field.p
    pairs = {(2, (-2) % p)}
    if not strengthened:
        pairs.add((3, (-3) % p))
    for q in powers_of(p, k_max + 1):
        pairs.add((q - 1, 1))
        pairs.add((q, 0))
        if not strengthened:
            pairs.add((2 * q - 1, 1))
    return {(k, a) for (k, a) in pairs if 1 < k <= k_max}
