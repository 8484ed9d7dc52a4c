"""Depth-first enumeration of admissible structure-constant prefixes.

Entries beta_(n+1), ..., beta_depth are assigned one index at a time; after
each assignment, every antisymmetry pair and every basis Jacobi triple
whose expansion windows close at that index is checked, and the branch is
cut on the first violation.  The bracket coefficients are maintained
incrementally: writing gamma(a, b) for the coefficient of [e_a, e_b] and
grouping by s = a + b, the row for s follows from the row for s - 1 via

    gamma(a, b) = gamma(a, b - 1) - gamma(a + 1, b - 1),

filled right to left starting from gamma(s - n, n) = beta_(s - n), so each
level costs O(depth) on top of its own constraint checks.

Prefixes surviving to full depth are emitted; they pass the full sweep of
jacobi_verify by construction (the search checks a superset of its
constraints).  Odd first-constituent lengths die immediately: placing the
first nonzero entry at index c with c + n even makes the diagonal
coefficient gamma(a, a) at a = (c + n) / 2 a unit multiple of beta_c, and
the pair check at that level rejects it.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence, Union

from .arith import PrimeField
from .sequences import BetaSequence


@dataclass
class SearchReport:
    p: int
    n: int
    depth: int
    seed_depth: int
    normalized: bool
    budget: int
    nodes: int = 0
    solution_count: int = 0
    solutions: list[tuple[int, ...]] = dc_field(default_factory=list)
    truncated_solutions: bool = False
    exhausted: bool = False
    deepest: int = 0

    @property
    def complete(self) -> bool:
        """Whether the whole tree was covered and every solution stored."""
        return not self.exhausted and not self.truncated_solutions

    def sequences(self, field: PrimeField) -> list[BetaSequence]:
        if field.p != self.p:
            raise ValueError(
                f"report was computed over F_{self.p}, not F_{field.p}")
        return [BetaSequence(field, self.n, sol) for sol in self.solutions]

    def to_dict(self) -> dict:
        return {
            "p": self.p, "n": self.n, "depth": self.depth,
            "seed_depth": self.seed_depth, "normalized": self.normalized,
            "budget": self.budget, "nodes": self.nodes,
            "solution_count": self.solution_count,
            "solutions": [list(s) for s in self.solutions],
            "truncated_solutions": self.truncated_solutions,
            "exhausted": self.exhausted, "deepest": self.deepest,
        }


def search_sequences(field: PrimeField, n: int, depth: int,
                     seed: Union[BetaSequence, Sequence[int], None] = None,
                     normalize: bool = True,
                     budget: int = 500_000,
                     max_solutions: int = 1000) -> SearchReport:
    """Enumerate all beta prefixes to `depth` satisfying every bracket
    constraint determined within the window.

    seed pins the leading entries (a BetaSequence of the same type, or a
    plain list starting at beta_(n+1)); seeded levels are checked, not
    trusted.  With normalize=True the first nonzero entry is restricted
    to 1 (any other value is a rescaling of e_n).  budget caps the number
    of assignments tried; on exhaustion the report carries exhausted=True
    and whatever was found so far.  Solutions appear in lexicographic
    order; at most max_solutions are stored, all are counted.
    """
    if n < 1:
        raise ValueError(f"type must be a positive integer, got {n}")
    if depth < n + 1:
        raise ValueError(f"depth {depth} leaves no entries to assign")
    p = field.p
    if isinstance(seed, BetaSequence):
        if seed.field != field or seed.n != n:
            raise ValueError("seed sequence has different field or type")
        seed_vals = list(seed.betas)
    else:
        seed_vals = [int(v) % p for v in (seed or [])]
    if n + len(seed_vals) > depth:
        raise ValueError(
            f"seed depth {n + len(seed_vals)} exceeds search depth {depth}")

    report = SearchReport(p=p, n=n, depth=depth, seed_depth=n + len(seed_vals),
                          normalized=normalize, budget=budget, deepest=n)
    betas = [0] * (depth - n)
    # rows[s][a - n] = gamma(a, s - a) for a = n .. s - n
    rows: dict[int, list[int]] = {2 * n: [0]}
    full_range = tuple(range(p))
    norm_range = (0, 1)

    def level_row(idx: int) -> Optional[list[int]]:
        """Coefficient row for a + b = idx + n, with the pair and triple
        checks that close at this level; None on the first violation."""
        s = idx + n
        prev = rows[s - 1]
        row = [0] * (idx - n + 1)
        row[idx - n] = betas[idx - n - 1]
        for a in range(idx - 1, n - 1, -1):
            row[a - n] = (prev[a - n] - row[a - n + 1]) % p
        for a in range(n, s // 2 + 1):
            if (row[a - n] + row[s - a - n]) % p:
                return None
        # triples (a, b, c): the factors gamma(b, c), gamma(a, b),
        # gamma(a, c) live in earlier rows, their partners in this one
        for a in range(n, s // 3 + 1):
            for b in range(a, (s - a) // 2 + 1):
                c = s - a - b
                v = (rows[b + c][b - n] * row[a - n]
                     - rows[a + b][a - n] * row[a + b - n]
                     + rows[a + c][a - n] * row[a + c - n]) % p
                if v:
                    return None
        return row

    def extend(idx: int, has_nonzero: bool) -> None:
        if idx > depth:
            report.solution_count += 1
            if len(report.solutions) < max_solutions:
                report.solutions.append(tuple(betas))
            else:
                report.truncated_solutions = True
            return
        if idx <= report.seed_depth:
            candidates = (seed_vals[idx - n - 1],)
        elif normalize and not has_nonzero:
            candidates = norm_range
        else:
            candidates = full_range
        for value in candidates:
            if report.exhausted:
                return
            report.nodes += 1
            if report.nodes > budget:
                report.exhausted = True
                return
            betas[idx - n - 1] = value
            row = level_row(idx)
            if row is None:
                continue
            if idx > report.deepest:
                report.deepest = idx
            rows[idx + n] = row
            extend(idx + 1, has_nonzero or value != 0)
            del rows[idx + n]
        betas[idx - n - 1] = 0

    extend(n + 1, False)
    return report
