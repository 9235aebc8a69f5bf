"""Colength of (x^B, y^B, z^B, h_alpha) with B = 2^n, by exact rank.

Multiplication by the degree-4 form h_alpha respects the grading of
F[x,y,z]/(x^B, y^B, z^B), so the colength splits into independent
degree blocks:

    e_n = 8^n - sum over deg of rank( h: piece(deg-4) -> piece(deg) )

with deg running from 4 to 3(B-1).  Each block is a sparse matrix with
at most five entries per column; ranks are exact over the coefficient
field.

The generic value is probed at elements whose escape orbit never
terminates; those are plentiful in F_{2^16} and found by rejection.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from concurrent.futures import ThreadPoolExecutor
from random import Random
from typing import Optional, Sequence

from .binaryfield import FieldCtx, FieldElem, field_spec, format_elem, least_irreducible
from .dynamics import escape_time
from .errors import BadPoint, TooLarge
from .gflinalg import GFMatrix, SlicedMatrix, SLICED_DEGREE_MAX, rank
from .trivarring import graded_basis, h_poly, unpack

__all__ = [
    "HKResult",
    "hk_formula",
    "en",
    "en_full_oracle",
    "en_generic",
    "random_generic_points",
]

_N_SOFT_MAX = 5
_N_HARD_MAX = 6


def hk_formula(n: int) -> int:
    """The generic value 3*4^n - 4."""
    return 3 * 4**n - 4


@dataclass
class HKResult:
    n: int
    alpha: str
    e_n: int
    blocks: dict[int, tuple[int, int, int]] = field(default_factory=dict)
    per_point: Optional[list[tuple[str, int]]] = None
    agree: Optional[bool] = None
    seconds: float = 0.0

    @property
    def formula_value(self) -> int:
        return hk_formula(self.n)

    @property
    def matches_formula(self) -> bool:
        return self.e_n == self.formula_value

    def total_rank(self) -> int:
        return sum(r for r, _, _ in self.blocks.values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "alpha": self.alpha,
            "e_n": self.e_n,
            "formula_value": self.formula_value,
            "match": self.matches_formula,
            "blocks": {
                str(d): {"rank": r, "rows": m, "cols": c}
                for d, (r, m, c) in sorted(self.blocks.items())
            },
            "per_point": self.per_point,
            "agree": self.agree,
            "seconds": self.seconds,
        }


def _block_entries(
    h_terms: list[tuple[tuple[int, int, int], int]],
    deg: int,
    B: int,
    swap_xy: bool,
) -> tuple[int, int, list[tuple[int, int, int]]]:
    src = graded_basis(deg - 4, B)
    tgt = graded_basis(deg, B)
    tidx = tgt.index()
    entries = []
    for c, mono in enumerate(src.triples):
        if swap_xy:
            mono = (mono[1], mono[0], mono[2])
        ex, ey, ez = mono
        for (hx, hy, hz), bits in h_terms:
            px, py, pz = ex + hx, ey + hy, ez + hz
            if px >= B or py >= B or pz >= B:
                continue
            prod = (py, px, pz) if swap_xy else (px, py, pz)
            entries.append((tidx[prod], c, bits))
    return tgt.dim, src.dim, entries


def _block_rank(ctx: FieldCtx, nrows: int, ncols: int, entries) -> int:
    if nrows == 0 or ncols == 0 or not entries:
        return 0
    if ctx.degree <= SLICED_DEGREE_MAX:
        return rank(SlicedMatrix.from_entries(ctx, nrows, ncols, entries))
    return rank(GFMatrix.from_entries(ctx, nrows, ncols, entries))


def _check_n(n: int, force: bool) -> None:
    if n < 1:
        raise ValueError("n must be positive")
    if n > _N_HARD_MAX:
        raise TooLarge(f"n = {n}: blocks would need ~{8**n} columns")
    if n > _N_SOFT_MAX and not force:
        raise TooLarge(f"n = {n} is slow; pass force=True to run anyway")


def en(
    n: int,
    alpha: FieldElem,
    swap_xy: bool = False,
    jobs: int = 1,
    force: bool = False,
) -> HKResult:
    """Blocked colength at one parameter value.

    swap_xy recomputes every block with the roles of x and y exchanged;
    the form is symmetric under that swap, so the result must agree
    (used as a self-check, not a speedup).
    """
    _check_n(n, force)
    t0 = time.perf_counter()
    B = 1 << n
    ctx = alpha.ctx
    h_terms = [(unpack(k), bits) for k, bits in h_poly(alpha).terms.items()]
    degs = list(range(4, 3 * (B - 1) + 1))

    def work(deg: int) -> tuple[int, tuple[int, int, int]]:
        nrows, ncols, entries = _block_entries(h_terms, deg, B, swap_xy)
        r = _block_rank(ctx, nrows, ncols, entries)
        return deg, (r, nrows, ncols)

    if jobs > 1 and len(degs) > 1:
        # rank kernels drop the GIL, so threads overlap fine
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            blocks = dict(pool.map(work, degs))
    else:
        blocks = dict(work(d) for d in degs)

    total = sum(r for r, _, _ in blocks.values())
    e_n = 8**n - total
    assert 0 <= e_n <= 8**n
    return HKResult(
        n=n,
        alpha=f"{format_elem(alpha)} in {field_spec(ctx)}",
        e_n=e_n,
        blocks=blocks,
        seconds=time.perf_counter() - t0,
    )


def en_full_oracle(n: int, alpha: FieldElem) -> int:
    """Rank of multiplication by h on the whole quotient, unblocked.

    One (8^n x 8^n)-ish matrix instead of per-degree blocks; only for
    cross-checking the decomposition, so n is capped at 3.
    """
    if not 1 <= n <= 3:
        raise TooLarge("full-matrix oracle only runs for n <= 3")
    B = 1 << n
    ctx = alpha.ctx
    h_terms = [(unpack(k), bits) for k, bits in h_poly(alpha).terms.items()]
    monos = [
        (x, y, z) for x in range(B) for y in range(B) for z in range(B)
    ]
    idx = {m: i for i, m in enumerate(monos)}
    entries = []
    for c, (ex, ey, ez) in enumerate(monos):
        for (hx, hy, hz), bits in h_terms:
            p = (ex + hx, ey + hy, ez + hz)
            if p in idx:
                entries.append((idx[p], c, bits))
    dim = len(monos)
    r = _block_rank(ctx, dim, dim, entries)
    return dim - r


def random_generic_points(
    count: int, seed: int = 0, ctx: Optional[FieldCtx] = None
) -> list[FieldElem]:
    """Rejection-sample elements with non-terminating escape orbit.

    Terminating elements are roots of certain sparse polynomials, hence
    rare; a handful of draws from F_{2^16} nearly always suffices.
    """
    if ctx is None:
        ctx = least_irreducible(16)
    rng = Random(seed)
    out: list[FieldElem] = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 200 * count + 200:
            raise RuntimeError("rejection sampling is not terminating")
        a = ctx.random_elem(rng)
        if a.bits and not escape_time(a).finite:
            out.append(a)
    return out


def en_generic(
    n: int,
    points: Sequence[FieldElem],
    jobs: int = 1,
    force: bool = False,
) -> HKResult:
    """Colength at several non-terminating points, reported as one value.

    Each evaluation is a correct value at its own point; the max over
    points is reported together with an agreement flag.  Every supplied
    point must have a non-terminating orbit.
    """
    if not points:
        raise ValueError("need at least one evaluation point")
    t0 = time.perf_counter()
    for p in points:
        if not p.bits or escape_time(p).finite:
            raise BadPoint(f"{format_elem(p)} has a terminating escape orbit")
    results = [en(n, p, jobs=jobs, force=force) for p in points]
    values = [r.e_n for r in results]
    best = max(values)
    pick = results[values.index(best)]
    return HKResult(
        n=n,
        alpha="generic",
        e_n=best,
        blocks=pick.blocks,
        per_point=[(r.alpha, r.e_n) for r in results],
        agree=len(set(values)) == 1,
        seconds=time.perf_counter() - t0,
    )
