"""Exact linear algebra over FieldCtx fields, with certificates.

Three engines:

* "dense"   - scalar Gauss-Jordan on Python ints, any degree; the
              reference implementation everything else is tested against;
* "packed2" - GF(2) rows packed into Python ints, pivot by bit scan;
* "sliced"  - bit-plane numpy storage driven by numba kernels, d <= 16;
              this is the one that carries the large eliminations.

Rank/kernel/solve results are re-verified before being returned (the
checks are cheap next to elimination).  in_image returns a certificate
either way: a preimage when the vector is in the column span, or a left
functional vanishing on the span but not on the vector.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from . import _slicedkernels as sk
from .binaryfield import FieldCtx, FieldElem, field_spec, format_elem
from .errors import (
    CrossCheckFailed,
    CtxMismatch,
    DimensionMismatch,
    TooLarge,
)
from .unipoly import BitPoly

__all__ = [
    "GFMatrix",
    "SlicedMatrix",
    "PolyMatrix",
    "MembershipCert",
    "GenericRankResult",
    "rank",
    "kernel",
    "solve",
    "in_image",
    "generic_rank",
]

SLICED_DEGREE_MAX = 16
_DENSE_AUTO_LIMIT = 96  # below this, numba dispatch overhead wins nothing

Entry = tuple[int, int, int]  # (row, col, coefficient bits)


def _np_tables(ctx: FieldCtx) -> tuple[np.ndarray, np.ndarray]:
    log, exp = ctx.logexp_tables()
    return np.asarray(log, dtype=np.int64), np.asarray(exp, dtype=np.int64)


class GFMatrix:
    """Dense row-major matrix; entries are packed coefficient ints."""

    __slots__ = ("ctx", "nrows", "ncols", "rows")

    def __init__(self, ctx: FieldCtx, rows: list[list[int]], ncols: Optional[int] = None):
        self.ctx = ctx
        self.nrows = len(rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        self.ncols = ncols
        for row in rows:
            if len(row) != ncols:
                raise DimensionMismatch("ragged rows")
        self.rows = rows

    @classmethod
    def zeros(cls, ctx: FieldCtx, nrows: int, ncols: int) -> "GFMatrix":
        return cls(ctx, [[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "GFMatrix":
        m = cls.zeros(ctx, n, n)
        for i in range(n):
            m.rows[i][i] = 1
        return m

    @classmethod
    def from_entries(
        cls, ctx: FieldCtx, nrows: int, ncols: int, entries: Iterable[Entry]
    ) -> "GFMatrix":
        m = cls.zeros(ctx, nrows, ncols)
        for r, c, bits in entries:
            m.rows[r][c] ^= bits
        return m

    def entry(self, r: int, c: int) -> int:
        return self.rows[r][c]

    def iter_entries(self) -> Iterator[Entry]:
        for r, row in enumerate(self.rows):
            for c, bits in enumerate(row):
                if bits:
                    yield r, c, bits

    def copy_rows(self) -> list[list[int]]:
        return [row[:] for row in self.rows]

    def transpose(self) -> "GFMatrix":
        return GFMatrix(
            self.ctx,
            [[self.rows[r][c] for r in range(self.nrows)] for c in range(self.ncols)],
            self.nrows,
        )

    def mul_vec(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.ncols:
            raise DimensionMismatch(f"vector length {len(x)} != ncols {self.ncols}")
        mul = self.ctx.mul
        out = []
        for row in self.rows:
            acc = 0
            for a, b in zip(row, x):
                if a and b:
                    acc ^= mul(a, b)
            out.append(acc)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, GFMatrix)
            and self.ctx == other.ctx
            and self.rows == other.rows
            and self.ncols == other.ncols
        )

    def __repr__(self):
        return f"GFMatrix({self.nrows}x{self.ncols} over {field_spec(self.ctx)})"


class SlicedMatrix:
    """Bit-plane storage: planes[r, k, w] holds bit k of 64 entries."""

    __slots__ = ("ctx", "nrows", "ncols", "planes", "entries")

    def __init__(self, ctx: FieldCtx, nrows: int, ncols: int):
        if ctx.degree > SLICED_DEGREE_MAX:
            raise TooLarge(f"sliced engine caps degree at {SLICED_DEGREE_MAX}")
        self.ctx = ctx
        self.nrows = nrows
        self.ncols = ncols
        W = max(1, (ncols + 63) >> 6)
        self.planes = np.zeros((max(nrows, 1), ctx.degree, W), dtype=np.uint64)
        self.entries: list[Entry] = []

    @classmethod
    def from_entries(
        cls, ctx: FieldCtx, nrows: int, ncols: int, entries: Iterable[Entry]
    ) -> "SlicedMatrix":
        m = cls(ctx, nrows, ncols)
        for r, c, bits in entries:
            m.xor_entry(r, c, bits)
        return m

    @classmethod
    def from_gfmatrix(cls, M: GFMatrix) -> "SlicedMatrix":
        return cls.from_entries(M.ctx, M.nrows, M.ncols, M.iter_entries())

    def xor_entry(self, r: int, c: int, bits: int) -> None:
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise DimensionMismatch(f"entry ({r},{c}) outside {self.nrows}x{self.ncols}")
        if not bits:
            return
        self.entries.append((r, c, bits))
        w, s = c >> 6, np.uint64(c & 63)
        k = 0
        while bits:
            if bits & 1:
                self.planes[r, k, w] ^= np.uint64(1) << s
            bits >>= 1
            k += 1

    def entry(self, r: int, c: int) -> int:
        w, s = c >> 6, c & 63
        v = 0
        for k in range(self.ctx.degree):
            v |= (int(self.planes[r, k, w]) >> s & 1) << k
        return v

    def to_gfmatrix(self) -> GFMatrix:
        return GFMatrix(
            self.ctx,
            [[self.entry(r, c) for c in range(self.ncols)] for r in range(self.nrows)],
            self.ncols,
        )

    def ref(self, elim_cols: Optional[int] = None, full: bool = False) -> tuple[int, np.ndarray]:
        """In-place echelon form; returns (rank, pivot columns)."""
        if elim_cols is None:
            elim_cols = self.ncols
        pivcols = np.full(min(self.nrows, elim_cols) + 1, -1, dtype=np.int64)
        if self.nrows == 0 or elim_cols == 0:
            return 0, pivcols[:0]
        logt, expt = _np_tables(self.ctx)
        r = sk.ref_kernel(
            self.planes,
            elim_cols,
            self.ctx.degree,
            logt,
            expt,
            self.ctx.modulus & ((1 << self.ctx.degree) - 1),
            pivcols,
            full,
        )
        return int(r), pivcols[:r]

    def __repr__(self):
        return f"SlicedMatrix({self.nrows}x{self.ncols} over {field_spec(self.ctx)})"


AnyMatrix = Union[GFMatrix, SlicedMatrix]


# dense reference engine


def _dense_ref(
    ctx: FieldCtx, rows: list[list[int]], elim_cols: int, full: bool
) -> tuple[int, list[int]]:
    mul, inv = ctx.mul, ctx.inv
    R = len(rows)
    rank_ = 0
    pivcols = []
    for c in range(elim_cols):
        piv = -1
        for r in range(rank_, R):
            if rows[r][c]:
                piv = r
                break
        if piv < 0:
            continue
        rows[rank_], rows[piv] = rows[piv], rows[rank_]
        prow = rows[rank_]
        pinv = inv(prow[c])
        rng = range(R) if full else range(rank_ + 1, R)
        for r in rng:
            if r == rank_:
                continue
            v = rows[r][c]
            if v:
                f = mul(v, pinv)
                row = rows[r]
                for j in range(c, len(row)):
                    if prow[j]:
                        row[j] ^= mul(f, prow[j])
        pivcols.append(c)
        rank_ += 1
        if rank_ == R:
            break
    return rank_, pivcols


def _dense_backsub(
    ctx: FieldCtx, rows: list[list[int]], pivcols: list[int], rhs_col: int, ncols: int
) -> list[int]:
    mul, inv = ctx.mul, ctx.inv
    x = [0] * ncols
    for ii in range(len(pivcols) - 1, -1, -1):
        c = pivcols[ii]
        row = rows[ii]
        s = row[rhs_col]
        for jj in range(ii + 1, len(pivcols)):
            cj = pivcols[jj]
            if row[cj] and x[cj]:
                s ^= mul(row[cj], x[cj])
        if s:
            x[c] = mul(s, inv(row[c]))
    return x


# packed GF(2) engine


def _pack2_rows(M: GFMatrix) -> list[int]:
    out = []
    for row in M.rows:
        bits = 0
        for c, v in enumerate(row):
            if v:
                bits |= 1 << c
        out.append(bits)
    return out


def rank2_packed(rows: list[int]) -> int:
    """Rank of GF(2) rows given as little-endian masks.  Mutates its copy."""
    work = sorted((r for r in rows if r), reverse=True)
    rank_ = 0
    # classic reduce-by-leader loop
    leaders: list[int] = []
    for r in work:
        for lead in leaders:
            r = min(r, r ^ lead)
        if r:
            leaders.append(r)
            leaders.sort(reverse=True)
            rank_ += 1
    return rank_


def _engine_for(M: AnyMatrix, engine: str) -> str:
    ctx = M.ctx
    if engine != "auto":
        return engine
    if isinstance(M, SlicedMatrix):
        return "sliced"
    if ctx.degree == 1 and max(M.nrows, M.ncols) > _DENSE_AUTO_LIMIT:
        return "packed2"
    if ctx.degree <= SLICED_DEGREE_MAX and max(M.nrows, M.ncols) > _DENSE_AUTO_LIMIT:
        return "sliced"
    return "dense"


def rank(M: AnyMatrix, engine: str = "auto") -> int:
    engine = _engine_for(M, engine)
    if engine == "sliced":
        S = M if isinstance(M, SlicedMatrix) else SlicedMatrix.from_gfmatrix(M)
        work = SlicedMatrix(S.ctx, S.nrows, S.ncols)
        work.planes = S.planes.copy()
        return work.ref()[0]
    if isinstance(M, SlicedMatrix):
        M = M.to_gfmatrix()
    if engine == "packed2":
        if M.ctx.degree != 1:
            raise CtxMismatch("packed2 engine needs a degree-1 ctx")
        return rank2_packed(_pack2_rows(M))
    if engine == "dense":
        return _dense_ref(M.ctx, M.copy_rows(), M.ncols, False)[0]
    raise ValueError(f"unknown engine {engine!r}")


def kernel(M: AnyMatrix, engine: str = "auto") -> list[list[int]]:
    """Basis of the right null space; each vector re-verified."""
    if isinstance(M, SlicedMatrix):
        M = M.to_gfmatrix()
    ctx = M.ctx
    engine = _engine_for(M, engine)
    if engine == "sliced":
        S = SlicedMatrix.from_gfmatrix(M)
        r, pivs = S.ref(full=True)
        rows = [[S.entry(i, c) for c in range(M.ncols)] for i in range(r)]
        pivcols = [int(c) for c in pivs]
    else:
        rows = M.copy_rows()
        r, pivcols = _dense_ref(ctx, rows, M.ncols, True)
    piv_set = set(pivcols)
    free_cols = [c for c in range(M.ncols) if c not in piv_set]
    inv, mul = ctx.inv, ctx.mul
    basis = []
    for fc in free_cols:
        vec = [0] * M.ncols
        vec[fc] = 1
        for i, pc in enumerate(pivcols):
            if rows[i][fc]:
                vec[pc] = mul(rows[i][fc], inv(rows[i][pc]))
        basis.append(vec)
    for vec in basis:
        if any(M.mul_vec(vec)):
            raise CrossCheckFailed("kernel vector fails verification")
    return basis


def solve(M: AnyMatrix, b: Sequence[int], engine: str = "auto") -> Optional[list[int]]:
    """One solution of Mx = b (coefficients as packed ints), or None."""
    cert = in_image(M, b, engine)
    return cert.preimage if cert.member else None


@dataclass
class MembershipCert:
    """Outcome of a column-span membership query, with proof either way."""

    member: bool
    preimage: Optional[list[int]] = None
    functional: Optional[list[int]] = None

    def verify(self, M: AnyMatrix, b: Sequence[int]) -> bool:
        ctx = M.ctx
        mul = ctx.mul
        entries = M.entries if isinstance(M, SlicedMatrix) else list(M.iter_entries())
        if self.member:
            x = self.preimage
            if x is None or len(x) != M.ncols:
                return False
            acc = [0] * M.nrows
            for r, c, bits in entries:
                if bits and x[c]:
                    acc[r] ^= mul(bits, x[c])
            return acc == [v for v in b]
        phi = self.functional
        if phi is None or len(phi) != M.nrows:
            return False
        col_acc = [0] * M.ncols
        for r, c, bits in entries:
            if bits and phi[r]:
                col_acc[c] ^= mul(bits, phi[r])
        if any(col_acc):
            return False
        pb = 0
        for r, bits in enumerate(b):
            if bits and phi[r]:
                pb ^= mul(bits, phi[r])
        return pb != 0


def _entries_of(M: AnyMatrix) -> list[Entry]:
    if isinstance(M, SlicedMatrix):
        return M.entries
    return list(M.iter_entries())


def in_image(M: AnyMatrix, b: Sequence[int], engine: str = "auto") -> MembershipCert:
    if len(b) != M.nrows:
        raise DimensionMismatch(f"vector length {len(b)} != nrows {M.nrows}")
    ctx = M.ctx
    engine = _engine_for(M, engine)
    entries = _entries_of(M)
    R, C = M.nrows, M.ncols

    if engine in ("sliced", "packed2") and ctx.degree <= SLICED_DEGREE_MAX:
        aug = SlicedMatrix(ctx, R, C + 1)
        for r, c, bits in entries:
            aug.xor_entry(r, c, bits)
        for r, bits in enumerate(b):
            if bits:
                aug.xor_entry(r, C, bits)
        rk, pivs = aug.ref()
        consistent = C not in set(int(p) for p in pivs)
        if consistent:
            logt, expt = _np_tables(ctx)
            x = np.zeros(C + 1, dtype=np.int64)
            sk.backsub_kernel(
                aug.planes, np.asarray(pivs), rk, ctx.degree, logt, expt, C, x
            )
            cert = MembershipCert(True, [int(v) for v in x[:C]])
        else:
            T = SlicedMatrix(ctx, C + 1, R + 1)
            for r, c, bits in entries:
                T.xor_entry(c, r, bits)
            for r, bits in enumerate(b):
                if bits:
                    T.xor_entry(C, r, bits)
            T.xor_entry(C, R, 1)
            rk2, pivs2 = T.ref()
            if R in set(int(p) for p in pivs2):
                raise CrossCheckFailed("functional system inconsistent; engine bug")
            logt, expt = _np_tables(ctx)
            y = np.zeros(R + 1, dtype=np.int64)
            sk.backsub_kernel(
                T.planes, np.asarray(pivs2), rk2, ctx.degree, logt, expt, R, y
            )
            cert = MembershipCert(False, functional=[int(v) for v in y[:R]])
    else:
        rows = [[0] * (C + 1) for _ in range(R)]
        for r, c, bits in entries:
            rows[r][c] ^= bits
        for r, bits in enumerate(b):
            rows[r][C] ^= bits
        rk, pivcols = _dense_ref(ctx, rows, C + 1, False)
        if C not in pivcols:
            x = _dense_backsub(ctx, rows, pivcols, C, C + 1)[:C]
            cert = MembershipCert(True, x)
        else:
            trows = [[0] * (R + 1) for _ in range(C + 1)]
            for r, c, bits in entries:
                trows[c][r] ^= bits
            for r, bits in enumerate(b):
                trows[C][r] ^= bits
            trows[C][R] ^= 1
            rk2, piv2 = _dense_ref(ctx, trows, R + 1, False)
            if R in piv2:
                raise CrossCheckFailed("functional system inconsistent; engine bug")
            y = _dense_backsub(ctx, trows, piv2, R, R + 1)[:R]
            cert = MembershipCert(False, functional=y)

    if not cert.verify(M, b):
        raise CrossCheckFailed("membership certificate failed verification")
    return cert


# matrices with F_2[t] entries


class PolyMatrix:
    """Sparse matrix whose entries are GF(2)[t] polynomials (packed bits)."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries: Optional[dict[tuple[int, int], int]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries: dict[tuple[int, int], int] = dict(entries or {})

    def xor_entry(self, r: int, c: int, poly_bits: int) -> None:
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise DimensionMismatch(f"entry ({r},{c}) outside {self.nrows}x{self.ncols}")
        key = (r, c)
        v = self.entries.get(key, 0) ^ poly_bits
        if v:
            self.entries[key] = v
        else:
            self.entries.pop(key, None)

    def degree_bound(self) -> int:
        return max((p.bit_length() - 1 for p in self.entries.values()), default=0)

    def eval_at(self, point: FieldElem) -> AnyMatrix:
        ctx = point.ctx
        evaluated = []
        for (r, c), poly_bits in self.entries.items():
            bits = BitPoly(poly_bits).evaluate(point).bits
            if bits:
                evaluated.append((r, c, bits))
        if ctx.degree <= SLICED_DEGREE_MAX and max(self.nrows, self.ncols) > _DENSE_AUTO_LIMIT:
            return SlicedMatrix.from_entries(ctx, self.nrows, self.ncols, evaluated)
        return GFMatrix.from_entries(ctx, self.nrows, self.ncols, evaluated)

    def exact_rank(self, dim_cap: int = 64) -> int:
        """Fraction-free elimination with polynomial entries; small sizes only."""
        if max(self.nrows, self.ncols) > dim_cap:
            raise TooLarge(f"exact mode capped at {dim_cap} rows/cols")
        from . import _gf2poly as gp

        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for (r, c), p in self.entries.items():
            rows[r][c] = p
        rank_ = 0
        prev_piv = 1
        for c in range(self.ncols):
            piv = -1
            for r in range(rank_, self.nrows):
                if rows[r][c]:
                    piv = r
                    break
            if piv < 0:
                continue
            rows[rank_], rows[piv] = rows[piv], rows[rank_]
            prow = rows[rank_]
            p = prow[c]
            for r in range(rank_ + 1, self.nrows):
                row = rows[r]
                q = row[c]
                for j in range(c, self.ncols):
                    num = gp.mul(p, row[j]) ^ gp.mul(q, prow[j])
                    quo, rem = gp.divmod_(num, prev_piv)
                    if rem:
                        raise CrossCheckFailed("fraction-free division not exact")
                    row[j] = quo
            prev_piv = p
            rank_ += 1
            if rank_ == self.nrows:
                break
        return rank_

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols}, {len(self.entries)} entries)"


@dataclass
class GenericRankResult:
    lower_bound: int
    certified: bool
    full_rank: int
    per_point: list[dict] = field(default_factory=list)

    @property
    def stable(self) -> bool:
        ranks = {p["rank"] for p in self.per_point}
        return len(ranks) == 1 and len(self.per_point) >= 3


def generic_rank(P: PolyMatrix, points: Sequence[FieldElem]) -> GenericRankResult:
    """Max rank over evaluations: a lower bound for the rank over F_2(t).

    certified is set only when some evaluation reaches full possible rank,
    which soundly forces generic full rank (a nonzero minor stays nonzero).
    """
    full = min(P.nrows, P.ncols)
    per_point = []
    best = 0
    for pt in points:
        r = rank(P.eval_at(pt))
        per_point.append(
            {
                "field": field_spec(pt.ctx),
                "point": format_elem(pt, "exponents"),
                "rank": r,
            }
        )
        best = max(best, r)
        if best == full:
            break
    return GenericRankResult(best, best == full, full, per_point)
