"""Sparse trivariate polynomials over a FieldCtx and the truncated ring
F[x,y,z]/(x^B, y^B, z^B), together with the bracket subspace generators.

Exponent triples are packed 21 bits apiece into a single int key, so a
TriPoly is one dict.  Multiplication with a truncation bound B drops any
monomial with an exponent >= B; that is reduction modulo the Frobenius
power (x^B, y^B, z^B), and it commutes with products, so bounds can be
applied at every intermediate step.

The bracket [i,j] = A_x^i A_y^j + A_x^j A_y^i with A_x = x^2+yz and
A_y = y^2+xz; the W/W0/W' families are spans of brackets times a power
of z, enumerated verbatim from their defining constraints.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .binaryfield import FieldCtx, FieldElem, field_spec
from .errors import BadIndex, BadQ, CtxMismatch, DegreeMismatch

__all__ = [
    "TriPoly",
    "BracketSpec",
    "GradedBasis",
    "pack",
    "unpack",
    "variables",
    "ax_poly",
    "ay_poly",
    "h_poly",
    "bracket",
    "w_generators",
    "w0_generators",
    "wprime_generators",
    "u_basis",
    "graded_basis",
    "to_vector",
    "socle_triple",
    "mult_entries",
    "check_line_power",
]

_EXP_BITS = 21
_EXP_MASK = (1 << _EXP_BITS) - 1

Triple = tuple[int, int, int]


def pack(ex: int, ey: int, ez: int) -> int:
    return (ex << (2 * _EXP_BITS)) | (ey << _EXP_BITS) | ez


def unpack(key: int) -> Triple:
    return key >> (2 * _EXP_BITS), (key >> _EXP_BITS) & _EXP_MASK, key & _EXP_MASK


class TriPoly:
    """Immutable-by-convention sparse polynomial: packed triple -> bits."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms: Optional[dict[int, int]] = None):
        self.ctx = ctx
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "TriPoly":
        return cls(ctx)

    @classmethod
    def monomial(cls, ctx: FieldCtx, triple: Triple, coeff: int = 1) -> "TriPoly":
        coeff = ctx.reduce(coeff)
        if not coeff:
            return cls(ctx)
        return cls(ctx, {pack(*triple): coeff})

    @classmethod
    def from_terms(cls, ctx: FieldCtx, items: Iterable[tuple[Triple, int]]) -> "TriPoly":
        terms: dict[int, int] = {}
        for triple, bits in items:
            key = pack(*triple)
            v = terms.get(key, 0) ^ ctx.reduce(bits)
            if v:
                terms[key] = v
            else:
                terms.pop(key, None)
        return cls(ctx, terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TriPoly)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "TriPoly") -> "TriPoly":
        if self.ctx != other.ctx:
            raise CtxMismatch("TriPoly operands in different fields")
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for key, bits in b.items():
            v = out.get(key, 0) ^ bits
            if v:
                out[key] = v
            else:
                del out[key]
        return TriPoly(self.ctx, out)

    __sub__ = __add__

    def scale(self, coeff_bits: int) -> "TriPoly":
        c = self.ctx.reduce(coeff_bits)
        if not c:
            return TriPoly(self.ctx)
        if c == 1:
            return self
        mul = self.ctx.mul
        return TriPoly(self.ctx, {k: mul(v, c) for k, v in self.terms.items()})

    def mul(self, other: "TriPoly", bound: Optional[int] = None) -> "TriPoly":
        if self.ctx != other.ctx:
            raise CtxMismatch("TriPoly operands in different fields")
        mulc = self.ctx.mul
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[int, int] = {}
        if bound is None:
            for ka, va in a.items():
                for kb, vb in b.items():
                    key = ka + kb
                    v = out.get(key, 0) ^ mulc(va, vb)
                    if v:
                        out[key] = v
                    else:
                        del out[key]
        else:
            # operands keep exponents < bound <= 2^20, so the packed sum
            # never carries across fields and can be tested field-wise
            for ka, va in a.items():
                for kb, vb in b.items():
                    key = ka + kb
                    if (
                        key & _EXP_MASK >= bound
                        or (key >> _EXP_BITS) & _EXP_MASK >= bound
                        or key >> (2 * _EXP_BITS) >= bound
                    ):
                        continue
                    v = out.get(key, 0) ^ mulc(va, vb)
                    if v:
                        out[key] = v
                    else:
                        del out[key]
        return TriPoly(self.ctx, out)

    __mul__ = mul

    def sq(self, bound: Optional[int] = None) -> "TriPoly":
        sqc = self.ctx.sq
        out = {}
        for key, bits in self.terms.items():
            ex, ey, ez = unpack(key)
            if bound is not None and (2 * ex >= bound or 2 * ey >= bound or 2 * ez >= bound):
                continue
            out[pack(2 * ex, 2 * ey, 2 * ez)] = sqc(bits)
        return TriPoly(self.ctx, out)

    def pow_trunc(self, n: int, bound: Optional[int] = None) -> "TriPoly":
        """n-th power by square-and-multiply, truncating at every step."""
        if n < 0:
            raise ValueError("negative power")
        result = TriPoly.monomial(self.ctx, (0, 0, 0))
        base = self
        while n:
            if n & 1:
                result = result.mul(base, bound)
            n >>= 1
            if n:
                base = base.sq(bound)
        return result

    def coeff(self, triple: Triple) -> FieldElem:
        return FieldElem(self.ctx, self.terms.get(pack(*triple), 0))

    def iter_terms(self) -> Iterator[tuple[Triple, int]]:
        for key in sorted(self.terms):
            yield unpack(key), self.terms[key]

    def degree(self) -> Optional[int]:
        degs = {sum(unpack(k)) for k in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise DegreeMismatch(f"not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({sum(unpack(k)) for k in self.terms}) <= 1

    def dump(self) -> str:
        from .binaryfield import format_elem

        if not self.terms:
            return "0"
        parts = []
        for (ex, ey, ez), bits in self.iter_terms():
            c = format_elem(FieldElem(self.ctx, bits))
            mono = "*".join(
                f"{var}^{e}" for var, e in (("x", ex), ("y", ey), ("z", ez)) if e
            )
            if not mono:
                parts.append(c)
            elif c == "1":
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        n = len(self.terms)
        return f"TriPoly({n} terms over {field_spec(self.ctx)})"


def variables(ctx: FieldCtx) -> tuple[TriPoly, TriPoly, TriPoly]:
    return (
        TriPoly.monomial(ctx, (1, 0, 0)),
        TriPoly.monomial(ctx, (0, 1, 0)),
        TriPoly.monomial(ctx, (0, 0, 1)),
    )


def ax_poly(ctx: FieldCtx) -> TriPoly:
    return TriPoly.from_terms(ctx, [((2, 0, 0), 1), ((0, 1, 1), 1)])


def ay_poly(ctx: FieldCtx) -> TriPoly:
    return TriPoly.from_terms(ctx, [((0, 2, 0), 1), ((1, 0, 1), 1)])


def h_poly(alpha: FieldElem) -> TriPoly:
    """alpha*z^4 + (x^2+yz)(y^2+xz), the line quartic at the point alpha."""
    ctx = alpha.ctx
    h = ax_poly(ctx).mul(ay_poly(ctx))
    if alpha.bits:
        h = h + TriPoly.monomial(ctx, (0, 0, 4), alpha.bits)
    return h


def bracket(
    ctx: FieldCtx, i: int, j: int, z_shift: int = 0, bound: Optional[int] = None
) -> TriPoly:
    """[i,j] * z^z_shift, with [i,j] = A_x^i A_y^j + A_x^j A_y^i."""
    if i < 0 or j < 0 or z_shift < 0:
        raise BadIndex("bracket wants nonnegative indices")
    if i == j:
        return TriPoly(ctx)
    ax, ay = ax_poly(ctx), ay_poly(ctx)
    p = ax.pow_trunc(i, bound).mul(ay.pow_trunc(j, bound), bound) + ax.pow_trunc(
        j, bound
    ).mul(ay.pow_trunc(i, bound), bound)
    if z_shift:
        p = p.mul(TriPoly.monomial(ctx, (0, 0, z_shift)), bound)
    return p


def check_line_power(Q: int) -> int:
    """Validate Q = 2^(2l-1) and return l."""
    if Q < 2 or Q & (Q - 1):
        raise BadQ(f"Q must be 2^(2l-1), got {Q}")
    e = Q.bit_length() - 1
    if e % 2 == 0:
        raise BadQ(f"Q must be an odd power of two, got 2^{e}")
    return (e + 1) // 2


@dataclass(frozen=True)
class BracketSpec:
    """One generator [i,j] z^k of a bracket subspace at level Q."""

    i: int
    j: int
    k: int
    Q: int
    special: bool = False

    @property
    def degree(self) -> int:
        return 2 * self.i + 2 * self.j + self.k

    def to_poly(self, ctx: FieldCtx, bound: Optional[int] = None) -> TriPoly:
        if bound is None:
            bound = 4 * self.Q
        return bracket(ctx, self.i, self.j, self.k, bound)

    def label(self) -> str:
        return f"[{self.i},{self.j}]z^{self.k}"


def _bracket_family(Q: int, total: int) -> list[BracketSpec]:
    out = []
    for i in range(2 * Q):
        for j in range(i + 1, 2 * Q):
            k = total - 2 * i - 2 * j
            if k < 1 or k >= 4 * Q:
                continue
            if k % 4 != 1:
                continue
            out.append(BracketSpec(i, j, k, Q))
    return out


def w_generators(Q: int) -> list[BracketSpec]:
    """Generators of W inside degree 6Q-5: the special one plus brackets.

    The special generator [0, Q-2] z^(4Q-1) is kept even at Q = 2 where it
    is the zero polynomial.
    """
    check_line_power(Q)
    special = BracketSpec(0, Q - 2, 4 * Q - 1, Q, special=True)
    return [special] + _bracket_family(Q, 6 * Q - 5)


def w0_generators(Q: int) -> list[BracketSpec]:
    """The W generators with j != 2Q-1 (the annihilated-by-v subfamily)."""
    return [g for g in w_generators(Q) if g.special or g.j != 2 * Q - 1]


def wprime_generators(Q: int) -> list[BracketSpec]:
    """Generators of W' inside degree 6Q-1."""
    check_line_power(Q)
    special = BracketSpec(1, Q - 1, 4 * Q - 1, Q, special=True)
    return [special] + _bracket_family(Q, 6 * Q - 1)


def u_basis(Q: int, i: int, ctx: FieldCtx) -> TriPoly:
    """u_i = [Q-i-1, 2Q-1] z^(2i-1), for odd i in [1, Q-1]."""
    check_line_power(Q)
    if i % 2 == 0 or not 1 <= i <= Q - 1:
        raise BadIndex(f"u_basis wants odd i in [1, {Q-1}], got {i}")
    return bracket(ctx, Q - i - 1, 2 * Q - 1, 2 * i - 1, bound=4 * Q)


@dataclass(frozen=True)
class GradedBasis:
    """Monomial basis of one graded piece, lex-ordered exponent triples."""

    degree: int
    bound: int
    triples: tuple[Triple, ...]

    @property
    def dim(self) -> int:
        return len(self.triples)

    def index(self) -> dict[Triple, int]:
        return _basis_index(self.degree, self.bound)


@lru_cache(maxsize=256)
def graded_basis(degree: int, bound: int) -> GradedBasis:
    if degree < 0 or bound < 1:
        raise DegreeMismatch(f"bad graded piece: degree {degree}, bound {bound}")
    triples = []
    for ex in range(min(degree, bound - 1) + 1):
        rest = degree - ex
        ey_lo = max(0, rest - (bound - 1))
        for ey in range(ey_lo, min(rest, bound - 1) + 1):
            triples.append((ex, ey, rest - ey))
    return GradedBasis(degree, bound, tuple(triples))


@lru_cache(maxsize=256)
def _basis_index(degree: int, bound: int) -> dict[Triple, int]:
    basis = graded_basis(degree, bound)
    return {t: i for i, t in enumerate(basis.triples)}


def to_vector(p: TriPoly, basis: GradedBasis) -> list[int]:
    """Coefficient bits of p in the basis ordering; strays are an error."""
    out = [0] * basis.dim
    if not p.terms:
        return out
    idx = basis.index()
    for key, bits in p.terms.items():
        triple = unpack(key)
        pos = idx.get(triple)
        if pos is None:
            raise DegreeMismatch(
                f"monomial {triple} outside graded piece "
                f"(degree {basis.degree}, bound {basis.bound})"
            )
        out[pos] = bits
    return out


def socle_triple(Q: int) -> Triple:
    """The unique monomial of the one-dimensional top piece, (xyz)^(4Q-1)."""
    return (4 * Q - 1, 4 * Q - 1, 4 * Q - 1)


def mult_entries(
    p: TriPoly, src_degree: int, bound: int
) -> tuple[int, int, list[tuple[int, int, int]]]:
    """Sparse entries of multiplication by homogeneous p, as a map from
    the degree-src_degree piece to the piece src_degree + deg p.

    Returns (target dim, source dim, entries); entries carry raw
    coefficient bits.  Products overflowing the bound are dropped, which
    is exactly reduction in the truncation.
    """
    dp = p.degree()
    if dp is None:
        raise DegreeMismatch("multiplication by the zero polynomial")
    src = graded_basis(src_degree, bound)
    tgt = graded_basis(src_degree + dp, bound)
    tidx = tgt.index()
    terms = [(unpack(k), bits) for k, bits in p.terms.items()]
    entries = []
    for c, (ex, ey, ez) in enumerate(src.triples):
        for (px, py, pz), bits in terms:
            tx, ty, tz = ex + px, ey + py, ez + pz
            if tx >= bound or ty >= bound or tz >= bound:
                continue
            entries.append((tidx[(tx, ty, tz)], c, bits))
    return tgt.dim, src.dim, entries
