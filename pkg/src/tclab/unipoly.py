"""Univariate polynomials over GF(2), with factorization.

BitPoly wraps the packed-int representation (bit k = coefficient of x^k).
The factorization stack is squarefree split -> distinct-degree split ->
equal-degree split by trace maps, all plain char-2 textbook routines.
"""
from __future__ import annotations

import random
import re
from typing import Iterable, Optional, Union

from . import _gf2poly as gp
from .binaryfield import FieldCtx, FieldElem, field_create
from .errors import ParseError, TooLarge, TraceSplitFailed

__all__ = [
    "BitPoly",
    "X",
    "parse_poly",
    "format_poly",
    "is_squarefree",
    "squarefree_part",
    "distinct_degree_split",
    "equal_degree_split",
    "factor",
    "is_irreducible",
    "root_field",
    "roots_in_field",
]

EDF_RETRY_CAP = 64
_ROOT_SUBFIELD_MAX_DEGREE = 20


class BitPoly:
    """Immutable GF(2)[x] polynomial on a packed int."""

    __slots__ = ("bits",)

    def __init__(self, bits: int):
        if bits < 0:
            raise ValueError("negative bit pattern")
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("BitPoly is immutable")

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> "BitPoly":
        return cls(gp.from_exponents(exps))

    @property
    def degree(self) -> int:
        return gp.deg(self.bits)

    def exponents(self) -> list[int]:
        return gp.to_exponents(self.bits)

    def __bool__(self):
        return self.bits != 0

    def __eq__(self, other):
        return isinstance(other, BitPoly) and self.bits == other.bits

    def __hash__(self):
        return hash(("BitPoly", self.bits))

    def __lt__(self, other: "BitPoly"):
        return (self.degree, self.bits) < (other.degree, other.bits)

    def __repr__(self):
        return f"BitPoly({format_poly(self)!r})"

    def __add__(self, other: "BitPoly") -> "BitPoly":
        return BitPoly(self.bits ^ other.bits)

    __sub__ = __add__
    __xor__ = __add__

    def __mul__(self, other: "BitPoly") -> "BitPoly":
        return BitPoly(gp.mul(self.bits, other.bits))

    def __divmod__(self, other: "BitPoly") -> tuple["BitPoly", "BitPoly"]:
        q, r = gp.divmod_(self.bits, other.bits)
        return BitPoly(q), BitPoly(r)

    def __floordiv__(self, other: "BitPoly") -> "BitPoly":
        return BitPoly(gp.divmod_(self.bits, other.bits)[0])

    def __mod__(self, other: "BitPoly") -> "BitPoly":
        return BitPoly(gp.mod(self.bits, other.bits))

    def __pow__(self, k: int, m: Optional["BitPoly"] = None) -> "BitPoly":
        if k < 0:
            raise ValueError("negative exponent")
        if m is not None:
            return BitPoly(gp.powmod(self.bits, k, m.bits))
        out, base = BitPoly(1), self
        while k:
            if k & 1:
                out = out * base
            base = base.sq()
            k >>= 1
        return out

    def sq(self) -> "BitPoly":
        return BitPoly(gp.sq(self.bits))

    def derivative(self) -> "BitPoly":
        return BitPoly(gp.derivative(self.bits))

    def gcd(self, other: "BitPoly") -> "BitPoly":
        return BitPoly(gp.gcd(self.bits, other.bits))

    def evaluate(self, point: FieldElem) -> FieldElem:
        ctx = point.ctx
        acc = 0
        for d in range(self.degree, -1, -1):
            acc = ctx.mul(acc, point.bits)
            if self.bits >> d & 1:
                acc ^= 1
        return FieldElem(ctx, acc)

    def spread(self, k: int) -> "BitPoly":
        """x -> x^k substitution for k a power of two."""
        return BitPoly(gp.spread(self.bits, k))


X = BitPoly(2)
ONE = BitPoly(1)


_POLY_TERM = re.compile(r"^(?:(1)|(0)|(?:x)(?:\^\{?(\d+)\}?)?)$")


def parse_poly(s: str) -> BitPoly:
    text = s.replace("w", "x").replace(" ", "")
    if not text:
        raise ParseError("empty polynomial string")
    if re.fullmatch(r"[\d,]+", text):
        if "," not in text and text not in ("0", "1"):
            raise ParseError(
                f"{text!r} is ambiguous: use 'x^{text}' or '{text},' for a power"
            )
        if text == "0":
            return BitPoly(0)
        if text == "1":
            return ONE
        return BitPoly.from_exponents(int(tok) for tok in text.split(",") if tok)
    bits = 0
    for term in text.split("+"):
        m = _POLY_TERM.match(term)
        if not m:
            raise ParseError(f"bad term {term!r} in polynomial {s!r}")
        if m.group(2):
            continue
        if m.group(1):
            bits ^= 1
        elif m.group(3) is not None:
            bits ^= 1 << int(m.group(3))
        else:
            bits ^= 2
    return BitPoly(bits)


def format_poly(p: BitPoly, style: str = "symbolic") -> str:
    exps = p.exponents()
    if style == "exponents":
        if not exps:
            return "0"
        if exps == [0]:
            return "1"
        out = ",".join(str(k) for k in exps)
        return out + ("," if len(exps) == 1 else "")
    if style != "symbolic":
        raise ValueError(f"unknown style {style!r}")
    if not exps:
        return "0"
    terms = []
    for k in exps:
        terms.append("1" if k == 0 else ("x" if k == 1 else f"x^{k}"))
    return "+".join(terms)


def _unsquare(bits: int) -> int:
    # inverse of spread2 on polynomials with zero odd coefficients
    out = 0
    i = 0
    while bits:
        if bits & 1:
            out |= 1 << i
        bits >>= 2
        i += 1
    return out


def is_squarefree(p: BitPoly) -> bool:
    if not p:
        raise ValueError("zero polynomial")
    d = p.derivative()
    return bool(d) and p.gcd(d).degree == 0


def squarefree_part(p: BitPoly) -> BitPoly:
    """Product of the distinct irreducible factors, each once."""
    if not p:
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return ONE
    d = p.derivative()
    if not d:
        return squarefree_part(BitPoly(_unsquare(p.bits)))
    w = p // p.gcd(d)  # odd-multiplicity factors
    rest = p
    while True:
        g = rest.gcd(w)
        if g.degree == 0:
            break
        rest = rest // g
    # rest is now coprime to w and a perfect square
    if rest.degree == 0:
        return w
    other = squarefree_part(rest)
    return w * (other // other.gcd(w))


def distinct_degree_split(p: BitPoly) -> list[tuple[BitPoly, int]]:
    """[(product of irreducible factors of degree d, d)] for squarefree p."""
    out = []
    f = p.bits
    h = 2  # x
    d = 0
    while gp.deg(f) > 0:
        d += 1
        if 2 * d > gp.deg(f):
            out.append((BitPoly(f), gp.deg(f)))
            break
        h = gp.sqmod(h, f)
        g = gp.gcd(h ^ 2, f)
        if gp.deg(g) > 0:
            out.append((BitPoly(g), d))
            f = gp.divmod_(f, g)[0]
            h = gp.mod(h, f)
    return out


def equal_degree_split(p: BitPoly, d: int, rng: Optional[random.Random] = None) -> list[BitPoly]:
    """Irreducible factors of p, all known to have degree d."""
    if rng is None:
        rng = random.Random(0xEDF)
    n = p.degree
    if n == d:
        return [p]
    budget = EDF_RETRY_CAP

    def split(f: int) -> list[int]:
        nonlocal budget
        df = gp.deg(f)
        if df == d:
            return [f]
        while budget > 0:
            budget -= 1
            r = rng.getrandbits(df)
            if gp.deg(r) < 1:
                continue
            tr = r
            cur = r
            for _ in range(d - 1):
                cur = gp.sqmod(cur, f)
                tr ^= cur
            g = gp.gcd(tr, f)
            if 0 < gp.deg(g) < df:
                return split(g) + split(gp.divmod_(f, g)[0])
        raise TraceSplitFailed(f"no split of degree-{df} block after {EDF_RETRY_CAP} tries")

    return [BitPoly(f) for f in split(p.bits)]


def factor(p: BitPoly, rng: Optional[random.Random] = None) -> list[tuple[BitPoly, int]]:
    """Irreducible factorization, sorted by (degree, bit pattern)."""
    if not p:
        raise ValueError("zero polynomial")
    if rng is None:
        rng = random.Random(0xFAC7)
    found: dict[BitPoly, int] = {}

    def record(q: BitPoly, scale: int, source: BitPoly) -> BitPoly:
        # exact multiplicity of q in source
        m = 0
        rest = source
        while True:
            quo, rem = divmod(rest, q)
            if rem:
                break
            rest, m = quo, m + 1
        found[q] = found.get(q, 0) + scale * m
        return rest

    def walk(f: BitPoly, scale: int) -> None:
        if f.degree <= 0:
            return
        d = f.derivative()
        if not d:
            walk(BitPoly(_unsquare(f.bits)), 2 * scale)
            return
        w = f // f.gcd(d)
        rest = f
        for block, deg_d in distinct_degree_split(w):
            for q in equal_degree_split(block, deg_d, rng):
                rest = record(q, scale, rest)
        # rest holds the factors of even multiplicity only
        walk(rest, scale)

    walk(p, 1)
    return sorted(found.items())


def is_irreducible(p: BitPoly) -> bool:
    return gp.is_irreducible(p.bits)


def root_field(p: BitPoly) -> tuple[FieldCtx, FieldElem]:
    """Canonical splitting container for irreducible p: F_2[a]/(p), root a."""
    if not is_irreducible(p):
        raise ValueError("root_field wants an irreducible polynomial")
    if p.degree == 1:
        ctx = field_create(1, (1, 0))
        return ctx, ctx.elem(p.bits & 1)
    ctx = field_create(p.degree, p.bits)
    return ctx, ctx.gen


def roots_in_field(p: BitPoly, ctx: FieldCtx) -> list[FieldElem]:
    """All roots of p inside ctx, ascending by bit pattern.

    Factors of degree e > 1 are matched against the subfield of size 2^e,
    which is enumerated through a multiplicative generator; e is capped to
    keep that enumeration honest.
    """
    if not p:
        raise ValueError("zero polynomial")
    roots: set[int] = set()
    for q, _mult in factor(p):
        e = q.degree
        if e == 0 or ctx.degree % e:
            continue
        if e == 1:
            roots.add(q.bits & 1)
            continue
        if e > _ROOT_SUBFIELD_MAX_DEGREE:
            raise TooLarge(
                f"root search over a 2^{e} subfield exceeds the cap "
                f"{_ROOT_SUBFIELD_MAX_DEGREE}"
            )
        # subfield of size 2^e is generated by g^((2^d-1)/(2^e-1))
        step = (ctx.order - 1) // ((1 << e) - 1)
        sub_gen = ctx.pow(2, step)
        cand = 1
        for _ in range((1 << e) - 1):
            if not q.evaluate(FieldElem(ctx, cand)):
                roots.add(cand)
            cand = ctx.mul(cand, sub_gen)
    return [FieldElem(ctx, b) for b in sorted(roots)]
