"""Finite fields of characteristic 2 with an explicit modulus.

A FieldCtx pins one presentation F_2[a]/(m(a)); elements are coefficient
bit-vectors packed little-endian into ints, so addition is XOR and
multiplication is a carryless product followed by reduction.  Contexts
are immutable and hash/compare by (degree, modulus), which makes mixing
presentations of the same abstract field an explicit, checked act.

Element text forms accepted by parse_elem:

* ``"0"`` and ``"1"`` - the constants;
* ``"11,9,7"`` - exponent list, i.e. a^11+a^9+a^7 (a trailing comma is
  allowed, and is how single-term elements round-trip: ``"5,"``);
* ``"a^11+a^9+1"`` - symbolic, with ``α`` accepted as an alias of ``a``.

Field-spec strings look like ``"d:13;mod:13,4,3,1,0"``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from . import _gf2poly as gp
from .errors import CtxMismatch, DegreeMismatch, ParseError, ReducibleModulus

__all__ = [
    "FieldCtx",
    "FieldElem",
    "field_create",
    "field_from_spec",
    "field_spec",
    "parse_elem",
    "format_elem",
    "preset",
    "preset_names",
    "least_irreducible",
    "PRESET_MODULI",
]

_TABLE_DEGREE_MAX = 16


class FieldCtx:
    """One presentation of GF(2^degree).  Safe to share; never mutated."""

    __slots__ = ("degree", "modulus", "_logexp")

    def __init__(self, degree: int, modulus: int, _checked: bool = False):
        if not _checked:
            raise TypeError("use field_create() or field_from_spec()")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "_logexp", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("FieldCtx is immutable")

    # identity

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self.degree == other.degree
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.degree, self.modulus))

    def __repr__(self):
        return f"FieldCtx({field_spec(self)!r})"

    @property
    def order(self) -> int:
        return 1 << self.degree

    # raw bit-vector arithmetic

    def reduce(self, bits: int) -> int:
        return gp.mod(bits, self.modulus)

    def mul(self, a: int, b: int) -> int:
        return gp.mod(gp.mul(a, b), self.modulus)

    def sq(self, a: int) -> int:
        return gp.sqmod(a, self.modulus)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        # a^(2^d - 2); modulus irreducibility makes every nonzero unit
        return self.pow(a, self.order - 2)

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        r = self.order - 1
        k %= r
        out = 1
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.sq(a)
            k >>= 1
        return out

    def sqrt(self, a: int) -> int:
        for _ in range(self.degree - 1):
            a = self.sq(a)
        return a

    # element constructors

    def elem(self, bits: int) -> "FieldElem":
        return FieldElem(self, self.reduce(bits))

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1 if self.degree > 0 else 0)

    @property
    def gen(self) -> "FieldElem":
        return self.elem(2)

    def from_exponents(self, exps: Iterable[int]) -> "FieldElem":
        bits = 0
        for e in exps:
            if e < 0:
                raise ValueError("negative exponent")
            bits ^= gp.powmod(2, e, self.modulus)
        return FieldElem(self, bits)

    def random_elem(self, rng) -> "FieldElem":
        return FieldElem(self, rng.getrandbits(self.degree))

    def elements(self):
        """All field elements, ascending by bit pattern."""
        for bits in range(self.order):
            yield FieldElem(self, bits)

    # discrete-log tables, built lazily; only small fields qualify

    def primitive_element(self) -> "FieldElem":
        """Least bit pattern generating the full multiplicative group."""
        r = self.order - 1
        primes = gp._small_prime_factors(r) if r > 1 else []
        cand = 1 if r == 1 else 2
        while True:
            if all(self.pow(cand, r // p) != 1 for p in primes):
                return FieldElem(self, cand)
            cand += 1

    def logexp_tables(self) -> tuple[list[int], list[int]]:
        """(log, exp) w.r.t. a primitive element, exp doubled in length so
        exp[log[a]+log[b]] works without a modular reduction.

        log[0] is a sentinel (an index never produced for products of
        nonzero elements); callers must handle zero first.
        """
        if self.degree > _TABLE_DEGREE_MAX:
            raise DegreeMismatch(
                f"log tables capped at degree {_TABLE_DEGREE_MAX}, got {self.degree}"
            )
        cached = self._logexp
        if cached is not None:
            return cached
        r = self.order - 1
        g = self.primitive_element().bits
        log = [0] * self.order
        exp = [1] * max(2 * r, 1)
        t = 1
        for i in range(r):
            exp[i] = t
            exp[i + r] = t
            log[t] = i
            t = self.mul(t, g)
        if t != 1 or 0 in exp:
            raise ReducibleModulus("generator fails to cycle; modulus not irreducible")
        log[0] = 2 * r  # out-of-band marker
        tables = (log, exp)
        object.__setattr__(self, "_logexp", tables)
        return tables


class FieldElem:
    """Element of a specific FieldCtx.  Immutable value object."""

    __slots__ = ("ctx", "bits")

    def __init__(self, ctx: FieldCtx, bits: int):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("FieldElem is immutable")

    def _same(self, other: "FieldElem") -> None:
        if self.ctx != other.ctx:
            raise CtxMismatch(
                f"operands in different fields: {field_spec(self.ctx)} vs {field_spec(other.ctx)}"
            )

    def __add__(self, other):
        if not isinstance(other, FieldElem):
            return NotImplemented
        self._same(other)
        return FieldElem(self.ctx, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other):
        if not isinstance(other, FieldElem):
            return NotImplemented
        self._same(other)
        return FieldElem(self.ctx, self.ctx.mul(self.bits, other.bits))

    def __truediv__(self, other):
        if not isinstance(other, FieldElem):
            return NotImplemented
        self._same(other)
        return FieldElem(self.ctx, self.ctx.mul(self.bits, self.ctx.inv(other.bits)))

    def __pow__(self, k: int):
        return FieldElem(self.ctx, self.ctx.pow(self.bits, k))

    def __eq__(self, other):
        return (
            isinstance(other, FieldElem)
            and self.ctx == other.ctx
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.ctx, self.bits))

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return f"FieldElem({format_elem(self)!r}, d={self.ctx.degree})"

    def inv(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.bits))

    def sqrt(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.sqrt(self.bits))

    def frobenius(self, k: int = 1) -> "FieldElem":
        """a -> a^(2^k); k may be negative (inverse Frobenius)."""
        out = self.bits
        for _ in range(k % self.ctx.degree):
            out = self.ctx.sq(out)
        return FieldElem(self.ctx, out)

    def pow_dyadic(self, q: Union[int, Fraction]) -> "FieldElem":
        """a^q for q an integer or fractional power of two."""
        q = Fraction(q)
        num, den = q.numerator, q.denominator
        if num <= 0 or num & (num - 1) or den & (den - 1):
            raise ValueError(f"exponent {q} is not a positive power of two")
        k = num.bit_length() - den.bit_length()
        return self.frobenius(k)

    def trace(self) -> int:
        t = 0
        a = self.bits
        for _ in range(self.ctx.degree):
            t ^= a
            a = self.ctx.sq(a)
        return t  # lands in {0, 1}

    def conjugates(self) -> list["FieldElem"]:
        out = []
        a = self.bits
        for _ in range(self.ctx.degree):
            out.append(FieldElem(self.ctx, a))
            a = self.ctx.sq(a)
        return out


# construction and text forms


def field_create(degree: int, modulus: Union[int, Iterable[int]]) -> FieldCtx:
    if not isinstance(modulus, int):
        modulus = gp.from_exponents(modulus)
    if degree < 1:
        raise DegreeMismatch(f"degree must be positive, got {degree}")
    if gp.deg(modulus) != degree:
        raise DegreeMismatch(
            f"modulus has degree {gp.deg(modulus)}, expected {degree}"
        )
    if not gp.is_irreducible(modulus):
        raise ReducibleModulus(f"modulus {sorted(gp.to_exponents(modulus))} is reducible")
    return FieldCtx(degree, modulus, _checked=True)


def field_spec(ctx: FieldCtx) -> str:
    exps = ",".join(str(e) for e in gp.to_exponents(ctx.modulus))
    return f"d:{ctx.degree};mod:{exps}"


def field_from_spec(s: str) -> FieldCtx:
    parts = dict()
    for chunk in s.strip().split(";"):
        if ":" not in chunk:
            raise ParseError(f"bad field spec chunk {chunk!r}")
        key, _, val = chunk.partition(":")
        parts[key.strip()] = val.strip()
    if set(parts) != {"d", "mod"}:
        raise ParseError(f"field spec needs exactly d: and mod:, got {sorted(parts)}")
    try:
        degree = int(parts["d"])
        exps = [int(tok) for tok in parts["mod"].split(",") if tok.strip()]
    except ValueError as exc:
        raise ParseError(f"unparseable field spec {s!r}") from exc
    return field_create(degree, exps)


_SYM_TERM = re.compile(r"^(?:(1)|(0)|(?:a)(?:\^\{?(\d+)\}?)?)$")


def parse_elem(s: str, ctx: FieldCtx) -> FieldElem:
    text = s.replace("α", "a").replace(" ", "")
    if not text:
        raise ParseError("empty element string")
    if text == "0":
        return ctx.zero
    if text == "1":
        return ctx.one
    if re.fullmatch(r"[\d,]+", text):
        if "," not in text:
            raise ParseError(
                f"{text!r} is ambiguous: use 'a^{text}' or '{text},' for a power, "
                "'0'/'1' for constants"
            )
        exps = [int(tok) for tok in text.split(",") if tok]
        return ctx.from_exponents(exps)
    exps = []
    for term in text.split("+"):
        m = _SYM_TERM.match(term)
        if not m:
            raise ParseError(f"bad term {term!r} in element {s!r}")
        if m.group(2):
            continue
        if m.group(1):
            exps.append(0)
        elif m.group(3) is not None:
            exps.append(int(m.group(3)))
        else:
            exps.append(1)
    return ctx.from_exponents(exps)


def format_elem(e: FieldElem, style: str = "symbolic") -> str:
    exps = gp.to_exponents(e.bits)
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
        if k == 0:
            terms.append("1")
        elif k == 1:
            terms.append("a")
        else:
            terms.append(f"a^{k}")
    return "+".join(terms)


# Preset catalog: every distinct modulus used by the built-in escape table,
# keyed by extension degree.
PRESET_MODULI: dict[str, tuple[int, tuple[int, ...]]] = {
    "t2-d1": (1, (1, 0)),
    "t2-d2": (2, (2, 1, 0)),
    "t2-d3": (3, (3, 1, 0)),
    "t2-d5": (5, (5, 2, 0)),
    "t2-d7": (7, (7, 1, 0)),
    "t2-d10": (10, (10, 6, 5, 3, 2, 1, 0)),
    "t2-d11": (11, (11, 2, 0)),
    "t2-d12": (12, (12, 7, 6, 5, 3, 1, 0)),
    "t2-d13": (13, (13, 4, 3, 1, 0)),
    "t2-d14": (14, (14, 7, 5, 3, 0)),
    "t2-d15": (15, (15, 5, 4, 2, 0)),
    "t2-d20": (20, (20, 10, 9, 7, 6, 5, 4, 1, 0)),
    "t2-d74": (74, (74, 37, 36, 35, 34, 33, 32, 31, 30, 29, 28, 27, 26, 24,
                    21, 17, 16, 13, 12, 11, 8, 3, 0)),
}


def preset_names() -> list[str]:
    return sorted(PRESET_MODULI, key=lambda n: PRESET_MODULI[n][0])


@lru_cache(maxsize=None)
def preset(name: str) -> FieldCtx:
    try:
        degree, exps = PRESET_MODULI[name]
    except KeyError:
        raise ParseError(f"unknown preset {name!r}; have {preset_names()}") from None
    return field_create(degree, exps)


@lru_cache(maxsize=None)
def least_irreducible(degree: int) -> FieldCtx:
    """Context with the lexicographically least irreducible modulus."""
    if degree < 1:
        raise DegreeMismatch("degree must be positive")
    top = 1 << degree
    for low in range(1, top, 2):
        if gp.is_irreducible(top | low):
            return FieldCtx(degree, top | low, _checked=True)
    raise RuntimeError("unreachable: irreducibles exist in every degree")
