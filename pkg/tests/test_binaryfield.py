import random

import pytest
from hypothesis import given, strategies as st

from tclab.binaryfield import (
    FieldElem,
    field_create,
    field_from_spec,
    field_spec,
    format_elem,
    least_irreducible,
    parse_elem,
    preset,
    preset_names,
)
from tclab.errors import CtxMismatch, ParseError, ReducibleModulus

DEGREES = [1, 2, 3, 5, 8, 13, 16]


@pytest.fixture(scope="module", params=DEGREES)
def ctx(request):
    return least_irreducible(request.param)


def elems(ctx, seed=0, count=40):
    rng = random.Random(seed)
    return [ctx.random_elem(rng) for _ in range(count)]


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        field_create(4, [4, 0])  # x^4 + 1 = (x+1)^4


def test_field_axioms(ctx):
    xs = elems(ctx)
    for a, b, c in zip(xs, xs[1:], xs[2:]):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a + a == ctx.zero
    one = ctx.one
    for a in xs:
        assert a * one == a
        if a:
            assert a * a.inv() == one
            assert a / a == one


def test_frobenius_and_sqrt_are_inverse(ctx):
    for a in elems(ctx, seed=1):
        sq = a * a
        assert a.frobenius() == sq
        assert sq.sqrt() == a
        assert a.sqrt().frobenius() == a
        # additivity of squaring
    xs = elems(ctx, seed=2)
    for a, b in zip(xs, xs[1:]):
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()


def test_pow_edge_cases(ctx):
    a = ctx.gen if ctx.degree > 1 else ctx.one
    assert a ** 0 == ctx.one
    assert ctx.zero ** 5 == ctx.zero
    assert ctx.zero ** 0 == ctx.one
    # multiplicative order divides 2^d - 1
    assert a ** (ctx.order - 1) == ctx.one
    k = 7
    assert a ** k * a ** (ctx.order - 1 - k) == ctx.one


def test_pow_matches_repeated_multiplication(ctx):
    rng = random.Random(3)
    for _ in range(10):
        a = ctx.random_elem(rng)
        k = rng.randrange(0, 200)
        acc = ctx.one
        for _ in range(k):
            acc = acc * a
        assert a ** k == acc


def test_pow_dyadic_quarters(ctx):
    from fractions import Fraction

    rng = random.Random(4)
    for _ in range(8):
        a = ctx.random_elem(rng)
        q = a.pow_dyadic(Fraction(1, 4))
        assert q ** 4 == a


def test_primitive_element_generates(ctx):
    if ctx.degree > 13:
        pytest.skip("table too large for a unit test")
    g = ctx.primitive_element()
    seen = set()
    x = ctx.one
    for _ in range(ctx.order - 1):
        seen.add(x.bits)
        x = x * g
    assert len(seen) == ctx.order - 1


def test_parse_format_round_trip(ctx):
    for style in ("symbolic", "exponents"):
        for a in elems(ctx, seed=5, count=15):
            assert parse_elem(format_elem(a, style), ctx) == a


def test_parse_rejects_garbage():
    ctx = least_irreducible(4)
    for bad in ("", "a^", "b+1", "a**2", "2a"):
        with pytest.raises(ParseError):
            parse_elem(bad, ctx)


def test_spec_round_trip(ctx):
    assert field_from_spec(field_spec(ctx)) == ctx


def test_presets_resolve():
    names = preset_names()
    assert "t2-d1" in names and "t2-d74" in names
    for name in names:
        c = preset(name)
        assert c.order >= 2


def test_ctx_mismatch_raises():
    a = least_irreducible(2).one
    b = least_irreducible(3).one
    with pytest.raises(CtxMismatch):
        _ = a + b


@given(st.integers(1, 12), st.integers(0, 2**12 - 1), st.integers(0, 2**12 - 1))
def test_mul_commutes_and_reduces(d, x, y):
    ctx = least_irreducible(d)
    x &= ctx.order - 1
    y &= ctx.order - 1
    xy = ctx.mul(x, y)
    assert xy == ctx.mul(y, x)
    assert xy < ctx.order
    assert ctx.mul(x, x) == ctx.sq(x)


@given(st.integers(1, 12), st.integers(1, 2**12 - 1))
def test_inverse_via_hypothesis(d, x):
    ctx = least_irreducible(d)
    x &= ctx.order - 1
    if x == 0:
        x = 1
    assert ctx.mul(x, ctx.inv(x)) == 1


def test_conjugates_and_trace():
    ctx = least_irreducible(6)
    rng = random.Random(8)
    for _ in range(5):
        a = ctx.random_elem(rng)
        conj = a.conjugates()
        assert len(conj) == 6
        assert conj[0] == a
        s = ctx.zero
        for c in conj:
            s = s + c
        assert s.bits == a.trace()
        assert a.trace() in (0, 1)


def test_elem_repr_is_parseable():
    ctx = least_irreducible(5)
    a = ctx.from_exponents([3, 1, 0])
    assert isinstance(a, FieldElem)
    assert parse_elem(format_elem(a), ctx) == a
