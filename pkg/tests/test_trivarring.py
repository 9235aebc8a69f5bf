import random

import pytest
from hypothesis import given, settings, strategies as st

from tclab.binaryfield import least_irreducible
from tclab.errors import BadIndex, BadQ, DegreeMismatch
from tclab.trivarring import (
    BracketSpec,
    TriPoly,
    ax_poly,
    ay_poly,
    bracket,
    check_line_power,
    graded_basis,
    h_poly,
    pack,
    socle_triple,
    to_vector,
    u_basis,
    unpack,
    variables,
    w0_generators,
    w_generators,
    wprime_generators,
)

F2 = least_irreducible(1)
F4 = least_irreducible(2)


def rand_poly(ctx, rng, nterms=6, emax=10):
    terms = {}
    for _ in range(nterms):
        t = (rng.randrange(emax), rng.randrange(emax), rng.randrange(emax))
        terms[t] = ctx.random_elem(rng).bits
    return TriPoly.from_terms(ctx, terms.items())


@given(st.integers(0, 2**21 - 1), st.integers(0, 2**21 - 1), st.integers(0, 2**21 - 1))
def test_pack_unpack_round_trip(ex, ey, ez):
    assert unpack(pack(ex, ey, ez)) == (ex, ey, ez)


def test_addition_is_cancelling():
    x, y, z = variables(F2)
    assert (x + x).terms == {}
    assert (x + y) + (y + z) == x + z


def test_mul_commutes_and_distributes():
    rng = random.Random(0)
    for _ in range(10):
        f, g, h = (rand_poly(F4, rng) for _ in range(3))
        assert f.mul(g) == g.mul(f)
        assert f.mul(g + h) == f.mul(g) + f.mul(h)
        assert f.mul(g.mul(h)) == f.mul(g).mul(h)


def test_truncation_commutes_with_product():
    rng = random.Random(1)
    B = 8
    for _ in range(20):
        f, g = rand_poly(F4, rng, emax=14), rand_poly(F4, rng, emax=14)
        bounded = f.mul(g, bound=B)
        # reference: drop big exponents from the unbounded product
        ref_terms = [
            (t, c)
            for t, c in f.mul(g).iter_terms()
            if max(t) < B
        ]
        assert bounded == TriPoly.from_terms(F4, ref_terms)


def test_sq_matches_self_mul():
    rng = random.Random(2)
    for _ in range(10):
        f = rand_poly(F4, rng)
        assert f.sq() == f.mul(f)
        assert f.sq(bound=6) == f.mul(f, bound=6)


def test_pow_trunc_matches_iterated_mul():
    rng = random.Random(3)
    f = rand_poly(F4, rng, nterms=3, emax=3)
    B = 16
    acc = TriPoly.monomial(F4, (0, 0, 0))
    for k in range(6):
        assert f.pow_trunc(k, B) == acc
        acc = acc.mul(f, bound=B)


def test_degree_and_homogeneity():
    x, y, z = variables(F2)
    assert ax_poly(F2).degree() == 2
    assert h_poly(F2.one).degree() == 4
    assert x.mul(y).degree() == 2
    mixed = x + x.mul(y)
    assert not mixed.is_homogeneous()
    with pytest.raises(DegreeMismatch):
        mixed.degree()


def test_h_poly_alpha_zero_drops_z4():
    h = h_poly(F2.zero)
    assert h == ax_poly(F2).mul(ay_poly(F2))


def test_bracket_symmetry_and_diagonal():
    assert bracket(F4, 2, 5) == bracket(F4, 5, 2)
    assert bracket(F4, 3, 3).terms == {}
    with pytest.raises(BadIndex):
        bracket(F4, -1, 2)


def test_bracket_matches_definition():
    ax, ay = ax_poly(F4), ay_poly(F4)
    direct = ax.mul(ax).mul(ay) + ay.mul(ay).mul(ax)  # [2,1]
    assert bracket(F4, 2, 1) == direct


def test_check_line_power():
    assert [check_line_power(q) for q in (2, 8, 32, 128)] == [1, 2, 3, 4]
    for bad in (1, 4, 16, 3, 0):
        with pytest.raises(BadQ):
            check_line_power(bad)


@pytest.mark.parametrize("Q", [2, 8])
def test_generator_families_are_homogeneous(Q):
    for spec in w_generators(Q):
        assert spec.degree == 6 * Q - 5
        p = spec.to_poly(F2)
        # the special bracket [0, Q-2] vanishes identically at Q = 2
        if p:
            assert p.is_homogeneous() and p.degree() == 6 * Q - 5
    for spec in wprime_generators(Q):
        assert spec.degree == 6 * Q - 1
    # W0 is W minus the j = 2Q-1 column, special generator kept
    w = {(s.i, s.j, s.k) for s in w_generators(Q)}
    w0 = {(s.i, s.j, s.k) for s in w0_generators(Q)}
    assert w0 <= w
    dropped = w - w0
    assert all(j == 2 * Q - 1 for _, j, _ in dropped)
    assert any(s.special for s in w0_generators(Q))


@pytest.mark.parametrize("Q", [2, 8, 32])
def test_generator_counts(Q):
    # the j = 2Q-1 column dropped on the way to W0 holds exactly Q/2 brackets
    n_w = len(w_generators(Q))
    n_w0 = len(w0_generators(Q))
    n_wp = len(wprime_generators(Q))
    assert n_w - n_w0 == Q // 2
    assert n_wp == n_w
    if Q == 2:
        assert (n_w, n_w0, n_wp) == (4, 3, 4)
    if Q == 8:
        assert (n_w, n_w0, n_wp) == (49, 45, 49)


def test_u_basis_validation_and_degrees():
    for Q in (2, 8):
        for i in range(1, Q, 2):
            u = u_basis(Q, i, F2)
            assert u.degree() == 6 * Q - 5
        with pytest.raises(BadIndex):
            u_basis(Q, 2, F2)
        with pytest.raises(BadIndex):
            u_basis(Q, Q + 1, F2)


def test_graded_basis_dims():
    # degree-d monomials in three variables, all exponents < B
    import itertools

    for deg, bound in ((4, 8), (10, 4), (0, 2), (21, 8)):
        ref = sum(
            1
            for a, b in itertools.product(range(bound), repeat=2)
            if 0 <= deg - a - b < bound
        )
        assert graded_basis(deg, bound).dim == ref


def test_to_vector_round_trip():
    rng = random.Random(4)
    basis = graded_basis(6, 8)
    terms = [
        (basis.triples[i], 1)
        for i in rng.sample(range(basis.dim), 5)
    ]
    p = TriPoly.from_terms(F4, terms)
    vec = to_vector(p, basis)
    assert sum(1 for v in vec if v) == 5
    with pytest.raises(DegreeMismatch):
        to_vector(TriPoly.monomial(F4, (9, 9, 9)), basis)


def test_socle_triple():
    assert socle_triple(2) == (7, 7, 7)
    assert socle_triple(8) == (31, 31, 31)
