import random

import pytest

from tclab.binaryfield import least_irreducible
from tclab.dynamics import ell_of
from tclab.errors import BadPoint, TooLarge
from tclab.hilbertkunz import (
    en,
    en_full_oracle,
    en_generic,
    hk_formula,
    random_generic_points,
)

F2 = least_irreducible(1)

# colengths at the alpha = 1 specialization, computed once and pinned;
# n = 3 departs from the generic 188 because 1 has finite escape time
EN_AT_ONE = {1: 8, 2: 44, 3: 196}


def test_formula_values():
    assert [hk_formula(n) for n in range(1, 6)] == [8, 44, 188, 764, 3068]


def test_e1_is_degree_free():
    # the quartic cannot reach degree 3, so every alpha gives 8
    for alpha in (F2.zero, F2.one):
        assert en(1, alpha).e_n == 8
    ctx = least_irreducible(5)
    assert en(1, ctx.gen).e_n == 8


@pytest.mark.parametrize("n", [1, 2, 3])
def test_en_at_alpha_one(n):
    res = en(n, F2.one)
    assert res.e_n == EN_AT_ONE[n]
    assert res.matches_formula == (n <= 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_en_generic_small(n):
    pts = random_generic_points(2, seed=0)
    res = en_generic(n, pts)
    assert res.e_n == hk_formula(n)
    assert res.agree
    assert res.matches_formula


@pytest.mark.parametrize("n", [1, 2, 3])
def test_blocked_vs_full_oracle(n):
    pts = random_generic_points(1, seed=3)
    blocked = en(n, pts[0]).e_n
    full = en_full_oracle(n, pts[0])
    assert blocked == full
    one_blocked = en(n, F2.one).e_n
    one_full = en_full_oracle(n, F2.one)
    assert one_blocked == one_full


def test_swap_xy_invariance():
    pts = random_generic_points(1, seed=5)
    for alpha in (F2.one, pts[0]):
        assert en(2, alpha, swap_xy=True).e_n == en(2, alpha).e_n


def test_generic_points_are_infinite_escape():
    pts = random_generic_points(4, seed=1)
    assert len(pts) == 4
    for p in pts:
        assert p.bits != 0
        assert ell_of(p) is None


def test_generic_rejects_bad_points():
    with pytest.raises(BadPoint):
        en_generic(2, [F2.zero])
    with pytest.raises(BadPoint):
        en_generic(2, [F2.one])  # finite escape time


def test_blocks_shape():
    res = en(2, F2.one)
    # block degrees run from 4 (the quartic) to 3(B-1)
    assert min(res.blocks) == 4
    assert max(res.blocks) == 9
    for deg, (r, rows, cols) in res.blocks.items():
        assert 0 <= r <= min(rows, cols)


def test_guards():
    with pytest.raises(TooLarge):
        en(6, F2.one)
    with pytest.raises(TooLarge):
        en(7, F2.one, force=True)


def test_jobs_threading_matches_serial():
    pts = random_generic_points(1, seed=7)
    assert en(3, pts[0], jobs=2).e_n == en(3, pts[0]).e_n


def test_result_json_shape():
    res = en(2, F2.one)
    d = res.to_json()
    assert d["n"] == 2 and d["e_n"] == 44
    assert d["formula_value"] == 44 and d["match"]
    assert set(d["blocks"]) == {str(k) for k in res.blocks}


def test_random_points_deterministic_per_seed():
    a = random_generic_points(3, seed=11)
    b = random_generic_points(3, seed=11)
    assert [p.bits for p in a] == [p.bits for p in b]
    c = random_generic_points(3, seed=12)
    assert [p.bits for p in a] != [p.bits for p in c]
