import math

import pytest
from hypothesis import given, strategies as st

from tclab.parity import (
    RegionPoint,
    binom_odd,
    cover_check,
    region_points,
    tiling_check,
    triangle_pred,
)

# ground truth for the full-region scan, found once and pinned; every
# violating point sits on the line i = Q - 1 and fails k = 1 (mod 4)
KNOWN_VIOLATIONS = {
    1: [],
    2: [(7, 3)],
    3: [(31, 11), (31, 15)],
    4: [(127, 43), (127, 47), (127, 63)],
    5: [(511, 171), (511, 175), (511, 191), (511, 255)],
}
KNOWN_COUNTS = {1: 0, 2: 3, 3: 45, 4: 693, 5: 10965}


def test_binom_odd_small_table():
    for n in range(12):
        for r in range(12):
            assert binom_odd(n, r) == (math.comb(n, r) % 2 == 1)


def test_binom_odd_rejects_negative():
    with pytest.raises(ValueError):
        binom_odd(-1, 0)
    with pytest.raises(ValueError):
        binom_odd(3, -2)


@given(st.integers(0, 10**9), st.integers(0, 10**9))
def test_binom_odd_is_submask_rule(n, r):
    assert binom_odd(n, r) == ((r & n) == r)


def test_region_counts_frozen():
    for ell, count in KNOWN_COUNTS.items():
        assert sum(1 for _ in region_points(ell)) == count


def test_region_point_derived_coordinates():
    for pt in region_points(3):
        i, a, j, b, k = pt.as_tuple()
        assert 2 * i + 2 * j + k == 6 * pt.Q - 5
        assert k == 3 * a - i + 1
        assert (i + a) % 2 == 0
        assert j == (6 * pt.Q - 6 - 3 * a - i) // 2
        assert b == (4 * pt.Q - 2 + a - i) // 2
        assert pt.admissible == (k % 4 == 1 and i < j)


@pytest.mark.parametrize("ell", [1, 2, 3, 4, 5])
def test_tiling_known_violations(ell):
    rep = tiling_check(ell)
    assert rep.points_checked == KNOWN_COUNTS[ell]
    assert [(v.i, v.a) for v in rep.violations] == KNOWN_VIOLATIONS[ell]
    # none of the failures is admissible: all have k = 3 (mod 4)
    assert rep.admissible_violations == []
    for v in rep.violations:
        assert v.i == v.Q - 1
        assert v.k % 4 == 3
    assert rep.ok == (ell == 1)


def test_tiling_acap_is_inert():
    # the a-range upper bound cannot bite: rows above it satisfy b <= j
    # automatically, so no new violations can appear when it is lifted
    base = tiling_check(3)
    lifted = tiling_check(3, a_cap=64)  # four times the natural bound
    assert [(v.i, v.a) for v in lifted.violations] == [
        (v.i, v.a) for v in base.violations
    ]


def test_tiling_islack_falsifies():
    # widening rows leftward is the control that genuinely breaks the claim
    rep = tiling_check(2, i_slack=1)
    got = {(v.i, v.a) for v in rep.violations}
    assert got == {(6, 2), (3, 3), (7, 3)}


def test_tiling_parallel_matches_serial():
    ser = tiling_check(5)
    par = tiling_check(5, jobs=2)
    assert ser.to_json() == par.to_json()


def test_triangle_pred_membership():
    # t = 0 collapses the strip to nothing
    assert not triangle_pred(1, 0, 0, 5, 3)
    # s=1, t=2: 4 <= n < 7, and the u=0 cell wants n+1-4 <= r < 4
    assert triangle_pred(1, 2, 0, 4, 1)
    assert triangle_pred(1, 2, 0, 5, 3)
    assert not triangle_pred(1, 2, 0, 7, 1)
    assert not triangle_pred(1, 2, 0, 4, 4)


@given(st.integers(1, 7), st.integers(0, 3), st.integers(0, 7), st.integers(0, 300),
       st.integers(0, 300))
def test_triangle_pred_forces_even_binomials(s, t, u, n, r):
    # interior strip cells are exactly where Lucas gives an even value
    if triangle_pred(s, t, u, n, r) and 0 <= r <= n:
        assert not binom_odd(n, r)


@pytest.mark.parametrize("ell", [2, 3, 4])
def test_cover_structure(ell):
    rep = cover_check(ell)
    # strip interiors are clean and the strips stay inside the region
    assert rep.ia_strip_violations == []
    assert rep.ia_strip_outside == []
    assert rep.jb_strip_violations == []
    # with the closing line at i = Q - 1 every region point is covered
    assert rep.uncovered == []
    assert rep.covered
    # the alternative closing line misses the whole i = Q - 1 line
    line_count = {2: 1, 3: 3, 4: 11, 5: 43}[ell]
    assert rep.extra_line_points == line_count
    assert len(rep.uncovered_alt) == line_count
    assert all(p.i == p.Q - 1 for p in rep.uncovered_alt)
    # extra-line failures coincide with the global violations
    assert {(p.i, p.a) for p in rep.extra_line_violations} == set(
        KNOWN_VIOLATIONS[ell]
    )
    assert not rep.parity_ok


def test_region_point_is_hashable_value_object():
    p = RegionPoint(7, 3, 2)
    assert p == RegionPoint(7, 3, 2)
    assert len({p, RegionPoint(7, 3, 2)}) == 1
