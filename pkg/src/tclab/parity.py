"""Binomial parity by the bitwise Lucas rule, and brute-force audits of
the Sierpinski-triangle covering behind the key parity claim.

The claim: for every integer point of the region

    2^(2l) - 2 - 3a <= i <= 3a + 1,   a <= 2^(2l-2) - 1,   i == a (mod 2)

the product C(i,a) * C(j,b) is even, where Q = 2^(2l-1) and

    j = (6Q - 6 - 3a - i) / 2,   b = (4Q - 2 + a - i) / 2.

tiling_check tests this pointwise; it is the ground truth.  cover_check
retraces the covering argument (triangle strips, trapezoids, one extra
line) and reports anything that does not close as data rather than
asserting it, because the bookkeeping of the argument and the pointwise
truth need not coincide.

Everything here is pure integer arithmetic.  Binomials are never
expanded: C(n,r) is odd iff r AND n == r, and the big-integer
cross-check lives in the tests only, since regions reach millions of
points.
"""
from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field
from typing import Iterator, Optional

__all__ = [
    "binom_odd",
    "RegionPoint",
    "region_points",
    "TilingReport",
    "tiling_check",
    "triangle_pred",
    "extra_line_check",
    "CoverReport",
    "cover_check",
]


def binom_odd(n: int, r: int) -> bool:
    """Parity of C(n, r): odd iff every binary digit of r fits inside n."""
    if n < 0 or r < 0:
        raise ValueError("binom_odd wants nonnegative arguments")
    return r & n == r


@dataclass(frozen=True)
class RegionPoint:
    """A lattice point (i, a) of the level-l region, with derived data."""

    i: int
    a: int
    ell: int

    @property
    def Q(self) -> int:
        return 1 << (2 * self.ell - 1)

    @property
    def j(self) -> int:
        return (6 * self.Q - 6 - 3 * self.a - self.i) // 2

    @property
    def b(self) -> int:
        return (4 * self.Q - 2 + self.a - self.i) // 2

    @property
    def k(self) -> int:
        # 6Q - 5 - 2i - 2j collapses to this
        return 3 * self.a - self.i + 1

    @property
    def admissible(self) -> bool:
        """Whether (i, j, k) indexes an actual bracket generator:
        z-exponent k = 1 mod 4 (equivalently i + j odd) and i < j."""
        return self.k % 4 == 1 and self.i < self.j

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.i, self.a, self.j, self.b, self.k)


def _row_bounds(ell: int, a: int, i_slack: int = 0) -> tuple[int, int]:
    """Inclusive i-range of row a, parity-aligned, empty if lo > hi."""
    lo = (1 << (2 * ell)) - 2 - 3 * a - 2 * i_slack
    if lo < 0:
        lo = 0
    if (lo ^ a) & 1:
        lo += 1
    return lo, 3 * a + 1


def region_points(
    ell: int, a_cap: Optional[int] = None, i_slack: int = 0
) -> Iterator[RegionPoint]:
    """The region's points, row-major: a ascending, then i ascending.

    The mutation knobs exist for deliberate-falsification runs.  a_cap
    overrides the upper bound on a (default 2^(2l-2) - 1); note that
    rows beyond the true cap have b > j, so the product is trivially
    even there and no violation can appear that way.  i_slack lowers the
    left edge of each row by 2*i_slack, which does break the claim.
    Points whose derived j or b would be negative are never emitted
    (only possible under mutation).
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    if a_cap is None:
        a_cap = (1 << (2 * ell - 2)) - 1
    Q = 1 << (2 * ell - 1)
    for a in range(a_cap + 1):
        lo, hi = _row_bounds(ell, a, i_slack)
        for i in range(lo, hi + 1, 2):
            if 6 * Q - 6 - 3 * a - i < 0 or 4 * Q - 2 + a - i < 0:
                continue
            yield RegionPoint(i, a, ell)


@dataclass
class TilingReport:
    ell: int
    points_checked: int
    violations: list[RegionPoint]
    admissible_violations: list[RegionPoint] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "points_checked": self.points_checked,
            "violations": [p.as_tuple() for p in self.violations],
            "admissible_violations": [p.as_tuple() for p in self.admissible_violations],
        }


def _tiling_strip(
    ell: int, a_lo: int, a_hi: int, i_slack: int = 0
) -> tuple[int, list[tuple[int, int]]]:
    """Scan rows a_lo..a_hi; return (points counted, odd-odd pairs)."""
    Q = 1 << (2 * ell - 1)
    count = 0
    bad: list[tuple[int, int]] = []
    for a in range(a_lo, a_hi + 1):
        lo, hi = _row_bounds(ell, a, i_slack)
        for i in range(lo, hi + 1, 2):
            jj = 6 * Q - 6 - 3 * a - i
            bb = 4 * Q - 2 + a - i
            if jj < 0 or bb < 0:
                continue
            count += 1
            if a & i == a:
                j, b = jj >> 1, bb >> 1
                if b & j == b:
                    bad.append((i, a))
    return count, bad


def tiling_check(
    ell: int, a_cap: Optional[int] = None, i_slack: int = 0, jobs: int = 1
) -> TilingReport:
    """Exhaustively test evenness of C(i,a)C(j,b) over the region.

    Rows are split into a-strips; jobs > 1 fans the strips out to worker
    processes.  Output is deterministic either way.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    if a_cap is None:
        a_cap = (1 << (2 * ell - 2)) - 1
    if jobs < 2 or a_cap < 64:
        total, bad = _tiling_strip(ell, 0, a_cap, i_slack)
    else:
        step = max(64, (a_cap + jobs) // jobs)
        strips = [(a, min(a + step - 1, a_cap)) for a in range(0, a_cap + 1, step)]
        total, bad = 0, []
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [
                pool.submit(_tiling_strip, ell, lo, hi, i_slack) for lo, hi in strips
            ]
            for fut in futs:
                c, b = fut.result()
                total += c
                bad.extend(b)
    points = [RegionPoint(i, a, ell) for i, a in bad]
    return TilingReport(
        ell=ell,
        points_checked=total,
        violations=points,
        admissible_violations=[p for p in points if p.admissible],
    )


def triangle_pred(s: int, t: int, u: int, n: int, r: int) -> bool:
    """The hypothesis region under which C(n, r) is asserted even:
    s*2^t <= n < (s+1)*2^t - 1 and n + 1 - (s-u)*2^t <= r < (u+1)*2^t.

    With t = 0 the n-range is empty, so the predicate is always false.
    """
    if min(s, t, u, n, r) < 0:
        raise ValueError("triangle_pred wants nonnegative arguments")
    p = 1 << t
    return s * p <= n < (s + 1) * p - 1 and n + 1 - (s - u) * p <= r < (u + 1) * p


def extra_line_check(ell: int) -> tuple[int, list[RegionPoint]]:
    """On the line i = Q - 1: C(j,b) claimed even for every region row a.

    Returns (points checked, counterexamples).  Independent of any
    congruence bookkeeping: it just walks the admissible a.
    """
    Q = 1 << (2 * ell - 1)
    i = Q - 1
    checked = 0
    bad = []
    for a in range(1, Q >> 1, 2):  # i is odd, so a must be odd too
        lo, hi = _row_bounds(ell, a)
        if not lo <= i <= hi:
            continue
        checked += 1
        pt = RegionPoint(i, a, ell)
        if binom_odd(pt.j, pt.b):
            bad.append(pt)
    return checked, bad


def _strip_q(ell: int, n: int) -> tuple[int, int, int, int, int]:
    """Window and triangle parameters (s, t, u) for the n-th i-strip."""
    t = 2 * (ell - n)
    s = (1 << (2 * n - 1)) - 1
    u = ((1 << (2 * n - 1)) - 2) // 3
    i_lo = s << t
    i_hi = (1 << (2 * ell - 1)) - 2
    return s, t, u, i_lo, i_hi


def _qn_points(ell: int, n: int) -> Iterator[tuple[int, int]]:
    """The n-th strip claimed to force C(i,a) even, clipped to i <= Q-2."""
    s, t, u, i_lo, i_hi = _strip_q(ell, n)
    a_hi_excl = ((1 << (2 * n - 1)) + 1) * (1 << (2 * (ell - n))) // 3
    shift = ((1 << (2 * n)) - 1) * (1 << (2 * (ell - n))) // 3
    for i in range(i_lo, i_hi + 1):
        for a in range(max(i + 1 - shift, 0), a_hi_excl):
            yield i, a


def _qpn_points(ell: int, n: int) -> Iterator[tuple[int, int]]:
    """The n-th strip claimed to force C(j,b) even; i == a (mod 2) only."""
    a_lo = ((1 << (2 * n + 1)) + 1) * (1 << (2 * (ell - n - 1))) // 3
    c = ((1 << (2 * n)) - 1) * (1 << (2 * (ell - n))) // 3
    upper = ((1 << (2 * n)) + 1) * (1 << (2 * (ell - n)))
    a_hi = (upper - 5 - c) // 4
    for a in range(a_lo, a_hi + 1):
        i_lo = a - 1 + c
        if (i_lo ^ a) & 1:
            i_lo += 1
        for i in range(max(i_lo, 0), upper - 3 * a - 5, 2):
            yield i, a


def _in_T(ell: int, i: int, a: int) -> bool:
    Q = 1 << (2 * ell - 1)
    a_lo = (Q + 1) // 3  # ceil((Q-1)/3); exact since Q = 2 mod 3
    return (2 * Q - 2 - 3 * a <= i <= Q - 2) and a_lo <= a <= (Q >> 1) - 1


def _in_Tprime(ell: int, i: int, a: int) -> bool:
    Q = 1 << (2 * ell - 1)
    return Q <= i <= 3 * a + 1 and a <= (Q >> 1) - 1


@dataclass
class CoverReport:
    """Audit of the covering argument at level l.

    ia_strip_violations: points of some strip where C(i,a) is odd.
    ia_strip_outside: strip points missed by their own triangle_pred
        parameters (bookkeeping drift, not a parity failure).
    jb_strip_violations: points of some transformed strip where C(j,b)
        is odd.
    extra_line_violations: counterexamples on the line i = Q-1.
    uncovered: region points outside T, T' and the line i = Q-1.
    uncovered_alt: ditto with the line i = 2^(2l-2) - 1 instead, the
        other candidate named by the argument.
    """

    ell: int
    strips: int
    ia_strip_points: int
    ia_strip_violations: list[tuple[int, int, int]]
    ia_strip_outside: list[tuple[int, int, int]]
    jb_strip_points: int
    jb_strip_violations: list[tuple[int, int, int]]
    extra_line_points: int
    extra_line_violations: list[RegionPoint]
    uncovered: list[RegionPoint]
    uncovered_alt: list[RegionPoint]

    @property
    def parity_ok(self) -> bool:
        return not (
            self.ia_strip_violations
            or self.jb_strip_violations
            or self.extra_line_violations
        )

    @property
    def covered(self) -> bool:
        return not self.uncovered

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "strips": self.strips,
            "ia_strip_points": self.ia_strip_points,
            "ia_strip_violations": self.ia_strip_violations,
            "ia_strip_outside": self.ia_strip_outside,
            "jb_strip_points": self.jb_strip_points,
            "jb_strip_violations": self.jb_strip_violations,
            "extra_line_points": self.extra_line_points,
            "extra_line_violations": [p.as_tuple() for p in self.extra_line_violations],
            "uncovered_points": [p.as_tuple() for p in self.uncovered],
            "uncovered_points_alt_line": [p.as_tuple() for p in self.uncovered_alt],
        }


def cover_check(ell: int) -> CoverReport:
    """Re-run every piece of the covering argument and report, not assert.

    Checks, for each strip n = 1 .. l-1: the C(i,a) parity claim on the
    i-strips (plus agreement with triangle_pred's parameters), and the
    C(j,b) parity claim on the transformed strips.  Then the extra-line
    claim, and finally that every region point lands in T, T', or a
    candidate line; both published candidates are tried.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    Q = 1 << (2 * ell - 1)

    ia_pts = 0
    ia_bad: list[tuple[int, int, int]] = []
    ia_out: list[tuple[int, int, int]] = []
    jb_pts = 0
    jb_bad: list[tuple[int, int, int]] = []
    for n in range(1, ell):
        s, t, u, _, _ = _strip_q(ell, n)
        for i, a in _qn_points(ell, n):
            ia_pts += 1
            if binom_odd(i, a):
                ia_bad.append((n, i, a))
            if not triangle_pred(s, t, u, i, a):
                ia_out.append((n, i, a))
        for i, a in _qpn_points(ell, n):
            jb_pts += 1
            jj = 6 * Q - 6 - 3 * a - i
            bb = 4 * Q - 2 + a - i
            if jj >= 0 and bb >= 0 and binom_odd(jj >> 1, bb >> 1):
                jb_bad.append((n, i, a))

    el_pts, el_bad = extra_line_check(ell)

    alt_line = (1 << (2 * ell - 2)) - 1
    uncovered: list[RegionPoint] = []
    uncovered_alt: list[RegionPoint] = []
    for a in range(Q >> 1):
        lo, hi = _row_bounds(ell, a)
        for i in range(lo, hi + 1, 2):
            in_tt = _in_T(ell, i, a) or _in_Tprime(ell, i, a)
            if not in_tt and i != Q - 1:
                uncovered.append(RegionPoint(i, a, ell))
            if not in_tt and i != alt_line:
                uncovered_alt.append(RegionPoint(i, a, ell))

    return CoverReport(
        ell=ell,
        strips=ell - 1,
        ia_strip_points=ia_pts,
        ia_strip_violations=ia_bad,
        ia_strip_outside=ia_out,
        jb_strip_points=jb_pts,
        jb_strip_violations=jb_bad,
        extra_line_points=el_pts,
        extra_line_violations=el_bad,
        uncovered=uncovered,
        uncovered_alt=uncovered_alt,
    )
