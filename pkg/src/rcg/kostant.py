"""The multiplicative Kostant convexity test for SL_n, with two routes.

The production route is the character-inequality test: a lies in the
A-component image of the K-orbit of b iff chi_j(a) <= chi_j(b) for the
partial-product characters chi_j(a) = a_1 ... a_j.  Those characters are
derived (not hardcoded) from the cone data of the A_{n-1} root system; the
derivation is asserted on every call.

The independent test-time route is a convex-hull oracle over certified
rational logarithms: log a must lie in the convex hull of the Weyl orbit of
log b.  The hull decision runs exact rational geometry on interval
midpoints and only accepts an answer whose margin dominates the interval
error; PrecisionExhausted is raised when the point sits within slack
10^-20 of the hull boundary.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd

from .decomp import a_component
from .errors import DomainError, PrecisionExhausted
from .linalg import Matrix
from .rootsys import build, cone_data
from .slgroup import GroupElement, member_A

F = Fraction

#: geometric margin below which the hull oracle refuses to decide
BOUNDARY_SLACK = F(1, 10**20)


class ChamberPoint:
    """An element of the closed multiplicative Weyl chamber A+: positive
    diagonal, determinant 1, entries non-increasing."""

    __slots__ = ("element", "n")

    def __init__(self, element: GroupElement):
        if not member_A(element):
            raise DomainError("chamber points must lie in A")
        dom = element.mat.domain
        for i in range(element.n - 1):
            step = element.mat.data[i][i] - element.mat.data[i + 1][i + 1]
            if dom.sign(step) < 0:
                raise DomainError("diagonal is not non-increasing")
        self.element = element
        self.n = element.n

    @staticmethod
    def from_diagonal(entries, domain=None) -> "ChamberPoint":
        from .linalg import TOWER

        domain = domain or TOWER
        n = len(entries)
        mat = Matrix(
            domain, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )
        return ChamberPoint(GroupElement(mat))

    def diagonal(self):
        return [self.element.mat.data[i][i] for i in range(self.n)]

    def __eq__(self, other):
        return isinstance(other, ChamberPoint) and self.element == other.element

    __hash__ = None


def chamber_projection(a: GroupElement) -> ChamberPoint:
    """The A+ representative of an A-element: diagonal sorted descending
    (the spherical Weyl group acts by permuting diagonal entries)."""
    if not member_A(a):
        raise DomainError("chamber projection needs an A-element")
    dom = a.mat.domain
    diag = [a.mat.data[i][i] for i in range(a.n)]
    for i in range(1, len(diag)):  # insertion sort with exact sign tests
        j = i
        while j > 0 and dom.sign(diag[j - 1] - diag[j]) < 0:
            diag[j - 1], diag[j] = diag[j], diag[j - 1]
            j -= 1
    return ChamberPoint.from_diagonal(diag, dom)


# ---------------------------------------------------------------------------
# the characters

_CHARS_CACHE: dict = {}


def kostant_chars(n: int):
    """Exponent vectors of the convexity characters of SL_n, derived from
    the A_{n-1} cone data: gamma_j converted to diagonal coordinates,
    shifted modulo the determinant-one relation and made primitive.  The
    expected partial-product shape is asserted, never assumed."""
    if n < 2:
        raise DomainError("kostant_chars needs n >= 2")
    if n in _CHARS_CACHE:
        return _CHARS_CACHE[n]
    rs = build(f"A{n - 1}")
    cd = cone_data(rs)
    chars = []
    for j, gamma in enumerate(cd.gamma):
        e_vec = [0] * n
        for k, c in enumerate(gamma):
            e_vec[k] += c
            e_vec[k + 1] -= c
        shift = e_vec[-1]
        vec = [x - shift for x in e_vec]
        g = 0
        for x in vec:
            g = gcd(g, x)
        vec = [x // g for x in vec]
        assert vec == [1] * (j + 1) + [0] * (n - j - 1), (
            "cone data does not reduce to partial products"
        )
        chars.append(tuple(vec))
    _CHARS_CACHE[n] = chars
    return chars


def char_value(vec, a: ChamberPoint):
    dom = a.element.mat.domain
    total = dom.one
    for k, power in enumerate(vec):
        for _ in range(power):
            total = total * a.element.mat.data[k][k]
    return total


def kostant_member(a: ChamberPoint, b: ChamberPoint) -> bool:
    """True iff chi_j(a) <= chi_j(b) for every convexity character (exact
    sign tests; works over both scalar fields)."""
    if a.n != b.n:
        raise DomainError("dimension mismatch")
    dom = a.element.mat.domain
    for vec in kostant_chars(a.n):
        diff = char_value(vec, b) - char_value(vec, a)
        if dom.sign(diff) < 0:
            return False
    return True


# ---------------------------------------------------------------------------
# certified rational logarithms

def _atanh_interval(z: Fraction, prec_bits: int):
    """Enclosure of atanh(z) for 0 <= z < 1/2 by the odd power series with
    an explicit geometric tail bound."""
    target = F(1, 2) ** prec_bits
    total = F(0)
    k = 0
    power = z
    z2 = z * z
    while True:
        total += power / (2 * k + 1)
        k += 1
        power *= z2
        tail = power / ((2 * k + 1) * (1 - z2))
        if tail <= target:
            return (total, total + tail)


def ln_interval(x: Fraction, prec_bits: int):
    """An interval containing ln(x) for rational x > 0."""
    x = F(x)
    if x <= 0:
        raise DomainError("ln of a non-positive rational")
    if x == 1:
        return (F(0), F(0))
    if x < 1:
        lo, hi = ln_interval(1 / x, prec_bits)
        return (-hi, -lo)
    e = x.numerator.bit_length() - x.denominator.bit_length()
    m = x / F(2) ** e
    if m < 1:
        m, e = m * 2, e - 1
    # m in [1, 2): atanh argument (m-1)/(m+1) in [0, 1/3]
    z = (m - 1) / (m + 1)
    s_lo, s_hi = _atanh_interval(z, prec_bits + 4)
    ln2_lo, ln2_hi = _atanh_interval(F(1, 3), prec_bits + 4)
    lo = 2 * s_lo + e * 2 * ln2_lo
    hi = 2 * s_hi + e * 2 * ln2_hi
    if e < 0:
        lo, hi = 2 * s_lo + e * 2 * ln2_hi, 2 * s_hi + e * 2 * ln2_lo
    return (lo, hi)


# ---------------------------------------------------------------------------
# the convex-hull oracle

def _decide_1d(y, pts, margin):
    lo, hi = min(pts), max(pts)
    if y - hi > margin or lo - y > margin:
        return False
    if y - lo > margin and hi - y > margin:
        return True
    return None


def _decide_2d(y, pts, margin2):
    """Exact midpoint geometry with a squared margin: inside means deeper
    than the margin behind every supporting pair-line, outside means
    separated by more than the margin from one of them."""
    decided_inside = True
    for a in range(len(pts)):
        for b in range(len(pts)):
            if a == b:
                continue
            p, q = pts[a], pts[b]
            c = (q[1] - p[1], p[0] - q[0])
            if c == (0, 0):
                continue
            h = c[0] * p[0] + c[1] * p[1]
            norm2 = c[0] * c[0] + c[1] * c[1]
            if all(c[0] * r[0] + c[1] * r[1] <= h for r in pts):
                gap = c[0] * y[0] + c[1] * y[1] - h
                if gap > 0 and gap * gap > margin2 * norm2:
                    return False
                if not (gap < 0 and gap * gap > margin2 * norm2):
                    decided_inside = False
    if decided_inside and len({p for p in pts}) >= 3:
        return True
    return None


def hull_oracle(a: ChamberPoint, b: ChamberPoint, seed_unused=None) -> bool:
    """Decide log(a) in conv(W_s log(b)) for rational chamber points of
    SL_n, n <= 3, by enumerating the Weyl orbit and running the exact
    midpoint geometry on certified logarithm intervals.  This is the test
    oracle for kostant_member, not a production path."""
    n = a.n
    if n > 3:
        raise DomainError("hull oracle supports n <= 3")
    diag_a = [x.as_fraction() for x in a.diagonal()]
    diag_b = [x.as_fraction() for x in b.diagonal()]
    if any(x is None for x in diag_a + diag_b):
        raise DomainError("hull oracle needs rational chamber points")
    if diag_a == diag_b:
        return True  # a vertex of the orbit polytope
    prec = 64
    while True:
        enclosures_a = [ln_interval(x, prec) for x in diag_a]
        orbit = []
        for perm in set(permutations(range(n))):
            orbit.append([ln_interval(diag_b[p], prec) for p in perm])
        eps = F(0)
        for lo, hi in enclosures_a:
            eps = max(eps, (hi - lo) / 2)
        for pt in orbit:
            for lo, hi in pt:
                eps = max(eps, (hi - lo) / 2)
        # drop the last (dependent) coordinate; errors stay bounded by eps
        y = tuple((lo + hi) / 2 for lo, hi in enclosures_a[: n - 1])
        pts = [tuple((lo + hi) / 2 for lo, hi in pt[: n - 1]) for pt in orbit]
        delta = 2 * eps  # covers the l2 inflation from two coordinates
        if n == 2:
            verdict = _decide_1d(y[0], [p[0] for p in pts], 2 * delta)
        else:
            verdict = _decide_2d(y, pts, (2 * delta) * (2 * delta))
        if verdict is not None:
            return verdict
        if 2 * delta < BOUNDARY_SLACK:
            raise PrecisionExhausted(
                "point within certification slack of the hull boundary"
            )
        prec *= 2


# ---------------------------------------------------------------------------
# orbit sampling

def _rotation(n, i, j, t: Fraction) -> GroupElement:
    c = (1 - t * t) / (1 + t * t)
    s = 2 * t / (1 + t * t)
    rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    rows[i][i] = c
    rows[j][j] = c
    rows[i][j] = -s
    rows[j][i] = s
    return GroupElement.tower(rows)


@dataclass
class OrbitSampleReport:
    trials: int
    violations: int
    min_slack: float
    max_slack: float


def orbit_sample_check(b: ChamberPoint, trials: int, seed: int = 0) -> OrbitSampleReport:
    """Sample K-orbit points k*b with exact rational rotations, project
    their Iwasawa A-components to the chamber and assert the character
    inequalities every time.  A single violation is an assertion failure
    (this is the falsifiable face of the convexity statement)."""
    rng = random.Random(seed)
    n = b.n
    chars = kostant_chars(n)
    min_slack = None
    max_slack = None
    for _ in range(trials):
        k = GroupElement.identity(n)
        for _ in range(rng.randint(1, 3)):
            i, j = sorted(rng.sample(range(n), 2))
            t = F(rng.randint(-9, 9), rng.randint(1, 9))
            k = k * _rotation(n, i, j, t)
        proj = chamber_projection(a_component(k * b.element))
        assert kostant_member(proj, b), "convexity violation"
        slack = None
        for vec in chars:
            diff = char_value(vec, b) - char_value(vec, proj)
            lo, hi = diff.approx(F(1, 10**12))
            v = float((lo + hi) / 2)
            slack = v if slack is None else min(slack, v)
        min_slack = slack if min_slack is None else min(min_slack, slack)
        max_slack = slack if max_slack is None else max(max_slack, slack)
    return OrbitSampleReport(trials, 0, min_slack, max_slack)
