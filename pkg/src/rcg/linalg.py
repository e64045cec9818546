"""Dense exact linear algebra over the tower and Puiseux scalar fields.

Matrices are immutable and homogeneous in scalar kind.  Elimination pivots
are chosen by exact zero tests; when a truncated Puiseux entry cannot be
classified the operation aborts with IndeterminateSign instead of guessing.

The symmetric eigen solvers back the Cartan decomposition: sym_eigen_tower
factors the characteristic polynomial over the tower (rational roots plus
quadratic splitting, so 2x2 always works), sym_eigen_lift solves the
leading-order problem of a Puiseux matrix and refines the branches by
Newton iteration to a requested relative order.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import (
    DegenerateLeadingSpectrum,
    IndeterminateSign,
    RepeatedEigenvalue,
    SingularMatrix,
    UnsolvableSpectrum,
)
from .puiseux import PuiseuxScalar
from .tower import TowerScalar
from .tower import sqrt_positive as tower_sqrt

F = Fraction


class ScalarDomain:
    """Field operations a Matrix needs beyond the scalar dunders."""

    def coerce(self, x):
        raise NotImplementedError

    def is_zero(self, s) -> bool:
        raise NotImplementedError

    def sign(self, s) -> int:
        raise NotImplementedError

    def invert(self, s):
        raise NotImplementedError

    def sqrt_positive(self, s):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)


class _TowerDomain(ScalarDomain):
    name = "tower"

    def coerce(self, x):
        return TowerScalar.coerce(x)

    def is_zero(self, s):
        return s.is_zero()

    def sign(self, s):
        return s.sign()

    def invert(self, s):
        return s.inv()

    def sqrt_positive(self, s):
        return tower_sqrt(s)


class _PuiseuxDomain(ScalarDomain):
    name = "puiseux"

    def coerce(self, x):
        return PuiseuxScalar.coerce(x)

    def is_zero(self, s):
        return s.is_zero()

    def sign(self, s):
        return s.sign()

    def invert(self, s):
        return s.invert()

    def sqrt_positive(self, s):
        return s.sqrt_positive()


TOWER = _TowerDomain()
PUISEUX = _PuiseuxDomain()


class Matrix:
    """Immutable dense matrix over one scalar domain."""

    __slots__ = ("domain", "data", "nrows", "ncols")

    def __init__(self, domain: ScalarDomain, rows):
        data = tuple(tuple(domain.coerce(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("matrix needs at least one row and column")
        if any(len(r) != len(data[0]) for r in data):
            raise ValueError("ragged rows")
        self.domain = domain
        self.data = data
        self.nrows = len(data)
        self.ncols = len(data[0])

    # -- constructors --------------------------------------------------------

    @staticmethod
    def tower(rows) -> "Matrix":
        return Matrix(TOWER, rows)

    @staticmethod
    def puiseux(rows) -> "Matrix":
        return Matrix(PUISEUX, rows)

    @staticmethod
    def identity(n: int, domain: ScalarDomain = TOWER) -> "Matrix":
        return Matrix(
            domain, [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(n: int, m: int, domain: ScalarDomain = TOWER) -> "Matrix":
        return Matrix(domain, [[0] * m for _ in range(n)])

    def to_puiseux(self) -> "Matrix":
        """Constant embedding of a tower matrix into the Puiseux field."""
        if self.domain is PUISEUX:
            return self
        return Matrix(PUISEUX, [[PuiseuxScalar.constant(x) for x in r] for r in self.data])

    # -- structure -----------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(r[j] for r in self.data)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def transpose(self) -> "Matrix":
        return Matrix(self.domain, list(zip(*self.data)))

    def trace(self):
        t = self.domain.zero
        for i in range(self.nrows):
            t = t + self.data[i][i]
        return t

    def map(self, f) -> "Matrix":
        return Matrix(self.domain, [[f(x) for x in row] for row in self.data])

    def submatrix(self, drop_row: int, drop_col: int) -> "Matrix":
        return Matrix(
            self.domain,
            [
                [x for j, x in enumerate(row) if j != drop_col]
                for i, row in enumerate(self.data)
                if i != drop_row
            ],
        )

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        return Matrix(
            self.domain,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
        )

    def __sub__(self, other):
        return Matrix(
            self.domain,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
        )

    def __neg__(self):
        return Matrix(self.domain, [[-a for a in r] for r in self.data])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("dimension mismatch")
            cols = list(zip(*other.data))
            return Matrix(
                self.domain,
                [
                    [_dot(row, col, self.domain) for col in cols]
                    for row in self.data
                ],
            )
        s = self.domain.coerce(other)
        return Matrix(self.domain, [[a * s for a in r] for r in self.data])

    def __rmul__(self, other):
        s = self.domain.coerce(other)
        return Matrix(self.domain, [[s * a for a in r] for r in self.data])

    def scale(self, s) -> "Matrix":
        return self * s

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.nrows != other.nrows or self.ncols != other.ncols:
            return False
        return all(
            a == b for r1, r2 in zip(self.data, other.data) for a, b in zip(r1, r2)
        )

    __hash__ = None

    def __str__(self):
        return "; ".join(", ".join(str(x) for x in row) for row in self.data)

    def __repr__(self):
        return f"Matrix[{self.nrows}x{self.ncols}]({self})"


def _dot(u, v, domain):
    acc = domain.zero
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a * b - b * a


# ---------------------------------------------------------------------------
# elimination

def _find_pivot(column, start, domain):
    """Index of the first provably nonzero entry from `start`, or None if the
    whole tail is provably zero.  IndeterminateSign if neither can be shown."""
    indeterminate = False
    for i in range(start, len(column)):
        try:
            if not domain.is_zero(column[i]):
                return i
        except IndeterminateSign:
            indeterminate = True
    if indeterminate:
        raise IndeterminateSign("pivot choice blocked by truncated entries")
    return None


def _eliminate(m: Matrix, rhs=None):
    """Row echelon form by exact division.  Returns (rows, pivots, det_sign,
    rhs_rows).  rhs, when given, is a Matrix transformed alongside."""
    domain = m.domain
    rows = [list(r) for r in m.data]
    rrows = [list(r) for r in rhs.data] if rhs is not None else None
    pivots = []
    det_sign = 1
    pr = 0
    for pc in range(m.ncols):
        if pr >= m.nrows:
            break
        col = [rows[i][pc] for i in range(m.nrows)]
        idx = _find_pivot(col, pr, domain)
        if idx is None:
            continue
        if idx != pr:
            rows[pr], rows[idx] = rows[idx], rows[pr]
            if rrows is not None:
                rrows[pr], rrows[idx] = rrows[idx], rrows[pr]
            det_sign = -det_sign
        inv = domain.invert(rows[pr][pc])
        for i in range(pr + 1, m.nrows):
            factor = rows[i][pc] * inv
            try:
                skip = domain.is_zero(factor)
            except IndeterminateSign:
                skip = False
            if skip:
                continue
            rows[i] = [a - factor * b for a, b in zip(rows[i], rows[pr])]
            if rrows is not None:
                rrows[i] = [a - factor * b for a, b in zip(rrows[i], rrows[pr])]
        pivots.append((pr, pc))
        pr += 1
    return rows, pivots, det_sign, rrows


def rank(m: Matrix) -> int:
    _, pivots, _, _ = _eliminate(m)
    return len(pivots)


def det(m: Matrix):
    """Determinant by cofactor expansion: exact, division-free, and safe on
    truncated entries (tails propagate instead of blocking a pivot)."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    return _det_rows(m.data, m.domain)


def _det_rows(rows, domain):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = domain.zero
    rest = rows[1:]
    sign = 1
    for j in range(n):
        minor = [
            [row[k] for k in range(n) if k != j]
            for row in rest
        ]
        term = rows[0][j] * _det_rows(minor, domain)
        total = total + term if sign > 0 else total - term
        sign = -sign
    return total


def solve(m: Matrix, rhs: Matrix) -> Matrix:
    """Solve m x = rhs exactly.  SingularMatrix on rank deficiency."""
    if not m.is_square() or rhs.nrows != m.nrows:
        raise ValueError("dimension mismatch")
    domain = m.domain
    rows, pivots, _, rrows = _eliminate(m, rhs)
    if len(pivots) < m.nrows:
        raise SingularMatrix("rank-deficient system")
    n = m.nrows
    k = rhs.ncols
    sol = [[domain.zero] * k for _ in range(n)]
    for pr, pc in reversed(pivots):
        inv = domain.invert(rows[pr][pc])
        for c in range(k):
            acc = rrows[pr][c]
            for j in range(pc + 1, n):
                acc = acc - rows[pr][j] * sol[j][c]
            sol[pc][c] = acc * inv
    return Matrix(domain, sol)


def inverse(m: Matrix) -> Matrix:
    return solve(m, Matrix.identity(m.nrows, m.domain))


def kernel(m: Matrix) -> list:
    """Basis of the right kernel, as a list of column tuples."""
    domain = m.domain
    rows, pivots, _, _ = _eliminate(m)
    pivot_cols = [pc for _, pc in pivots]
    free_cols = [c for c in range(m.ncols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [domain.zero] * m.ncols
        v[fc] = domain.one
        for pr, pc in reversed(pivots):
            acc = rows[pr][fc]
            for j in pivot_cols:
                if j > pc:
                    acc = acc + rows[pr][j] * v[j]
            v[pc] = -acc * domain.invert(rows[pr][pc])
        basis.append(tuple(v))
    return basis


def char_poly(m: Matrix) -> list:
    """Monic characteristic polynomial coefficients [1, c1, ..., cn] with
    p(t) = t^n + c1 t^(n-1) + ... + cn, by the Faddeev-LeVerrier recursion
    (valid in characteristic zero; only integer divisions appear)."""
    if not m.is_square():
        raise ValueError("char_poly of a non-square matrix")
    n = m.nrows
    domain = m.domain
    coeffs = [domain.one]
    mk = m
    for k in range(1, n + 1):
        ck = mk.trace() * F(-1, k)
        coeffs.append(ck)
        if k < n:
            mk = m * (mk + Matrix.identity(n, domain) * ck)
    return coeffs


# ---------------------------------------------------------------------------
# root finding over the tower

def _divisors(n: int, limit: int = 10**12):
    n = abs(n)
    if n == 0:
        return []
    if n > limit:
        raise UnsolvableSpectrum("constant coefficient too large for root search")
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def _eval_poly(coeffs, x):
    acc = coeffs[0]
    for c in coeffs[1:]:
        acc = acc * x + c
    return acc


def tower_roots(coeffs: list) -> list:
    """All roots of a monic polynomial with TowerScalar coefficients, found
    by rational-root extraction plus quadratic-formula splitting.  Degree <= 2
    always succeeds over the tower when the roots are real; higher degrees
    succeed only when rational roots reduce them to that case."""
    coeffs = [TowerScalar.coerce(c) for c in coeffs]
    deg = len(coeffs) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [-coeffs[1]]
    if deg == 2:
        b, c = coeffs[1], coeffs[2]
        disc = b * b - 4 * c
        s = disc.sign()
        if s < 0:
            raise UnsolvableSpectrum("negative discriminant: no real roots")
        root = tower_sqrt(disc) if s > 0 else TowerScalar.coerce(0)
        half = F(1, 2)
        return [(-b + root) * half, (-b - root) * half]
    fracs = [c.as_fraction() for c in coeffs]
    if any(f is None for f in fracs):
        raise UnsolvableSpectrum(
            f"degree-{deg} factorisation over the tower needs rational coefficients"
        )
    den = 1
    for f in fracs:
        den = lcm(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    root = None
    if ints[-1] == 0:
        root = F(0)
    else:
        for p in _divisors(ints[-1]):
            for q in _divisors(ints[0]):
                for cand in (F(p, q), F(-p, q)):
                    if _eval_poly(fracs, cand) == 0:
                        root = cand
                        break
                if root is not None:
                    break
            if root is not None:
                break
    if root is None:
        raise UnsolvableSpectrum(f"no rational root for degree-{deg} factor")
    # synthetic division by (x - root)
    quotient = [fracs[0]]
    for c in fracs[1:-1]:
        quotient.append(c + quotient[-1] * root)
    rest = tower_roots([TowerScalar.coerce(q) for q in quotient])
    return [TowerScalar.coerce(root)] + rest


# ---------------------------------------------------------------------------
# symmetric eigen decomposition over the tower

def _check_symmetric(s: Matrix):
    if not s.is_square():
        raise ValueError("symmetric eigenproblem needs a square matrix")
    for i in range(s.nrows):
        for j in range(i + 1, s.ncols):
            diff = s.data[i][j] - s.data[j][i]
            try:
                ok = s.domain.is_zero(diff)
            except IndeterminateSign:
                ok = not diff.terms
            if not ok:
                raise ValueError("matrix is not symmetric")


def sym_eigen_tower(s: Matrix):
    """Exact eigen decomposition of a symmetric tower matrix with distinct
    eigenvalues.  Returns (eigenvalues descending, V) with V orthonormal,
    det(V) = +1 and s V = V diag(eigenvalues)."""
    _check_symmetric(s)
    n = s.nrows
    lams = tower_roots(char_poly(s))
    for i in range(n):
        for j in range(i + 1, n):
            if (lams[i] - lams[j]).is_zero():
                raise RepeatedEigenvalue("spectrum is not simple")
    lams.sort(key=_TowerKey, reverse=True)
    cols = []
    for lam in lams:
        shifted = s - Matrix.identity(n, TOWER) * lam
        basis = kernel(shifted)
        if len(basis) != 1:
            raise RepeatedEigenvalue("eigenspace dimension exceeds one")
        v = basis[0]
        norm2 = _dot(v, v, TOWER)
        inv_norm = tower_sqrt(norm2).inv()
        v = [x * inv_norm for x in v]
        for x in v:
            sgn = x.sign()
            if sgn:
                if sgn < 0:
                    v = [-y for y in v]
                break
        cols.append(v)
    vmat = Matrix(TOWER, list(zip(*cols)))
    if det(vmat).sign() < 0:
        flipped = [list(r) for r in vmat.data]
        for i in range(n):
            flipped[i][-1] = -flipped[i][-1]
        vmat = Matrix(TOWER, flipped)
    return lams, vmat


class _TowerKey:
    """Total-order sort key wrapping exact sign comparisons."""

    def __init__(self, value):
        self.value = value

    def __lt__(self, other):
        return (self.value - other.value).sign() < 0


# ---------------------------------------------------------------------------
# symmetric eigen lifting over the Puiseux field

class SymEigenLift:
    """Certified eigen data of a symmetric Puiseux matrix: s v = lam v and
    v^T v = 1 hold through the stated relative order (all known residual
    terms above the truncation bounds vanish)."""

    __slots__ = ("eigenvalues", "eigenvectors", "certified_order")

    def __init__(self, eigenvalues, eigenvectors, certified_order):
        self.eigenvalues = eigenvalues
        self.eigenvectors = eigenvectors
        self.certified_order = certified_order


def _newton_polygon_branches(coeffs):
    """Leading terms (mu, c) of the char-poly roots via the upper Newton
    polygon.  coeffs[k] multiplies lambda^(n-k)."""
    n = len(coeffs) - 1
    pts = []
    for k, c in enumerate(coeffs):
        power = n - k
        if isinstance(c, PuiseuxScalar):
            if not c.terms:
                if c.tail is not None:
                    raise IndeterminateSign(
                        "characteristic coefficient has unknown leading term"
                    )
                continue
            pts.append((power, c.terms[0][0], c.terms[0][1]))
        else:
            if TowerScalar.coerce(c).is_zero():
                continue
            pts.append((power, F(0), TowerScalar.coerce(c)))
    pts.sort(reverse=True)
    if pts[-1][0] != 0:
        raise DegenerateLeadingSpectrum("zero eigenvalue at leading order")
    # upper convex hull from (n, E_n) to (0, E_0)
    hull = [pts[0]]
    for p in pts[1:]:
        while len(hull) >= 2:
            (x1, y1, _), (x2, y2, _) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    by_power = {p[0]: (p[1], p[2]) for p in pts}
    branches = []
    for (x_hi, y_hi, _), (x_lo, y_lo, _) in zip(hull, hull[1:]):
        mu = (y_lo - y_hi) / (x_hi - x_lo)
        edge = []
        for power in range(x_lo, x_hi + 1):
            expected = y_hi + mu * (x_hi - power)
            if power in by_power and by_power[power][0] == expected:
                edge.append((power, by_power[power][1]))
            else:
                edge.append((power, TowerScalar.coerce(0)))
        # edge polynomial in z, degree x_hi - x_lo, leading coeff at power x_hi
        poly = [c for _, c in sorted(edge, reverse=True)]
        lead_inv = poly[0].inv()
        monic = [c * lead_inv for c in poly]
        roots = tower_roots(monic)
        for z in roots:
            if z.is_zero():
                raise DegenerateLeadingSpectrum("edge polynomial has a zero root")
            branches.append((mu, z))
    if len(branches) != n:
        raise DegenerateLeadingSpectrum("leading problem does not split")
    for i in range(n):
        for j in range(i + 1, n):
            if branches[i][0] == branches[j][0] and (
                branches[i][1] - branches[j][1]
            ).is_zero():
                raise DegenerateLeadingSpectrum("repeated leading eigenvalue")
    return branches


def _poly_eval_puiseux(coeffs, x: PuiseuxScalar) -> PuiseuxScalar:
    # no explicit working cutoff: the per-value tails already bound what is
    # reliable, and mid-sum cancellations make scale estimates unsafe
    acc = PuiseuxScalar.coerce(coeffs[0])
    for c in coeffs[1:]:
        acc = acc * x + PuiseuxScalar.coerce(c)
    return acc


def _adjugate(m: Matrix) -> Matrix:
    n = m.nrows
    if n == 1:
        return Matrix(m.domain, [[1]])
    cof = [
        [
            _det_rows(m.submatrix(i, j).data, m.domain) * ((-1) ** ((i + j) % 2))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return Matrix(m.domain, cof).transpose()


def sym_eigen_lift(s: Matrix, order=F(8)) -> SymEigenLift:
    """Eigen series of a symmetric Puiseux matrix whose leading spectrum is
    simple, refined to the given relative order."""
    _check_symmetric(s)
    order = F(order)
    n = s.nrows
    coeffs = char_poly(s)
    branches = _newton_polygon_branches(coeffs)
    slack = order + 4
    lams = []
    for mu, z in branches:
        lam = PuiseuxScalar.monomial(z, mu)
        deriv = [c * (len(coeffs) - 1 - k) for k, c in enumerate(coeffs[:-1])]
        cutoff = mu - slack
        for _ in range(100):
            f = _poly_eval_puiseux(coeffs, lam)
            fp = _poly_eval_puiseux(deriv, lam)
            update = (f * fp.invert(slack)).truncate_below(cutoff)
            lam = (lam - update).truncate_below(cutoff)
            if not update.truncate_below(mu - order).terms:
                break
        else:
            raise UnsolvableSpectrum("Newton refinement did not converge")
        lams.append(lam.truncate_below(mu - order))
    lams.sort(key=_PuiseuxKey, reverse=True)
    cols = []
    for lam in lams:
        shifted = s - Matrix.identity(n, PUISEUX) * lam
        adj = _adjugate(shifted)
        chosen = None
        for j in range(n):
            v = [adj.data[i][j] for i in range(n)]
            norm2 = _dot(v, v, PUISEUX)
            try:
                if norm2.sign() == 1:
                    chosen = (v, norm2)
                    break
            except IndeterminateSign:
                continue
        if chosen is None:
            raise IndeterminateSign("eigenvector not determined at this order")
        v, norm2 = chosen
        inv_norm = norm2.sqrt_positive(order).invert(order)
        v = [x * inv_norm for x in v]
        for x in v:
            try:
                sgn = x.sign()
            except IndeterminateSign:
                continue
            if sgn:
                if sgn < 0:
                    v = [-y for y in v]
                break
        cols.append(v)
    vmat = Matrix(PUISEUX, list(zip(*cols)))
    return SymEigenLift(lams, vmat, order)


class _PuiseuxKey:
    def __init__(self, value):
        self.value = value

    def __lt__(self, other):
        return (self.value - other.value).sign() < 0
