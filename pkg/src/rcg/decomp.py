"""Iwasawa (KAU/UAK), Cartan (KAK) and Bruhat (BWB) decompositions of SL_n.

All three work over the tower field and over the Puiseux field.  Tower
results reconstruct the input exactly.  Puiseux results carry per-value
truncation tails; reconstruction is then certified in the sense that every
known term of k*a*u - g (etc.) vanishes.

The Weyl chamber A+ is realised as non-increasing diagonal (equivalently
chi_delta(a) >= 1 for the simple roots); Cartan middle factors are sorted
into it and Bruhat representatives are normalised to a positive diagonal
scale with signs absorbed into the +-1 entries of w.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IndeterminateSign, NoRelatingElement
from .linalg import (
    Matrix,
    PUISEUX,
    det,
    rank,
    sym_eigen_lift,
    sym_eigen_tower,
)
from .slgroup import GroupElement, n_elements

F = Fraction


@dataclass
class KAUResult:
    k: GroupElement
    a: GroupElement
    u: GroupElement

    def reconstruct(self) -> GroupElement:
        return self.k * self.a * self.u


@dataclass
class UAKResult:
    u: GroupElement
    a: GroupElement
    k: GroupElement

    def reconstruct(self) -> GroupElement:
        return self.u * self.a * self.k


@dataclass
class KAKResult:
    k1: GroupElement
    a: GroupElement
    k2: GroupElement

    def reconstruct(self) -> GroupElement:
        return self.k1 * self.a * self.k2


@dataclass
class BruhatResult:
    b1: GroupElement
    w: GroupElement
    b2: GroupElement

    def reconstruct(self) -> GroupElement:
        return self.b1 * self.w * self.b2


def _group(mat: Matrix) -> GroupElement:
    return GroupElement(mat)


# ---------------------------------------------------------------------------
# Iwasawa

def iwasawa_kau(g: GroupElement) -> KAUResult:
    """g = k a u by Gram-Schmidt on the columns of g.

    The orthogonalisation itself is division-only (no radicals), so u is
    exact over the base field; the radicals enter only through the column
    norms, which populate a and k.
    """
    dom = g.mat.domain
    n = g.n
    cols = [g.mat.col(j) for j in range(n)]
    qhat = []
    norm2 = []
    inv_norm2 = []
    u_rows = [[dom.one if i == j else dom.zero for j in range(n)] for i in range(n)]
    for j in range(n):
        v = list(cols[j])
        for i in range(j):
            c = _dot(dom, qhat[i], cols[j]) * inv_norm2[i]
            u_rows[i][j] = c
            v = [a - c * b for a, b in zip(v, qhat[i])]
        qhat.append(tuple(v))
        n2 = _dot(dom, v, v)
        norm2.append(n2)
        inv_norm2.append(dom.invert(n2))
    r_diag = [dom.sqrt_positive(n2) for n2 in norm2]
    inv_r = [dom.invert(r) for r in r_diag]
    k_mat = Matrix(
        dom,
        [[qhat[j][i] * inv_r[j] for j in range(n)] for i in range(n)],
    )
    a_mat = Matrix(dom, [[r_diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
    u_mat = Matrix(dom, u_rows)
    return KAUResult(_group(k_mat), _group(a_mat), _group(u_mat))


def _dot(dom, u, v):
    acc = dom.zero
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def _flip(m: Matrix) -> Matrix:
    """Conjugation by the antidiagonal permutation J: reverse rows and columns."""
    n = m.nrows
    return Matrix(
        m.domain,
        [[m.data[n - 1 - i][n - 1 - j] for j in range(n)] for i in range(n)],
    )


def iwasawa_uak(g: GroupElement) -> UAKResult:
    """g = u a k, reduced to iwasawa_kau of the flip-conjugate J g^T J.

    Bridge: if J g^T J = k0 a0 u0 then g = (J u0^T J)(J a0 J)(J k0^T J),
    and the three factors are again upper unitriangular, positive diagonal
    and special orthogonal respectively.
    """
    flipped = _group(_flip(g.mat.transpose()))
    kau = iwasawa_kau(flipped)
    u = _group(_flip(kau.u.mat.transpose()))
    a = _group(_flip(kau.a.mat))
    k = _group(_flip(kau.k.mat.transpose()))
    return UAKResult(u, a, k)


def a_component(g: GroupElement) -> GroupElement:
    """The A-part of the UAK Iwasawa decomposition."""
    return iwasawa_uak(g).a


# ---------------------------------------------------------------------------
# Cartan

def cartan_kak(g: GroupElement, order=None) -> KAKResult:
    """g = k1 a k2 with a the descending singular-value diagonal.

    Tower inputs need a tower-solvable simple spectrum of g^T g; Puiseux
    inputs need a simple leading spectrum (then everything is certified to
    the requested relative order, default 8)."""
    s = g.mat.transpose() * g.mat
    if g.mat.domain is PUISEUX:
        lift = sym_eigen_lift(s, F(order) if order is not None else F(8))
        lams, vmat = lift.eigenvalues, lift.eigenvectors
        if det(vmat).sign() < 0:
            rows = [list(r) for r in vmat.data]
            for i in range(g.n):
                rows[i][-1] = -rows[i][-1]
            vmat = Matrix(PUISEUX, rows)
        ord_ = F(order) if order is not None else F(8)
        a_diag = [lam.sqrt_positive(ord_) for lam in lams]
        inv_a = [x.invert(ord_) for x in a_diag]
    else:
        lams, vmat = sym_eigen_tower(s)
        a_diag = [g.mat.domain.sqrt_positive(lam) for lam in lams]
        inv_a = [g.mat.domain.invert(x) for x in a_diag]
    n = g.n
    dom = g.mat.domain
    a_mat = Matrix(dom, [[a_diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
    k2 = vmat.transpose()
    k1 = Matrix(
        dom,
        [
            [_dot(dom, g.mat.row(i), vmat.col(j)) * inv_a[j] for j in range(n)]
            for i in range(n)
        ],
    )
    return KAKResult(_group(k1), _group(a_mat), _group(k2))


def kak_uniqueness_check(g: GroupElement, res1: KAKResult, res2: KAKResult) -> GroupElement:
    """The Weyl element relating two Cartan middle factors of the same g:
    an n in N with a2 = n a1 n^{-1}.  Identity when both are already in the
    closed chamber.  Failure to find one signals an implementation bug."""
    a1, a2 = res1.a, res2.a
    if a1 == a2:
        return GroupElement.identity(g.n)
    for w in n_elements(g.n):
        if w * a1 * w.inverse() == a2:
            return w
    raise NoRelatingElement("no signed permutation relates the two A-parts")


# ---------------------------------------------------------------------------
# Bruhat

def bruhat(g: GroupElement) -> BruhatResult:
    """g = b1 w b2 with b1, b2 upper triangular in SL_n and w the signed
    permutation singled out by positive pivot scales.

    Two-sided elimination: per column, pivot on the lowest provably nonzero
    entry, clear upward with row operations (left factor stays unit upper
    triangular) and rightward with column operations (right factor too); the
    leftover one-entry-per-line matrix splits as w times a positive diagonal
    absorbed into b2.  The permutation support is cross-checked against the
    lower-left rank matrix invariant."""
    dom = g.mat.domain
    n = g.n
    m = [list(row) for row in g.mat.data]
    linv = [[dom.one if i == j else dom.zero for j in range(n)] for i in range(n)]
    rinv = [[dom.one if i == j else dom.zero for j in range(n)] for i in range(n)]
    used_rows = set()
    pivot_row_of = {}
    for col in range(n):
        pivot = None
        for i in range(n - 1, -1, -1):
            if i in used_rows:
                continue
            if not dom.is_zero(m[i][col]):
                pivot = i
                break
        if pivot is None:
            raise IndeterminateSign("singular column during Bruhat elimination")
        used_rows.add(pivot)
        pivot_row_of[col] = pivot
        inv_p = dom.invert(m[pivot][col])
        for i in range(pivot):
            if i in used_rows or dom.is_zero(m[i][col]):
                continue
            c = m[i][col] * inv_p
            m[i] = [x - c * y for x, y in zip(m[i], m[pivot])]
            # undoing row_i -= c * row_pivot multiplies L^{-1} by (I + c E_{i,pivot})
            for t in range(n):
                linv[t][pivot] = linv[t][pivot] + linv[t][i] * c
        for j in range(col + 1, n):
            if dom.is_zero(m[pivot][j]):
                continue
            c = m[pivot][j] * inv_p
            for i in range(n):
                m[i][j] = m[i][j] - m[i][col] * c
            for t in range(n):
                rinv[col][t] = rinv[col][t] + c * rinv[j][t]
    w_rows = [[dom.zero] * n for _ in range(n)]
    d_diag = [dom.zero] * n
    for col in range(n):
        i = pivot_row_of[col]
        val = m[i][col]
        sgn = dom.sign(val)
        w_rows[i][col] = dom.one if sgn > 0 else -dom.one
        d_diag[col] = val if sgn > 0 else -val
    b1 = Matrix(dom, linv)
    b2 = Matrix(dom, [[d_diag[i] * rinv[i][j] for j in range(n)] for i in range(n)])
    w = Matrix(dom, w_rows)
    res = BruhatResult(_group(b1), _group(w), _group(b2))
    assert bruhat_permutation(g) == {
        col: row for col, row in pivot_row_of.items()
    }, "rank-matrix invariant disagrees with elimination"
    return res


def bruhat_permutation(g: GroupElement) -> dict:
    """The Bruhat cell of g as a map column -> pivot row, from the rank
    matrix r(i, j) = rank of the lower-left submatrix g[i:, :j+1]: position
    (i, j) carries a pivot iff the double difference of r equals one."""
    n = g.n
    cache = {}

    def r(i, j):
        # rank of rows i..n-1, columns 0..j; empty ranges have rank 0
        if i >= n or j < 0:
            return 0
        if (i, j) not in cache:
            sub = Matrix(
                g.mat.domain, [row[: j + 1] for row in g.mat.data[i:]]
            )
            cache[(i, j)] = rank(sub)
        return cache[(i, j)]

    out = {}
    for j in range(n):
        for i in range(n):
            if r(i, j) - r(i + 1, j) - r(i, j - 1) + r(i + 1, j - 1) == 1:
                out[j] = i
    return out
