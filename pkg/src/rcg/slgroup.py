"""SL_n over an ordered scalar field: subgroup predicates, the Cartan
involution, restricted root spaces, the Killing form and torus characters.

The split torus is always the diagonal one.  Subgroups follow the concrete
descriptions for SL_n: K = SO_n, A = positive diagonal, U = upper
unitriangular, M = diagonal with +-1 entries, N = signed permutation
matrices, B = upper triangular (all inside SL_n, so determinants are 1).

Restricted roots are indexed by ordered pairs: RootIndex(i, j) stands for
the functional e_i - e_j on the diagonal (indices 0-based here), with root
space the line through E_ij.  For SL_n no doubled root exists (g_{2a} = 0),
so all doubled-root formulas degenerate to the reduced case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, IndeterminateSign
from .linalg import Matrix, TOWER, det, inverse

F = Fraction


class GroupElement:
    """An element of SL_n: a square matrix with determinant exactly 1."""

    __slots__ = ("mat", "n")

    def __init__(self, mat: Matrix):
        if not mat.is_square():
            raise DomainError("group elements are square matrices")
        diff = det(mat) - mat.domain.one
        try:
            ok = mat.domain.is_zero(diff)
        except IndeterminateSign:
            # truncated entries: every known term of det - 1 cancelled, which
            # is all a certified-order decomposition can promise
            ok = True
        if not ok:
            raise DomainError(f"determinant is {det(mat)}, not 1")
        self.mat = mat
        self.n = mat.nrows

    @staticmethod
    def tower(rows) -> "GroupElement":
        return GroupElement(Matrix.tower(rows))

    @staticmethod
    def puiseux(rows) -> "GroupElement":
        return GroupElement(Matrix.puiseux(rows))

    @staticmethod
    def identity(n: int, domain=TOWER) -> "GroupElement":
        return GroupElement(Matrix.identity(n, domain))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.mat * other.mat)

    def inverse(self) -> "GroupElement":
        return GroupElement(inverse(self.mat))

    def transpose(self) -> "GroupElement":
        return GroupElement(self.mat.transpose())

    def __getitem__(self, ij):
        return self.mat[ij]

    def __eq__(self, other):
        if isinstance(other, GroupElement):
            return self.mat == other.mat
        return NotImplemented

    __hash__ = None

    def __str__(self):
        return str(self.mat)

    def __repr__(self):
        return f"GroupElement({self.mat})"


@dataclass(frozen=True)
class RootIndex:
    """The restricted root e_i - e_j of sl_n (0-based indices, i != j)."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise DomainError("root index needs distinct entries")

    @property
    def is_positive(self) -> bool:
        return self.i < self.j

    def __neg__(self) -> "RootIndex":
        return RootIndex(self.j, self.i)

    def __add__(self, other: "RootIndex"):
        """Sum as a root, when it is one (else None)."""
        if self.j == other.i and self.i != other.j:
            return RootIndex(self.i, other.j)
        if other.j == self.i and other.i != self.j:
            return RootIndex(other.i, self.j)
        return None

    def __repr__(self):
        return f"e{self.i + 1}-e{self.j + 1}"


def positive_roots(n: int):
    return [RootIndex(i, j) for i in range(n) for j in range(i + 1, n)]


# ---------------------------------------------------------------------------
# membership predicates (exact; IndeterminateSign bubbles from truncated input)

def _is_zero(mat: Matrix, i, j) -> bool:
    return mat.domain.is_zero(mat.data[i][j])


def _is_one(mat: Matrix, i, j) -> bool:
    return mat.domain.is_zero(mat.data[i][j] - mat.domain.one)


def member_K(g: GroupElement) -> bool:
    prod = g.mat * g.mat.transpose()
    n = g.n
    dom = g.mat.domain
    return all(
        dom.is_zero(prod.data[i][j] - (dom.one if i == j else dom.zero))
        for i in range(n)
        for j in range(n)
    )


def member_A(g: GroupElement) -> bool:
    n = g.n
    for i in range(n):
        for j in range(n):
            if i != j and not _is_zero(g.mat, i, j):
                return False
    return all(g.mat.domain.sign(g.mat.data[i][i]) == 1 for i in range(n))


def member_U(g: GroupElement) -> bool:
    n = g.n
    for i in range(n):
        if not _is_one(g.mat, i, i):
            return False
        for j in range(i):
            if not _is_zero(g.mat, i, j):
                return False
    return True


def member_M(g: GroupElement) -> bool:
    n = g.n
    dom = g.mat.domain
    for i in range(n):
        for j in range(n):
            if i != j and not _is_zero(g.mat, i, j):
                return False
    return all(
        dom.is_zero(g.mat.data[i][i] * g.mat.data[i][i] - dom.one) for i in range(n)
    )


def member_N(g: GroupElement) -> bool:
    n = g.n
    dom = g.mat.domain
    for i in range(n):
        nonzero_cols = [j for j in range(n) if not _is_zero(g.mat, i, j)]
        if len(nonzero_cols) != 1:
            return False
        x = g.mat.data[i][nonzero_cols[0]]
        if not dom.is_zero(x * x - dom.one):
            return False
    for j in range(n):
        if sum(0 if _is_zero(g.mat, i, j) else 1 for i in range(n)) != 1:
            return False
    return True


def member_B(g: GroupElement) -> bool:
    n = g.n
    return all(_is_zero(g.mat, i, j) for i in range(n) for j in range(i))


# ---------------------------------------------------------------------------
# Cartan involution and the restricted root-space decomposition

def theta(x: Matrix) -> Matrix:
    """The Cartan involution X -> -X^T."""
    return -x.transpose()


@dataclass
class RootDecomposition:
    zero_part: Matrix
    components: dict

    def reconstruct(self) -> Matrix:
        total = self.zero_part
        for part in self.components.values():
            total = total + part
        return total


def root_space_decompose(x: Matrix) -> RootDecomposition:
    """Split a traceless matrix into its diagonal (g_0) part and its root
    components X_ij E_ij."""
    dom = x.domain
    if not dom.is_zero(x.trace()):
        raise DomainError("root space decomposition needs a traceless matrix")
    n = x.nrows
    zero_part = Matrix(
        dom, [[x.data[i][j] if i == j else 0 for j in range(n)] for i in range(n)]
    )
    comps = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if not dom.is_zero(x.data[i][j]):
                comps[RootIndex(i, j)] = Matrix(
                    dom,
                    [
                        [x.data[a][b] if (a, b) == (i, j) else 0 for b in range(n)]
                        for a in range(n)
                    ],
                )
    return RootDecomposition(zero_part, comps)


def _sl_basis(n: int, dom):
    """Basis of sl_n: the E_ij (i != j) then H_k = E_kk - E_{k+1,k+1}."""
    basis = []
    for i in range(n):
        for j in range(n):
            if i != j:
                basis.append(
                    Matrix(dom, [[1 if (a, b) == (i, j) else 0 for b in range(n)] for a in range(n)])
                )
    for k in range(n - 1):
        rows = [[0] * n for _ in range(n)]
        rows[k][k] = 1
        rows[k + 1][k + 1] = -1
        basis.append(Matrix(dom, rows))
    return basis


def _sl_coords(m: Matrix):
    """Coordinates of a traceless matrix over the _sl_basis ordering."""
    n = m.nrows
    coords = []
    for i in range(n):
        for j in range(n):
            if i != j:
                coords.append(m.data[i][j])
    partial = m.domain.zero
    for k in range(n - 1):
        partial = partial + m.data[k][k]
        coords.append(partial)
    return coords


def _ad_matrix(x: Matrix):
    basis = _sl_basis(x.nrows, x.domain)
    cols = [_sl_coords(x * b - b * x) for b in basis]
    return list(zip(*cols))


def killing_form(x: Matrix, y: Matrix):
    """B(X, Y) = tr(ad X o ad Y), computed literally on the sl_n basis.
    (The 2n tr(XY) shortcut is reserved for cross-checks in tests.)"""
    dom = x.domain
    if not dom.is_zero(x.trace()) or not dom.is_zero(y.trace()):
        raise DomainError("Killing form needs traceless arguments")
    ax = _ad_matrix(x)
    ay = _ad_matrix(y)
    dim = len(ax)
    total = dom.zero
    for a in range(dim):
        for b in range(dim):
            total = total + ax[a][b] * ay[b][a]
    return total


def b_theta(x: Matrix, y: Matrix):
    """The inner product B_theta(X, Y) = -B(X, theta(Y))."""
    return -killing_form(x, theta(y))


# ---------------------------------------------------------------------------
# torus characters

def chi(alpha: RootIndex, a: GroupElement):
    """The multiplicative character of the diagonal torus at the root
    e_i - e_j: a_i / a_j."""
    if not member_A(a):
        raise DomainError("character arguments must lie in A")
    return a.mat.data[alpha.i][alpha.i] * a.mat.domain.invert(a.mat.data[alpha.j][alpha.j])


def conj_root_vector(a: GroupElement, alpha: RootIndex, x: Matrix) -> Matrix:
    """a exp(X) a^{-1} for X in the root space of alpha; asserts the closed
    form exp(chi_alpha(a) X) predicted for torus conjugation."""
    dom = x.domain
    n = x.nrows
    for p in range(n):
        for q in range(n):
            if (p, q) != (alpha.i, alpha.j) and not dom.is_zero(x.data[p][q]):
                raise DomainError("X is not a single-root-space vector")
    one = Matrix.identity(n, dom)
    conj = a.mat * (one + x) * inverse(a.mat)
    expected = one + x * chi(alpha, a)
    assert conj == expected
    return conj


# ---------------------------------------------------------------------------
# Weyl representatives and the N/M quotient for SL_3

def weyl_reps_sl3():
    """The six SL_3 Weyl representatives, one per chamber."""
    mats = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, -1, 0], [1, 0, 0], [0, 0, 1]],
        [[1, 0, 0], [0, 0, -1], [0, 1, 0]],
        [[0, 0, -1], [0, 1, 0], [1, 0, 0]],
        [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
        [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
    ]
    return [GroupElement.tower(m) for m in mats]


def n_elements(n: int):
    """All of N for SL_n: signed permutation matrices with determinant 1."""
    from itertools import permutations, product

    out = []
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            rows = [[0] * n for _ in range(n)]
            for col, row in enumerate(perm):
                rows[row][col] = signs[col]
            m = Matrix.tower(rows)
            if det(m) == 1:
                out.append(GroupElement(m))
    return out


def m_elements(n: int):
    from itertools import product

    out = []
    for signs in product((1, -1), repeat=n):
        rows = [[signs[i] if i == j else 0 for j in range(n)] for i in range(n)]
        m = Matrix.tower(rows)
        if det(m) == 1:
            out.append(GroupElement(m))
    return out


def n_mod_m_classes(n_list):
    """Partition a list of N-elements into M-cosets and build the quotient
    multiplication table.  Returns (representatives, table) where
    table[a][b] is the class index of reps[a] * reps[b]."""
    reps = []

    def class_of(g: GroupElement):
        for idx, r in enumerate(reps):
            if member_M(GroupElement(inverse(r.mat) * g.mat)):
                return idx
        return None

    for g in n_list:
        if class_of(g) is None:
            reps.append(g)
    table = []
    for a in reps:
        row = []
        for b in reps:
            idx = class_of(a * b)
            if idx is None:
                raise DomainError("quotient is not closed under multiplication")
            row.append(idx)
        table.append(row)
    return reps, table
