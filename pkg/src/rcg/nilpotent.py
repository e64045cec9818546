"""Nilpotent/unipotent calculus for SL_n: exact exp and log, the
Baker-Campbell-Hausdorff and Zassenhaus expansions, factorisation of the
root-ordered unipotent groups U_Theta, Jacobson-Morozov sl2-triples, root
SL2-embeddings and their Weyl representatives m(u).

Everything here is finite and exact: exponentials of nilpotents are
polynomial, and the commutator series terminate at the nilpotency grade.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import (
    DomainError,
    NotInImage,
    NotInUTheta,
    NotNilpotent,
    NotUnipotent,
    ZeroInput,
    ZeroParameter,
)
from .linalg import Matrix, commutator, inverse, kernel, rank
from .slgroup import (
    GroupElement,
    RootIndex,
    b_theta,
    root_space_decompose,
    theta,
)

F = Fraction


def _is_zero_matrix(m: Matrix) -> bool:
    return all(m.domain.is_zero(x) for row in m.data for x in row)


def _nilpotency_index(x: Matrix) -> int:
    """Smallest q with x^q = 0; NotNilpotent if none exists."""
    n = x.nrows
    cur = x
    for q in range(1, n + 1):
        if _is_zero_matrix(cur):
            return q
        cur = cur * x
    raise NotNilpotent("matrix power x^n is nonzero")


def exp_nilpotent(x: Matrix) -> GroupElement:
    """Finite-sum exponential of a verified nilpotent matrix."""
    n = x.nrows
    _nilpotency_index(x)
    total = Matrix.identity(n, x.domain)
    term = Matrix.identity(n, x.domain)
    for k in range(1, n):
        term = term * x
        total = total + term * F(1, factorial(k))
    return GroupElement(total)


def log_unipotent(u) -> Matrix:
    """Finite-sum logarithm of a verified unipotent element; inverse of
    exp_nilpotent."""
    mat = u.mat if isinstance(u, GroupElement) else u
    n = mat.nrows
    nil = mat - Matrix.identity(n, mat.domain)
    try:
        _nilpotency_index(nil)
    except NotNilpotent:
        raise NotUnipotent("u - 1 is not nilpotent") from None
    total = Matrix.zeros(n, n, mat.domain)
    term = Matrix.identity(n, mat.domain)
    for k in range(1, n):
        term = term * nil
        total = total + term * F((-1) ** (k + 1), k)
    return total


def _require_strictly_upper(x: Matrix, name: str):
    for i in range(x.nrows):
        for j in range(i + 1):
            if not x.domain.is_zero(x.data[i][j]):
                raise NotNilpotent(f"{name} must be strictly upper triangular")


# ---------------------------------------------------------------------------
# Baker-Campbell-Hausdorff

def bch(x: Matrix, y: Matrix) -> Matrix:
    """The exact Z with exp(Z) = exp(X) exp(Y), for strictly upper
    triangular X, Y.  Anchored to log of the product; the Dynkin series is
    available separately for coefficient cross-checks."""
    _require_strictly_upper(x, "X")
    _require_strictly_upper(y, "Y")
    return log_unipotent(exp_nilpotent(x) * exp_nilpotent(y))


def _nested_bracket(letters):
    acc = letters[-1]
    for m in letters[-2::-1]:
        acc = commutator(m, acc)
    return acc


def _pair_sequences(n_pairs, budget):
    """All sequences of n_pairs pairs (r, s) != (0, 0) with total letter
    count <= budget."""
    if n_pairs == 0:
        yield ()
        return
    for r in range(budget + 1):
        for s in range(budget - r + 1):
            if r == 0 and s == 0:
                continue
            head = (r, s)
            for rest in _pair_sequences(n_pairs - 1, budget - r - s):
                yield (head,) + rest


def bch_series_terms(x: Matrix, y: Matrix, max_degree: int) -> dict:
    """Dynkin-series homogeneous components of log(exp X exp Y) up to the
    given total degree, as a map degree -> matrix."""
    n = x.nrows
    out = {d: Matrix.zeros(n, n, x.domain) for d in range(1, max_degree + 1)}
    for n_pairs in range(1, max_degree + 1):
        for seq in _pair_sequences(n_pairs, max_degree):
            deg = sum(r + s for r, s in seq)
            letters = []
            for r, s in seq:
                letters.extend([x] * r)
                letters.extend([y] * s)
            denom = deg
            for r, s in seq:
                denom *= factorial(r) * factorial(s)
            coeff = F((-1) ** (n_pairs - 1), n_pairs * denom)
            out[deg] = out[deg] + _nested_bracket(letters) * coeff
    return out


def bch_partial_sum(x: Matrix, y: Matrix, max_degree: int) -> Matrix:
    terms = bch_series_terms(x, y, max_degree)
    total = Matrix.zeros(x.nrows, x.nrows, x.domain)
    for d in sorted(terms):
        total = total + terms[d]
    return total


def zassenhaus(x: Matrix, y: Matrix) -> list:
    """Ordered exponents [X, Y, c2, c3, ...] with
    exp(X + Y) = exp(X) exp(Y) exp(c2) exp(c3) ... exactly.

    c2 and c3 are the closed-form factors -(1/2)[X,Y] and
    (1/3)[Y,[X,Y]] + (1/6)[X,[X,Y]]; beyond them the residual unipotent
    part is peeled off by exact logarithms until it reaches the identity.
    """
    _require_strictly_upper(x, "X")
    _require_strictly_upper(y, "Y")
    xy = commutator(x, y)
    factors = [
        x,
        y,
        xy * F(-1, 2),
        commutator(y, xy) * F(1, 3) + commutator(x, xy) * F(1, 6),
    ]
    target = exp_nilpotent(x + y)
    while True:
        prod = GroupElement.identity(x.nrows, x.domain)
        for f in factors:
            prod = prod * exp_nilpotent(f)
        residual = prod.inverse() * target
        if _is_zero_matrix(residual.mat - Matrix.identity(x.nrows, x.domain)):
            return factors
        factors.append(log_unipotent(residual))


# ---------------------------------------------------------------------------
# the groups U_Theta and their root-ordered factorisation

def _delta_coords(alpha: RootIndex, n: int):
    """Coordinates of e_i - e_j over the simple roots d_k = e_k - e_{k+1}."""
    lo, hi, sgn = (alpha.i, alpha.j, 1) if alpha.i < alpha.j else (alpha.j, alpha.i, -1)
    return tuple(sgn if lo <= k < hi else 0 for k in range(n - 1))


def root_order_key(alpha: RootIndex, n: int):
    """Lexicographic total order on roots induced by the ordered basis."""
    return _delta_coords(alpha, n)


@dataclass(frozen=True)
class ThetaSet:
    """A set of positive roots closed under addition."""

    n: int
    roots: frozenset

    def __init__(self, n: int, roots):
        roots = frozenset(roots)
        for alpha in roots:
            if not alpha.is_positive:
                raise DomainError(f"{alpha} is not positive")
            if alpha.j >= n:
                raise DomainError(f"{alpha} does not fit in sl_{n}")
        for a in roots:
            for b in roots:
                s = a + b
                if s is not None and s not in roots:
                    raise DomainError(f"not closed under addition: {a} + {b}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "roots", roots)

    @staticmethod
    def all_positive(n: int) -> "ThetaSet":
        return ThetaSet(
            n, [RootIndex(i, j) for i in range(n) for j in range(i + 1, n)]
        )

    def descending(self):
        return sorted(self.roots, key=lambda a: root_order_key(a, self.n), reverse=True)


def _root_component(x: Matrix, alpha: RootIndex) -> Matrix:
    n = x.nrows
    return Matrix(
        x.domain,
        [
            [x.data[a][b] if (a, b) == (alpha.i, alpha.j) else 0 for b in range(n)]
            for a in range(n)
        ],
    )


def u_theta_factorize(u: GroupElement, theta_set: ThetaSet) -> list:
    """Factor u in U_Theta as a product of single-root-group elements in
    descending root order: u = prod_i exp(X_i) with X_i in the root space of
    alpha_i and alpha_1 > ... > alpha_k.

    Peeling runs in ascending order (the minimal root of a closed set can
    always be split off from the right, and removing it keeps the set
    closed); the emitted factors are then read in reverse."""
    n = theta_set.n
    if u.n != n:
        raise DomainError("dimension mismatch")
    logu = log_unipotent(u)
    dec = root_space_decompose(logu)
    if not _is_zero_matrix(dec.zero_part) or any(
        alpha not in theta_set.roots for alpha in dec.components
    ):
        raise NotInUTheta("log(u) is not supported on Theta")
    ascending = list(reversed(theta_set.descending()))
    factors = []
    residual = u
    for alpha in ascending:
        comp = _root_component(log_unipotent(residual), alpha)
        factors.append((alpha, comp))
        residual = residual * exp_nilpotent(-comp)
    assert _is_zero_matrix(residual.mat - Matrix.identity(n, u.mat.domain))
    return list(reversed(factors))


def psi_split(u: GroupElement, theta_set: ThetaSet, psi) -> tuple:
    """Split u in U_Theta as u = u' u'' with u' a descending product over
    Theta intersect Psi and u'' one over Theta minus Psi.

    The root parameters are solved in ascending root order: a parameter
    change at a root only moves log components at strictly larger roots, so
    one pass settles every coordinate."""
    n = theta_set.n
    psi = {a for a in psi}
    desc = theta_set.descending()
    left_roots = [a for a in desc if a in psi]
    right_roots = [a for a in desc if a not in psi]
    params = {a: u.mat.domain.zero for a in desc}

    def build(roots):
        prod = GroupElement.identity(n, u.mat.domain)
        for a in roots:
            mat = Matrix(
                u.mat.domain,
                [
                    [params[a] if (p, q) == (a.i, a.j) else 0 for q in range(n)]
                    for p in range(n)
                ],
            )
            prod = prod * exp_nilpotent(mat)
        return prod

    target_log = log_unipotent(u)
    for alpha in reversed(desc):  # ascending
        current = log_unipotent(build(left_roots) * build(right_roots))
        diff = target_log - current
        params[alpha] = params[alpha] + diff.data[alpha.i][alpha.j]
    u1 = build(left_roots)
    u2 = build(right_roots)
    assert u1 * u2 == u
    return u1, u2


# ---------------------------------------------------------------------------
# Jacobson-Morozov

@dataclass
class Sl2Triple:
    """(X, H, Y) with [H,X] = 2X, [H,Y] = -2Y, [X,Y] = H, all exact."""

    x: Matrix
    h: Matrix
    y: Matrix

    def verify(self):
        two_x = self.x * F(2)
        two_y = self.y * F(2)
        assert commutator(self.h, self.x) == two_x
        assert commutator(self.h, self.y) == -two_y
        assert commutator(self.x, self.y) == self.h
        return True


def _columns_matrix(domain, cols, n):
    return Matrix(domain, [[cols[j][i] for j in range(len(cols))] for i in range(n)])


def _rank_of_columns(domain, cols, n):
    if not cols:
        return 0
    return rank(_columns_matrix(domain, cols, n))


def jacobson_morozov(x: Matrix) -> Sl2Triple:
    """Complete a nonzero nilpotent to an sl2-triple via a Jordan-chain
    basis: on each chain the triple is the standard one for a single Jordan
    block (H = diag(m-1, m-3, ...), Y with entries i(m-i) below the
    diagonal), conjugated back along the chain basis."""
    domain = x.domain
    n = x.nrows
    if _is_zero_matrix(x):
        raise ZeroInput("Jacobson-Morozov needs a nonzero nilpotent")
    q = _nilpotency_index(x)
    powers = [Matrix.identity(n, domain)]
    for _ in range(q):
        powers.append(powers[-1] * x)
    kernels = {0: []}
    for k in range(1, q + 1):
        kernels[k] = kernel(powers[k])
    kernels[q + 1] = kernels[q]
    chains = []
    for k in range(q, 0, -1):
        base = list(kernels[k - 1])
        for w in kernels[k + 1]:
            img = [_apply(x, w)]
            base.extend(img)
        base_rank = _rank_of_columns(domain, base, n)
        for w in kernels[k]:
            if _rank_of_columns(domain, base + [w], n) > base_rank:
                base.append(w)
                base_rank += 1
                chain = [w]
                for _ in range(k - 1):
                    chain.append(_apply(x, chain[-1]))
                chains.append(chain)
    cols = []
    blocks = []
    for chain in sorted(chains, key=len, reverse=True):
        cols.extend(reversed(chain))
        blocks.append(len(chain))
    p = _columns_matrix(domain, cols, n)
    h_rows = [[0] * n for _ in range(n)]
    y_rows = [[F(0)] * n for _ in range(n)]
    offset = 0
    for m in blocks:
        for t in range(m):
            h_rows[offset + t][offset + t] = m - 1 - 2 * t
        for t in range(1, m):
            y_rows[offset + t][offset + t - 1] = F(t * (m - t))
        offset += m
    p_inv = inverse(p)
    h = p * Matrix(domain, h_rows) * p_inv
    y = p * Matrix(domain, y_rows) * p_inv
    triple = Sl2Triple(x, h, y)
    triple.verify()
    return triple


def _apply(x: Matrix, v):
    return tuple(
        _dot_row(row, v, x.domain) for row in x.data
    )


def _dot_row(row, v, domain):
    acc = domain.zero
    for a, b in zip(row, v):
        acc = acc + a * b
    return acc


def jm_basic_triple(alpha: RootIndex, x: Matrix) -> Sl2Triple:
    """The sl2-triple attached to a single-root-space vector by the explicit
    rescaling Y = (-2 / (B_theta(X,X) alpha(H_alpha))) theta(X), H = [X,Y]."""
    n = x.nrows
    domain = x.domain
    for p in range(n):
        for q in range(n):
            if (p, q) != (alpha.i, alpha.j) and not domain.is_zero(x.data[p][q]):
                raise DomainError("X must lie in a single root space")
    if domain.is_zero(x.data[alpha.i][alpha.j]):
        raise ZeroInput("zero root vector")
    h_alpha = _h_alpha(alpha, n, domain)
    alpha_of_h = h_alpha.data[alpha.i][alpha.i] - h_alpha.data[alpha.j][alpha.j]
    scale = F(-2) * domain.invert(b_theta(x, x) * alpha_of_h)
    y = theta(x) * scale
    h = commutator(x, y)
    triple = Sl2Triple(x, h, y)
    triple.verify()
    return triple


def _h_alpha(alpha: RootIndex, n: int, domain) -> Matrix:
    """The element H_alpha of the diagonal Cartan defined by
    alpha(H) = B_theta(H_alpha, H) for every traceless diagonal H."""
    basis = []
    for k in range(n - 1):
        rows = [[0] * n for _ in range(n)]
        rows[k][k] = 1
        rows[k + 1][k + 1] = -1
        basis.append(Matrix(domain, rows))
    gram = [[b_theta(u, v) for v in basis] for u in basis]
    target = [
        [b.data[alpha.i][alpha.i] - b.data[alpha.j][alpha.j]] for b in basis
    ]
    from .linalg import solve

    coeffs = solve(Matrix(domain, gram), Matrix(domain, target))
    h = Matrix.zeros(n, n, domain)
    for k in range(n - 1):
        h = h + basis[k] * coeffs.data[k][0]
    return h


# ---------------------------------------------------------------------------
# root SL2-embeddings

class RootSL2:
    """The (i, j)-block embedding of SL_2 attached to the root e_i - e_j.
    It intertwines transposition, identifies the diagonal with the alpha
    coroot one-parameter group, and carries the Weyl representative
    construction m(u)."""

    def __init__(self, alpha: RootIndex, n: int):
        if alpha.j >= n or alpha.i >= n:
            raise DomainError("root does not fit the matrix size")
        self.alpha = alpha
        self.n = n

    def group(self, h) -> GroupElement:
        mat = h.mat if isinstance(h, GroupElement) else h
        i, j = self.alpha.i, self.alpha.j
        rows = [
            [1 if a == b else 0 for b in range(self.n)] for a in range(self.n)
        ]
        rows[i][i] = mat.data[0][0]
        rows[i][j] = mat.data[0][1]
        rows[j][i] = mat.data[1][0]
        rows[j][j] = mat.data[1][1]
        return GroupElement(Matrix(mat.domain, rows))

    def lie(self, m: Matrix) -> Matrix:
        i, j = self.alpha.i, self.alpha.j
        rows = [[0] * self.n for _ in range(self.n)]
        rows[i][i] = m.data[0][0]
        rows[i][j] = m.data[0][1]
        rows[j][i] = m.data[1][0]
        rows[j][j] = m.data[1][1]
        return Matrix(m.domain, rows)

    def extract(self, g: GroupElement) -> Matrix:
        """The 2x2 matrix h with group(h) = g; NotInImage if g is not in
        the embedded copy."""
        i, j = self.alpha.i, self.alpha.j
        dom = g.mat.domain
        for a in range(self.n):
            for b in range(self.n):
                if (a, b) in ((i, i), (i, j), (j, i), (j, j)):
                    continue
                expected = dom.one if a == b else dom.zero
                if not dom.is_zero(g.mat.data[a][b] - expected):
                    raise NotInImage("element is not in the embedded SL_2")
        return Matrix(
            dom,
            [
                [g.mat.data[i][i], g.mat.data[i][j]],
                [g.mat.data[j][i], g.mat.data[j][j]],
            ],
        )


def sl2_embed(alpha: RootIndex, n: int) -> RootSL2:
    return RootSL2(alpha, n)


def m_element(u: GroupElement, alpha: RootIndex) -> GroupElement:
    """The Weyl representative m(u) attached to u = exp(t X_alpha), t != 0:
    the image of [[0, t], [-1/t, 0]] under the root embedding.  It
    normalises A and inverts the alpha-character; at t = 1 it lies in N and
    swaps the root groups of alpha and -alpha."""
    n = u.n
    emb = RootSL2(alpha, n)
    h = emb.extract(u)
    dom = u.mat.domain
    if not dom.is_zero(h.data[0][0] - dom.one) or not dom.is_zero(
        h.data[1][1] - dom.one
    ) or not dom.is_zero(h.data[1][0]):
        raise NotInImage("u is not a one-parameter element of U_alpha")
    t = h.data[0][1]
    if dom.is_zero(t):
        raise ZeroParameter("m(u) needs t != 0")
    inv_t = dom.invert(t)
    return emb.group(Matrix(dom, [[0, t], [-inv_t, 0]]))


@dataclass
class Rank1Cell:
    tag: str  # "B" or "BmB"
    b1: GroupElement
    m: GroupElement
    b2: GroupElement

    def reconstruct(self) -> GroupElement:
        return self.b1 * self.m * self.b2


def rank1_bruhat_certify(g: GroupElement, alpha: RootIndex) -> Rank1Cell:
    """Place an element of the embedded rank-1 group into its Bruhat cell:
    either the upper-triangular cell B_alpha or the open cell B_alpha m
    B_alpha, with explicit witnesses that multiply back to g."""
    n = g.n
    emb = RootSL2(alpha, n)
    h = emb.extract(g)
    dom = g.mat.domain
    ident = GroupElement.identity(n, dom)
    c = h.data[1][0]
    if dom.is_zero(c):
        return Rank1Cell("B", g, ident, ident)
    a, b, d = h.data[0][0], h.data[0][1], h.data[1][1]
    inv_c = dom.invert(c)
    m2 = Matrix(dom, [[0, 1], [-1, 0]])
    b1 = Matrix(dom, [[1, a * inv_c], [0, 1]])
    b2 = Matrix(dom, [[-c, -d], [0, -inv_c]])
    cell = Rank1Cell(
        "BmB", emb.group(b1), emb.group(m2), emb.group(b2)
    )
    assert cell.reconstruct() == g
    return cell
