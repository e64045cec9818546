"""Finite crystallographic root systems with Weyl groups and Kostant cone data.

Roots are integer coordinate vectors over the simple basis; the inner
product is a fixed Gram matrix per type (A_n normalised to <d_i, d_i> = 2
with adjacent product -1; B_2 long/short 4/2; G_2 short/long 2/6).  The
Kostant data consists of the coroot-side generators x_i of the cone, the
primitive lattice vectors e_j orthogonal to the facet hyperplanes E_j, and
their character-side counterparts gamma_j.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

from .errors import UnsupportedType

F = Fraction


class RootSystem:
    __slots__ = ("name", "rank", "gram", "simple_roots", "positive_roots", "all_roots")

    def __init__(self, name, gram):
        self.name = name
        self.rank = len(gram)
        self.gram = tuple(tuple(F(x) for x in row) for row in gram)
        self.simple_roots = tuple(
            tuple(1 if j == i else 0 for j in range(self.rank))
            for i in range(self.rank)
        )
        self.all_roots = self._generate()
        self.positive_roots = tuple(
            r for r in self.all_roots if _is_positive(r)
        )
        self._validate()

    def inner(self, u, v) -> Fraction:
        total = F(0)
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if vj:
                    total += F(ui) * F(vj) * self.gram[i][j]
        return total

    def reflect(self, root_index: int, v):
        """Reflection of v in the simple root with the given index."""
        delta = self.simple_roots[root_index]
        c = 2 * self.inner(v, delta) / self.gram[root_index][root_index]
        return tuple(F(x) - c * F(d) for x, d in zip(v, delta))

    def _generate(self):
        roots = set(self.simple_roots) | {tuple(-x for x in r) for r in self.simple_roots}
        frontier = set(roots)
        while frontier:
            new = set()
            for v in frontier:
                for i in range(self.rank):
                    img = self.reflect(i, v)
                    imgi = tuple(int(x) for x in img)
                    if any(F(a) != b for a, b in zip(imgi, img)):
                        raise UnsupportedType("non-integral reflection image")
                    if imgi not in roots:
                        new.add(imgi)
            roots |= new
            frontier = new
        return tuple(sorted(roots, reverse=True))

    def _validate(self):
        roots = set(self.all_roots)
        assert all(tuple(-x for x in r) in roots for r in roots)
        assert all(any(r) for r in roots)
        for alpha in roots:
            aa = self.inner(alpha, alpha)
            for beta in roots:
                c = 2 * self.inner(alpha, beta) / aa
                assert c.denominator == 1, "crystallographic axiom violated"

    def __repr__(self):
        return f"RootSystem({self.name}, {len(self.all_roots)} roots)"


def _is_positive(root) -> bool:
    for x in root:
        if x:
            return x > 0
    return False


_GRAMS = {
    "B2": [[4, -2], [-2, 2]],
    "G2": [[2, -3], [-3, 6]],
}


def build(type_name: str) -> RootSystem:
    """Construct a root system of type A_n (any n >= 1), B_2 or G_2."""
    name = type_name.replace("_", "").strip()
    m = re.fullmatch(r"A(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise UnsupportedType(type_name)
        gram = [
            [2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)]
            for i in range(n)
        ]
        return RootSystem(f"A{n}", gram)
    if name in _GRAMS:
        return RootSystem(name, _GRAMS[name])
    raise UnsupportedType(f"unsupported root system type {type_name!r}")


# ---------------------------------------------------------------------------
# Weyl group

class WeylElement:
    """An orthogonal map stored by its matrix over the simple-root basis,
    together with a reduced word in the simple reflections."""

    __slots__ = ("matrix", "word")

    def __init__(self, matrix, word):
        self.matrix = matrix
        self.word = word

    def apply(self, v):
        n = len(self.matrix)
        return tuple(
            sum(self.matrix[i][j] * v[j] for j in range(n)) for i in range(n)
        )

    def __eq__(self, other):
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"WeylElement(word={self.word})"


class WeylGroup:
    __slots__ = ("system", "elements", "generators")

    def __init__(self, system: RootSystem, elements, generators):
        self.system = system
        self.elements = elements
        self.generators = generators

    def __len__(self):
        return len(self.elements)

    def compose(self, a: WeylElement, b: WeylElement) -> WeylElement:
        n = len(a.matrix)
        mat = tuple(
            tuple(
                sum(a.matrix[i][k] * b.matrix[k][j] for k in range(n))
                for j in range(n)
            )
            for i in range(n)
        )
        for e in self.elements:
            if e.matrix == mat:
                return e
        raise AssertionError("Weyl group not closed")  # pragma: no cover

    def element_orders(self):
        identity = tuple(
            tuple(1 if i == j else 0 for j in range(self.system.rank))
            for i in range(self.system.rank)
        )
        orders = []
        for e in self.elements:
            k, cur = 1, e
            while cur.matrix != identity:
                cur = self.compose(cur, e)
                k += 1
            orders.append(k)
        return sorted(orders)


def weyl(rs: RootSystem) -> WeylGroup:
    """Full enumeration of the reflection group, by breadth-first closure of
    the simple reflections (so the stored words are reduced)."""
    n = rs.rank

    def reflection_matrix(i):
        cols = []
        for j in range(n):
            img = rs.reflect(i, rs.simple_roots[j])
            cols.append(tuple(int(x) for x in img))
        return tuple(zip(*cols))

    gens = [WeylElement(reflection_matrix(i), (i,)) for i in range(n)]
    identity = WeylElement(
        tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), ()
    )
    seen = {identity.matrix: identity}
    frontier = [identity]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                mat = tuple(
                    tuple(
                        sum(g.matrix[i][k] * w.matrix[k][j] for k in range(n))
                        for j in range(n)
                    )
                    for i in range(n)
                )
                if mat not in seen:
                    elem = WeylElement(mat, g.word + w.word)
                    seen[mat] = elem
                    new.append(elem)
        frontier = new
    elements = list(seen.values())
    # sanity: every element permutes the root set
    roots = set(rs.all_roots)
    for e in elements:
        assert {e.apply(r) for r in roots} == roots
    return WeylGroup(rs, elements, gens)


# ---------------------------------------------------------------------------
# Kostant cone data

class ConeData:
    __slots__ = ("system", "x", "e", "gamma")

    def __init__(self, system, x, e, gamma):
        self.system = system
        self.x = x
        self.e = e
        self.gamma = gamma


def cone_data(rs: RootSystem) -> ConeData:
    """The cone generators x_i = (2/<d_i,d_i>) H_i, the primitive lattice
    normals e_j of the facet hyperplanes E_j = span(x_k : k != j) fixed on
    the cone side by <e_j, x_j> > 0, and the gamma_j: the e_j read on the
    character side through the Gram identification."""
    r = rs.rank
    x = [
        tuple((F(2) / rs.gram[i][i]) if j == i else F(0) for j in range(r))
        for i in range(r)
    ]
    es = []
    for j in range(r):
        # primitive integer kernel of <v, x_i> = 0 for i != j, v over the H-basis
        if r == 1:
            vec = (1,)
        else:
            rows = [
                [rs.inner(_unit(r, k), x[i]) for k in range(r)]
                for i in range(r)
                if i != j
            ]
            vec = _primitive_integer_kernel(rows, r)
        if rs.inner(vec, x[j]) < 0:
            vec = tuple(-v for v in vec)
        assert rs.inner(vec, x[j]) > 0
        assert all(rs.inner(vec, x[i]) == 0 for i in range(r) if i != j)
        es.append(vec)
    gammas = [tuple(v) for v in es]
    return ConeData(rs, x, es, gammas)


def _unit(r, k):
    return tuple(1 if t == k else 0 for t in range(r))


def _primitive_integer_kernel(rows, n):
    """Primitive integer generator of the 1-dimensional kernel of the given
    (n-1) x n rational matrix."""
    m = [[F(x) for x in row] for row in rows]
    piv_cols = []
    pr = 0
    for pc in range(n):
        pivot = None
        for i in range(pr, len(m)):
            if m[i][pc] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[pr], m[pivot] = m[pivot], m[pr]
        inv = 1 / m[pr][pc]
        m[pr] = [a * inv for a in m[pr]]
        for i in range(len(m)):
            if i != pr and m[i][pc] != 0:
                f = m[i][pc]
                m[i] = [a - f * b for a, b in zip(m[i], m[pr])]
        piv_cols.append(pc)
        pr += 1
    free = [c for c in range(n) if c not in piv_cols]
    assert len(free) == 1, "facet normal is not one-dimensional"
    fc = free[0]
    v = [F(0)] * n
    v[fc] = F(1)
    for row_idx, pc in enumerate(piv_cols):
        v[pc] = -m[row_idx][fc]
    den = 1
    for q in v:
        den = den * q.denominator // gcd(den, q.denominator)
    ints = [int(q * den) for q in v]
    g = 0
    for q in ints:
        g = gcd(g, q)
    return tuple(q // g for q in ints)


def eta_plus(rs: RootSystem):
    """The sum of the positive roots, in simple-root coordinates."""
    total = [0] * rs.rank
    for root in rs.positive_roots:
        for i, c in enumerate(root):
            total[i] += c
    return tuple(total)


def gamma_coefficients(rs: RootSystem, cd: ConeData, eta):
    """Coefficients of eta over the gamma basis: <eta, d_l> / <gamma_l, d_l>."""
    out = []
    for ell in range(rs.rank):
        delta = rs.simple_roots[ell]
        out.append(rs.inner(eta, delta) / rs.inner(cd.gamma[ell], delta))
    return out


def eta_plus_expansion(rs: RootSystem):
    """Expansion coefficients of the positive-root sum over the gamma_l;
    all of them are strictly positive."""
    cd = cone_data(rs)
    coeffs = gamma_coefficients(rs, cd, eta_plus(rs))
    assert all(c > 0 for c in coeffs)
    return coeffs
