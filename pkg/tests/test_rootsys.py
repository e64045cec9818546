import random
from fractions import Fraction
from math import gcd

import pytest

from rcg.errors import UnsupportedType
from rcg.rootsys import (
    build,
    cone_data,
    eta_plus,
    eta_plus_expansion,
    gamma_coefficients,
    weyl,
)

F = Fraction


def test_build_counts():
    assert len(build("A1").all_roots) == 2
    assert len(build("A2").all_roots) == 6
    assert len(build("B2").all_roots) == 8
    assert len(build("G2").all_roots) == 12
    assert len(build("A3").all_roots) == 12


def test_build_unsupported():
    with pytest.raises(UnsupportedType):
        build("E8")
    with pytest.raises(UnsupportedType):
        build("B3")


def test_crystallographic_integrality():
    for name in ("A1", "A2", "A3", "B2", "G2"):
        rs = build(name)
        for alpha in rs.all_roots:
            aa = rs.inner(alpha, alpha)
            for beta in rs.all_roots:
                c = 2 * rs.inner(alpha, beta) / aa
                assert c.denominator == 1


def test_reflection_stability():
    for name in ("A2", "B2", "G2"):
        rs = build(name)
        roots = set(rs.all_roots)
        for i in range(rs.rank):
            for r in roots:
                img = tuple(int(x) for x in rs.reflect(i, r))
                assert img in roots


def test_weyl_orders():
    assert len(weyl(build("A1"))) == 2
    assert len(weyl(build("A2"))) == 6
    assert len(weyl(build("B2"))) == 8
    assert len(weyl(build("G2"))) == 12
    assert len(weyl(build("A3"))) == 24


def test_weyl_words_and_root_action():
    w = weyl(build("A2"))
    # identity has the empty word; generators have length-1 words
    lengths = sorted(len(e.word) for e in w.elements)
    assert lengths == [0, 1, 1, 2, 2, 3]


def test_cone_data_a2():
    rs = build("A2")
    cd = cone_data(rs)
    assert cd.gamma[0] == (2, 1)
    assert cd.gamma[1] == (1, 2)
    for j, e in enumerate(cd.e):
        assert gcd(*e) == 1
        assert rs.inner(e, cd.x[j]) > 0


def test_cone_data_a1():
    cd = cone_data(build("A1"))
    assert cd.gamma[0] == (1,)


def test_cone_data_g2():
    rs = build("G2")
    cd = cone_data(rs)
    for j in range(2):
        assert rs.inner(cd.gamma[j], rs.simple_roots[j]) > 0
        other = 1 - j
        assert rs.inner(cd.e[j], cd.x[other]) == 0


def test_eta_plus_expansion_a2():
    rs = build("A2")
    assert eta_plus(rs) == (2, 2)
    assert eta_plus_expansion(rs) == [F(2, 3), F(2, 3)]


def test_eta_plus_expansion_a1():
    assert eta_plus_expansion(build("A1")) == [1]


def test_eta_plus_expansion_g2_positive():
    coeffs = eta_plus_expansion(build("G2"))
    assert all(c > 0 for c in coeffs)


def test_g2_counter_anchor():
    # the naive candidate delta_1 + delta_2 has a negative gamma-coefficient
    rs = build("G2")
    cd = cone_data(rs)
    coeffs = gamma_coefficients(rs, cd, (1, 1))
    assert any(c < 0 for c in coeffs)


def test_gamma_identity_random_lattice():
    rng = random.Random(31)
    for name in ("A2", "G2"):
        rs = build(name)
        cd = cone_data(rs)
        for ell in range(rs.rank):
            assert rs.inner(cd.gamma[ell], rs.simple_roots[ell]) > 0
        for _ in range(50):
            eta = tuple(rng.randint(-10, 10) for _ in range(rs.rank))
            coeffs = gamma_coefficients(rs, cd, eta)
            recon = [F(0)] * rs.rank
            for c, g in zip(coeffs, cd.gamma):
                for i in range(rs.rank):
                    recon[i] += c * g[i]
            assert tuple(recon) == tuple(F(x) for x in eta)
