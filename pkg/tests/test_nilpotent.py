import random
from fractions import Fraction

import pytest

from rcg.errors import (
    DomainError,
    NotInUTheta,
    NotNilpotent,
    NotUnipotent,
    ZeroInput,
    ZeroParameter,
)
from rcg.linalg import Matrix, commutator
from rcg.nilpotent import (
    ThetaSet,
    bch,
    bch_partial_sum,
    bch_series_terms,
    exp_nilpotent,
    jacobson_morozov,
    jm_basic_triple,
    log_unipotent,
    m_element,
    psi_split,
    rank1_bruhat_certify,
    root_order_key,
    sl2_embed,
    u_theta_factorize,
    zassenhaus,
)
from rcg.slgroup import GroupElement, RootIndex, chi, member_N

F = Fraction


def E(n, i, j, c=1):
    return Matrix.tower(
        [[c if (a, b) == (i, j) else 0 for b in range(n)] for a in range(n)]
    )


def rand_upper(rng, n, bound=4):
    return Matrix.tower(
        [
            [
                F(rng.randint(-bound, bound), rng.randint(1, 3)) if j > i else 0
                for j in range(n)
            ]
            for i in range(n)
        ]
    )


# ---------------------------------------------------------------------------
# exp / log

def test_exp_basics():
    assert exp_nilpotent(Matrix.zeros(2, 2)) == GroupElement.identity(2)
    t = F(7, 3)
    assert exp_nilpotent(E(2, 0, 1, t)) == GroupElement.tower([[1, t], [0, 1]])


def test_log_worked_example():
    u = GroupElement.tower([[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    assert log_unipotent(u) == E(3, 0, 1) + E(3, 1, 2) + E(3, 0, 2, F(1, 2))


def test_exp_log_errors():
    with pytest.raises(NotNilpotent):
        exp_nilpotent(Matrix.identity(2))
    with pytest.raises(NotUnipotent):
        log_unipotent(GroupElement.tower([[2, 0], [0, F(1, 2)]]))


def test_exp_log_inverse_random():
    rng = random.Random(101)
    for _ in range(300):
        n = rng.choice([2, 3, 4])
        x = rand_upper(rng, n)
        assert log_unipotent(exp_nilpotent(x)) == x


# ---------------------------------------------------------------------------
# BCH

def test_bch_trivial_cases():
    x = E(3, 0, 1)
    zero = Matrix.zeros(3, 3)
    assert bch(x, zero) == x
    y = E(3, 0, 2)  # commutes with x
    assert bch(x, y) == x + y


def test_bch_worked_example():
    z = bch(E(3, 0, 1), E(3, 1, 2))
    assert z == E(3, 0, 1) + E(3, 1, 2) + E(3, 0, 2, F(1, 2))


def test_bch_requires_strictly_upper():
    with pytest.raises(NotNilpotent):
        bch(E(2, 0, 1), E(2, 1, 0))


def test_dynkin_degree3_matches_printed_coefficients():
    # through degree 3 the series is X + Y + (1/2)[X,Y]
    # + (1/12)([X,[X,Y]] + [Y,[Y,X]]); on sl_4 strictly uppers every
    # degree >= 4 bracket vanishes, so the partial sum equals the exact log.
    rng = random.Random(103)
    for _ in range(30):
        x, y = rand_upper(rng, 4), rand_upper(rng, 4)
        xy = commutator(x, y)
        closed = (
            x
            + y
            + xy * F(1, 2)
            + (commutator(x, xy) + commutator(y, commutator(y, x))) * F(1, 12)
        )
        assert bch_partial_sum(x, y, 3) == closed
        assert bch(x, y) == closed


def test_dynkin_degree4_single_term():
    # degree-4 component collapses to -(1/24)[Y,[X,[X,Y]]]: a free-Lie
    # identity, so it holds for arbitrary matrices; check sl_4 uppers (where
    # both sides vanish) and dense 3x3 integer matrices (where they do not)
    rng = random.Random(107)
    for _ in range(10):
        x, y = rand_upper(rng, 4), rand_upper(rng, 4)
        d4 = bch_series_terms(x, y, 4)[4]
        expected = commutator(y, commutator(x, commutator(x, y))) * F(-1, 24)
        assert d4 == expected
    for _ in range(10):
        x = Matrix.tower([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
        y = Matrix.tower([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
        d4 = bch_series_terms(x, y, 4)[4]
        expected = commutator(y, commutator(x, commutator(x, y))) * F(-1, 24)
        assert d4 == expected


# ---------------------------------------------------------------------------
# Zassenhaus

def test_zassenhaus_commuting():
    x, y = E(3, 0, 1), E(3, 0, 2)
    factors = zassenhaus(x, y)
    for f in factors[2:]:
        assert f == Matrix.zeros(3, 3)


def test_zassenhaus_rejects_non_upper():
    with pytest.raises(NotNilpotent):
        zassenhaus(E(2, 0, 1), E(2, 1, 0))


def test_zassenhaus_printed_factors_close_sl4():
    # in sl_4 the printed c2, c3 close the expansion: no residual remains
    rng = random.Random(109)
    for _ in range(20):
        x, y = rand_upper(rng, 4), rand_upper(rng, 4)
        factors = zassenhaus(x, y)
        assert len(factors) == 4
        xy = commutator(x, y)
        assert factors[2] == xy * F(-1, 2)
        assert factors[3] == commutator(y, xy) * F(1, 3) + commutator(x, xy) * F(1, 6)


def test_zassenhaus_reconstructs_sl5():
    rng = random.Random(113)
    for _ in range(5):
        x, y = rand_upper(rng, 5, 2), rand_upper(rng, 5, 2)
        factors = zassenhaus(x, y)
        prod = GroupElement.identity(5)
        for f in factors:
            prod = prod * exp_nilpotent(f)
        assert prod == exp_nilpotent(x + y)


def test_bch_example_reconstruction():
    x, y = E(3, 0, 1), E(3, 0, 2) + E(3, 1, 2)
    factors = zassenhaus(x, y)
    prod = GroupElement.identity(3)
    for f in factors:
        prod = prod * exp_nilpotent(f)
    assert prod == exp_nilpotent(x + y)


# ---------------------------------------------------------------------------
# U_Theta factorisation

def test_theta_set_validation():
    ThetaSet(3, [RootIndex(0, 1), RootIndex(1, 2), RootIndex(0, 2)])
    with pytest.raises(DomainError):
        ThetaSet(3, [RootIndex(0, 1), RootIndex(1, 2)])  # missing the sum
    with pytest.raises(DomainError):
        ThetaSet(3, [RootIndex(1, 0)])  # negative root


def test_root_order_is_lex_by_simple_coordinates():
    n = 3
    hi = RootIndex(0, 2)
    assert root_order_key(hi, n) > root_order_key(RootIndex(0, 1), n)
    assert root_order_key(RootIndex(0, 1), n) > root_order_key(RootIndex(1, 2), n)


def test_u_theta_factorize_worked_example():
    u = exp_nilpotent(E(3, 0, 1) + E(3, 1, 2))
    theta = ThetaSet.all_positive(3)
    factors = u_theta_factorize(u, theta)
    assert [alpha for alpha, _ in factors] == [
        RootIndex(0, 2),
        RootIndex(0, 1),
        RootIndex(1, 2),
    ]
    by_root = {alpha: comp for alpha, comp in factors}
    assert by_root[RootIndex(0, 2)] == E(3, 0, 2, F(-1, 2))
    prod = GroupElement.identity(3)
    for _, comp in factors:
        prod = prod * exp_nilpotent(comp)
    assert prod == u


def test_u_theta_factorize_trivial_cases():
    theta = ThetaSet.all_positive(3)
    u = exp_nilpotent(E(3, 0, 1, F(5)))
    factors = u_theta_factorize(u, theta)
    prod = GroupElement.identity(3)
    for _, comp in factors:
        prod = prod * exp_nilpotent(comp)
    assert prod == u
    ident = GroupElement.identity(3)
    assert all(
        comp == Matrix.zeros(3, 3) for _, comp in u_theta_factorize(ident, theta)
    )


def test_u_theta_factorize_not_in_theta():
    theta = ThetaSet(3, [RootIndex(1, 2)])
    u = exp_nilpotent(E(3, 0, 1))
    with pytest.raises(NotInUTheta):
        u_theta_factorize(u, theta)


def test_u_theta_factorize_random_sl4():
    rng = random.Random(127)
    theta = ThetaSet.all_positive(4)
    for _ in range(25):
        u = exp_nilpotent(rand_upper(rng, 4))
        factors = u_theta_factorize(u, theta)
        keys = [root_order_key(alpha, 4) for alpha, _ in factors]
        assert keys == sorted(keys, reverse=True)
        prod = GroupElement.identity(4)
        for _, comp in factors:
            prod = prod * exp_nilpotent(comp)
        assert prod == u


def test_normalizer_conjugation_stays_in_theta():
    # with Theta-union-{alpha} closed and alpha above all of Theta,
    # exp(g_alpha) normalises U_Theta
    rng = random.Random(131)
    alpha = RootIndex(0, 3)
    theta = ThetaSet(4, [RootIndex(1, 3), RootIndex(2, 3)])
    assert all(root_order_key(alpha, 4) > root_order_key(b, 4) for b in theta.roots)
    for _ in range(20):
        u = exp_nilpotent(
            E(4, 1, 3, F(rng.randint(-4, 4), 3)) + E(4, 2, 3, F(rng.randint(-4, 4)))
        )
        w = exp_nilpotent(E(4, alpha.i, alpha.j, F(rng.randint(-5, 5), 2)))
        conj = w * u * w.inverse()
        u_theta_factorize(conj, theta)  # raises if support escapes


def test_psi_split_random():
    rng = random.Random(137)
    theta = ThetaSet.all_positive(4)
    all_roots = sorted(theta.roots, key=lambda a: root_order_key(a, 4))
    for _ in range(15):
        u = exp_nilpotent(rand_upper(rng, 4))
        psi = {a for a in all_roots if rng.random() < 0.5}
        u1, u2 = psi_split(u, theta, psi)
        assert u1 * u2 == u
        # u1 is supported on Psi, u2 on the complement
        for alpha, comp in u_theta_factorize(u1, theta):
            if comp != Matrix.zeros(4, 4):
                assert alpha in psi
        for alpha, comp in u_theta_factorize(u2, theta):
            if comp != Matrix.zeros(4, 4):
                assert alpha not in psi


# ---------------------------------------------------------------------------
# Jacobson-Morozov

def test_jm_sl2():
    triple = jacobson_morozov(E(2, 0, 1))
    assert triple.h == Matrix.tower([[1, 0], [0, -1]])
    assert triple.y == E(2, 1, 0)


def test_jm_regular_sl3():
    x = E(3, 0, 1) + E(3, 1, 2)
    triple = jacobson_morozov(x)
    assert triple.h == Matrix.tower([[2, 0, 0], [0, 0, 0], [0, 0, -2]])
    assert triple.y == E(3, 1, 0, 2) + E(3, 2, 1, 2)


def test_jm_minimal_sl3():
    triple = jacobson_morozov(E(3, 0, 2))
    triple.verify()
    # weights (1, 0, -1) up to basis: trace of h^2 is 2
    assert (triple.h * triple.h).trace() == 2


def test_jm_zero_input():
    with pytest.raises(ZeroInput):
        jacobson_morozov(Matrix.zeros(3, 3))
    with pytest.raises(NotNilpotent):
        jacobson_morozov(Matrix.identity(3))


def jordan_type_matrix(blocks):
    n = sum(blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for m in blocks:
        for t in range(m - 1):
            rows[off + t][off + t + 1] = 1
        off += m
    return Matrix.tower(rows)


def test_jm_all_sl4_jordan_types_random_conjugates():
    rng = random.Random(139)
    types = [(4,), (3, 1), (2, 2), (2, 1, 1)]
    for blocks in types:
        base = jordan_type_matrix(blocks)
        for _ in range(25):
            upper = GroupElement.tower(
                [
                    [1, rng.randint(-2, 2), rng.randint(-2, 2), rng.randint(-2, 2)],
                    [0, 1, rng.randint(-2, 2), rng.randint(-2, 2)],
                    [0, 0, 1, rng.randint(-2, 2)],
                    [0, 0, 0, 1],
                ]
            )
            lower = GroupElement.tower(
                [
                    [1, 0, 0, 0],
                    [rng.randint(-2, 2), 1, 0, 0],
                    [rng.randint(-2, 2), rng.randint(-2, 2), 1, 0],
                    [rng.randint(-2, 2), rng.randint(-2, 2), rng.randint(-2, 2), 1],
                ]
            )
            g = upper * lower
            x = g.mat * base * g.inverse().mat
            triple = jacobson_morozov(x)
            assert triple.verify()


def test_jm_basic_triple_sl2():
    triple = jm_basic_triple(RootIndex(0, 1), E(2, 0, 1))
    assert triple.h == Matrix.tower([[1, 0], [0, -1]])
    assert triple.y == E(2, 1, 0)


def test_jm_basic_triple_scaling():
    t1 = jm_basic_triple(RootIndex(0, 1), E(2, 0, 1))
    t2 = jm_basic_triple(RootIndex(0, 1), E(2, 0, 1, 2))
    assert t2.y == t1.y * F(1, 2)
    assert t2.verify()


def test_jm_basic_triple_block_locality():
    triple = jm_basic_triple(RootIndex(1, 2), E(3, 1, 2))
    for a in range(3):
        for b in range(3):
            if a == 0 or b == 0:
                assert triple.h[a, b].is_zero()
                assert triple.y[a, b].is_zero()
    assert triple.verify()


# ---------------------------------------------------------------------------
# root SL2-embeddings and m(u)

def test_embedding_transpose_equivariance():
    emb = sl2_embed(RootIndex(0, 2), 3)
    h = Matrix.tower([[2, 1], [1, 1]])
    assert emb.group(GroupElement(h)).mat.transpose() == emb.group(
        GroupElement(h.transpose())
    ).mat


def test_oneparam_character_square():
    lam = F(5, 3)
    alpha = RootIndex(0, 1)
    emb = sl2_embed(alpha, 3)
    a = emb.group(Matrix.tower([[lam, 0], [0, 1 / lam]]))
    assert chi(alpha, a) == lam * lam


def test_m_element_sl2():
    u = GroupElement.tower([[1, 1], [0, 1]])
    m = m_element(u, RootIndex(0, 1))
    assert m == GroupElement.tower([[0, 1], [-1, 0]])
    assert member_N(m)


def test_m_element_zero_parameter():
    with pytest.raises(ZeroParameter):
        m_element(GroupElement.identity(2), RootIndex(0, 1))


def test_m_element_inverts_character():
    rng = random.Random(149)
    alpha = RootIndex(0, 2)
    for _ in range(15):
        t = F(rng.randint(1, 7), rng.randint(1, 4))
        u = exp_nilpotent(E(3, 0, 2, t))
        m = m_element(u, alpha)
        d1, d2 = F(rng.randint(1, 6)), F(rng.randint(1, 6))
        a = GroupElement.tower(
            [[d1, 0, 0], [0, d2, 0], [0, 0, 1 / (d1 * d2)]]
        )
        conj = m * a * m.inverse()
        assert chi(alpha, conj) == 1 / chi(alpha, a)


def test_m_element_swaps_root_groups_at_t1():
    alpha = RootIndex(0, 1)
    u = exp_nilpotent(E(3, 0, 1))
    m = m_element(u, alpha)
    assert member_N(m)
    for t in (F(2), F(-1, 3)):
        v = exp_nilpotent(E(3, 0, 1, t))
        conj = m * v * m.inverse()
        lg = log_unipotent(conj)
        assert not lg[1, 0].is_zero()
        assert all(
            lg[a, b].is_zero() for a in range(3) for b in range(3) if (a, b) != (1, 0)
        )


def test_rank1_bruhat_cells():
    alpha = RootIndex(0, 1)
    emb = sl2_embed(alpha, 3)
    upper = emb.group(Matrix.tower([[2, 3], [0, F(1, 2)]]))
    cell = rank1_bruhat_certify(upper, alpha)
    assert cell.tag == "B"
    rot = emb.group(Matrix.tower([[0, 1], [-1, 0]]))
    cell = rank1_bruhat_certify(rot, alpha)
    assert cell.tag == "BmB" and cell.reconstruct() == rot
    lower = emb.group(Matrix.tower([[1, 0], [1, 1]]))
    cell = rank1_bruhat_certify(lower, alpha)
    assert cell.tag == "BmB"
    assert cell.reconstruct() == lower
    # cross-check against the global Bruhat cell
    from rcg.decomp import bruhat

    assert bruhat(lower).w != GroupElement.identity(3)
    assert bruhat(upper).w == GroupElement.identity(3)


def test_rank1_bruhat_not_in_image():
    from rcg.errors import NotInImage

    g = GroupElement.tower([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(NotInImage):
        rank1_bruhat_certify(g, RootIndex(0, 1))
