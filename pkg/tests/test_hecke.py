"""Bernstein-presentation arithmetic: goldens, inverses, IM basis, oppositions."""

import itertools

import pytest

from iwahori.hecke import hecke_algebra
from iwahori.laurent import Laurent
from iwahori.rootdata import ExtElt, preset_datum

q = Laurent.monomial(1, 2)
one = Laurent.monomial(1)
v = Laurent.monomial(1, 1)


def alg(name):
    d = preset_datum(name)
    return d, hecke_algebra(d)


def test_theta_and_unit():
    d, H = alg("B2")
    assert H.theta((0, 0)) == H.one()
    assert H.theta((2, -1)) * H.theta((-2, 1)) == H.one()
    assert H.t_word(()) == H.one()


def test_delta_half():
    _, gl2 = alg("GL2")
    assert gl2.delta_half_exp((1, 0)) == -1
    assert gl2.delta_half_exp((1, 1)) == 0
    a1d, a1 = alg("A1")
    assert a1.delta_half_exp(a1d.simple_coroots[0]) == -2


def test_cross_examples():
    _, H = alg("GL2")
    assert H.cross(1, (1, 1)) == H.basis((1, 1), (1,))
    assert H.cross(1, (1, 0)) == H.basis((0, 1), (1,)) + H.basis((1, 0), (), q - 1)
    d, A = alg("A1")
    ac = d.simple_coroots[0]
    neg = tuple(-x for x in ac)
    expect = A.basis(neg, (1,)) + (A.theta(ac) + A.one()).scale(q - 1)
    assert A.cross(1, ac) == expect
    assert A.t((1,)) * A.theta(ac) == expect


def test_quadratic_and_braid():
    _, A = alg("A1")
    t = A.t((1,))
    assert t * t == A.scalar(q) + t.scale(q - 1)
    _, A2 = alg("A2")
    assert A2.t((1,)) * A2.t((2,)) * A2.t((1,)) == A2.t((1, 2, 1))


def test_gl2_square():
    _, H = alg("GL2")
    x = H.basis((1, 0), (1,))
    expect = H.basis((1, 1), (), q) + H.basis((1, 1), (1,), q - 1) + H.basis((2, 0), (1,), q - 1)
    assert x * x == expect
    parts = H.decompose_R(x * x)
    W = H.weyl
    assert parts == {W.identity: [((1, 1), q)],
                     W.simple(1): [((1, 1), q - 1), ((2, 0), q - 1)]}


def test_decompose_R_examples():
    _, H = alg("A1")
    t = H.t((1,))
    assert H.decompose_R(t * t) == {H.weyl.identity: [((0,), q)], H.weyl.simple(1): [((0,), q - 1)]}
    assert H.decompose_R(H.basis((3,), (1,))) == {H.weyl.simple(1): [((3,), one)]}


def test_inverses():
    _, A = alg("A1")
    qi = Laurent.monomial(1, -2)
    assert A.t_inv((1,)) == A.t((1,)).scale(qi) - A.scalar(one - qi)
    assert A.t_inv(()) == A.one()
    _, A2 = alg("A2")
    assert A2.t_inv((1, 2)) == A2.t_inv((2,)) * A2.t_inv((1,))
    for w in A2.weyl:
        assert A2.t_inv(w) * A2.t(w) == A2.one()


def test_im_examples():
    _, gl2 = alg("GL2")
    e = gl2.weyl.identity
    assert gl2.im(ExtElt((1, 0), e)) == gl2.basis((1, 0), (), v)
    for w in gl2.weyl:
        assert gl2.im(ExtElt((0, 0), w)) == gl2.t(w)
    d, A = alg("A1")
    ac = d.simple_coroots[0]
    neg = tuple(-x for x in ac)
    th1 = A.theta(ac) + A.one()
    expect = A.basis(neg, (), q) + (th1 * A.t((1,))).scale(q - 1) - th1.scale((q - 1) * (q - 1))
    assert A.im(ExtElt(neg, d.weyl.identity)) == expect
    # the same element as v^2 T_s Theta T_s^{-1}
    assert expect == (A.t((1,)) * A.theta(ac) * A.t_inv((1,))).scale(q)


def test_star_examples():
    d, A2 = alg("A2")
    assert A2.star_im(A2.t((1, 2))) == A2.t((2, 1))
    assert A2.star_im(A2.one()) == A2.one()
    a1d, A = alg("A1")
    ac = a1d.simple_coroots[0]
    neg = tuple(-x for x in ac)
    qi = Laurent.monomial(1, -2)
    th1 = A.theta(ac) + A.one()
    expect = (A.theta(neg) + (th1 * A.t((1,))).scale(qi * (q - 1))
              - th1.scale(qi * (q - 1) * (q - 1)))
    assert A.star_im(A.theta(ac)) == expect
    assert expect == A.t((1,)) * A.theta(ac) * A.t_inv((1,))
    assert A.star_b(A.theta(ac)) == A.t_inv((1,)) * A.theta(ac) * A.t((1,))
    for w in A2.weyl:
        assert A2.star_b(A2.t(w)) == A2.t(w.inverse())
    c = Laurent({3: 2, -1: -5})
    assert A2.star_b(A2.scalar(c)) == A2.scalar(c)


@pytest.mark.parametrize("name", ["A1", "GL2", "A2"])
def test_star_im_matches_reference(name):
    d, H = alg(name)
    for mu in itertools.product(range(-2, 3), repeat=d.rank):
        assert H.star_im(H.theta(mu)) == H.star_im_theta_reference(mu)


def test_specialize_v1_of_im():
    d, H = alg("A2")
    x = ExtElt((1, -2), d.weyl.from_word((2, 1)))
    assert H.im(x).specialize_v1() == {((1, -2), x.w): 1}


def test_datum_mismatch():
    _, A = alg("A1")
    _, B = alg("GL2")
    with pytest.raises(ValueError):
        A.one() + B.one()
    with pytest.raises(ValueError):
        A.one() * B.one()
