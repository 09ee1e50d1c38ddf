"""Levi subalgebras: embedding, coset decompositions, transport, oppositions."""

import random

import pytest

from iwahori.checks import all_levis, random_element
from iwahori.hecke import hecke_algebra
from iwahori.parabolic import ORIENTATIONS, parabolic
from iwahori.rootdata import PRESETS, preset_datum


@pytest.fixture(scope="module")
def a2():
    return preset_datum("A2")


def test_embed_generators(a2):
    ctx = parabolic(a2, [1])
    H, HM = ctx.H, ctx.HM
    assert ctx.embed(HM.theta((2, -1))) == H.theta((2, -1))
    assert ctx.embed(HM.t((1,))) == H.t((1,))
    assert ctx.embed(HM.one()) == H.one()
    # local index 1 of the Levi {2} is the global s2
    ctx2 = parabolic(a2, [2])
    assert ctx2.embed(ctx2.HM.t((1,))) == H.t((2,))


def test_embed_rejects_outside_support(a2):
    ctx = parabolic(a2, [1])
    with pytest.raises(ValueError):
        ctx.to_levi(ctx.H.t((2,)))


def test_decompose_left_examples(a2):
    ctx = parabolic(a2, [1])
    H, W = ctx.H, a2.weyl
    mu = (1, -2)
    parts = ctx.decompose_left(H.basis(mu, (1, 2)))
    assert parts == {W.from_word((2,)): ctx.HM.basis(mu, (1,))}
    parts = ctx.decompose_left(H.basis(mu, (1,)))
    assert parts == {W.identity: ctx.HM.basis(mu, (1,))}
    parts = ctx.decompose_left(H.t((1, 2, 1)))
    assert parts == {W.from_word((2, 1)): ctx.HM.t((1,))}


@pytest.mark.parametrize("name", PRESETS)
def test_roundtrips(name):
    d = preset_datum(name)
    H = hecke_algebra(d)
    rng = random.Random(f"roundtrip:{name}")
    for L in all_levis(d):
        ctx = parabolic(d, L)
        for _ in range(5):
            h = random_element(H, rng, 4, 2)
            assert ctx.reassemble_left(ctx.decompose_left(h)) == h
            assert ctx.reassemble_right(ctx.decompose_right(h)) == h


def test_levi_star_examples(a2):
    ctx = parabolic(a2, [1])
    HM = ctx.HM
    assert ctx.levi_star_b(HM.t((1,))) == HM.t((1,))
    assert ctx.levi_star_b(HM.one()) == HM.one()
    mu = (2, -1)
    s1 = ctx.W_M[1]
    twisted = tuple(-x for x in s1.act(mu))
    expect = HM.t_inv((1,)) * HM.theta(twisted) * HM.t((1,))
    assert ctx.levi_star_b(HM.theta(mu)) == expect


def test_full_levi_star_is_star_b():
    for name in ("A2", "B2"):
        d = preset_datum(name)
        ctx = parabolic(d, None)
        H = ctx.H
        rng = random.Random(1)
        for _ in range(3):
            h = random_element(H, rng, 3, 2)
            assert ctx.levi_star_b(h) == H.star_b(h)


def test_gamma_examples(a2):
    ctx = parabolic(a2, [1])
    cp = ctx.conj
    assert cp.levi == (2,)
    assert ctx.gamma(cp.HM.t((1,))) == ctx.HM.t((1,))       # gamma(T_s2) = T_s1
    mu = (1, 3)
    assert ctx.gamma(cp.HM.theta(mu)) == ctx.HM.theta(ctx.w0p.act(mu))
    assert ctx.gamma(cp.HM.one()) == ctx.HM.one()


def test_gamma_homomorphism():
    d = preset_datum("B2")
    rng = random.Random(3)
    for L in all_levis(d):
        ctx = parabolic(d, L)
        cp = ctx.conj
        for _ in range(3):
            a, b = random_element(cp.HM, rng, 3, 2), random_element(cp.HM, rng, 3, 2)
            assert ctx.gamma(a * b) == ctx.gamma(a) * ctx.gamma(b)
            assert ctx.gamma_inverse(ctx.gamma(a)) == a


def test_length_formula(a2):
    r = parabolic(a2, [1]).check_length_formula()
    assert r["pass"] and r["checked"] == 2
    s1 = a2.weyl.from_word((1,))
    w0p = parabolic(a2, [1]).w0p
    assert (w0p.inverse() * s1 * w0p) == a2.weyl.from_word((2,))


def test_parabolic_opposition_examples(a2):
    ctx = parabolic(a2, [1])
    cp = ctx.conj
    # generator T_{s'}: the written sandwich of T_{w''} is T_{w0'^{-1} w'' w0'}
    H = ctx.H
    w0p = ctx.w0p
    s1 = a2.weyl.from_word((1,))
    assert H.t(w0p.inverse() * s1 * w0p) == H.t_inv(w0p) * H.t(s1) * H.t(w0p)
    for om in (cp.HM.t((1,)), cp.HM.theta(a2.simple_coroots[1]), cp.HM.one()):
        assert ctx.parabolic_opposition(om, "as-written", "b")
        assert ctx.parabolic_opposition(om, "mirrored", "im")


def test_orientation_is_discriminating(a2):
    """The wrong pairing of opposition and sandwich fails on some generator."""
    ctx = parabolic(a2, [1])
    gens = [ctx.conj.HM.theta(a2.simple_coroots[1]), ctx.conj.HM.theta((1, 0))]
    assert not all(ctx.parabolic_opposition(om, "mirrored", "b") for om in gens)
    assert not all(ctx.parabolic_opposition(om, "as-written", "im") for om in gens)


def test_bad_orientation(a2):
    with pytest.raises(ValueError):
        parabolic(a2, [1]).sandwich(hecke_algebra(a2).one(), "sideways")
    assert set(ORIENTATIONS) == {"as-written", "mirrored"}
