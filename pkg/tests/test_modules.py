"""Right modules, induction, Jacquet restriction and the Reeder/Jantzen maps."""

import random
from fractions import Fraction

import pytest

from iwahori.hecke import hecke_algebra
from iwahori.laurent import Laurent
from iwahori.linalg import Matrix, charpoly, full_rank
from iwahori.modules import (
    HModule, LeftView, UnramifiedCharacter, char_inverse, char_twist, conjugation_twist, induce,
    jacquet_right_action, jantzen_check, principal_series, random_character, reeder_check,
    restrict_levi, stage_compatibility_check, validate_module,
)
from iwahori.parabolic import parabolic
from iwahori.rootdata import preset_datum

q = Laurent.monomial(1, 2)
c = Laurent.monomial(3, 1)                  # chi(alpha-check) = 3v
c_inv = Laurent.monomial(Fraction(1, 3), -1)


def chi1(x=c):
    return UnramifiedCharacter((x,))


def test_char_twist_and_inverse():
    a1 = preset_datum("A1")
    chi = chi1()
    assert char_twist(chi, a1.weyl.identity) == chi
    tw = char_twist(chi, a1.weyl.from_word((1,)))
    assert tw((1,)) == chi((-1,))
    assert char_inverse(char_inverse(chi)) == chi


def test_a1_principal_series_matrices():
    a1 = preset_datum("A1")
    V = principal_series(chi1(), a1)
    H = V.alg
    assert V.mat(H.t((1,))) == Matrix([[0, 1], [q, q - 1]])
    assert V.mat(H.theta((1,))) == Matrix([[c, 0], [(q - 1) * (c + 1), c_inv]])
    assert validate_module(V)["pass"]


def test_torus_module_is_character():
    a2 = preset_datum("A2")
    chi = UnramifiedCharacter((Laurent.monomial(2), Laurent.monomial(-5, 1)))
    V = principal_series(chi, a2, ())
    assert V.dim == 1
    assert V.mat(V.alg.theta((1, 1))) == Matrix([[chi((1, 1))]])
    assert validate_module(V)["pass"]


def test_validate_catches_noncommuting():
    a2 = preset_datum("A2")
    HT = hecke_algebra(a2.levi(()))
    bad = HModule(HT, 2, T={}, Theta={1: Matrix([[1, 1], [0, 1]]), 2: Matrix([[1, 0], [1, 1]])})
    r = validate_module(bad)
    assert not r["pass"]
    assert r["failures"][0] == {"relation": "theta_commute", "witness": [1, 2]}


def test_induction_examples():
    a2 = preset_datum("A2")
    chi = UnramifiedCharacter((Laurent.monomial(3, 1), Laurent.monomial(-2)))
    ind = induce(principal_series(chi, a2, [1]))
    assert ind.dim == 6
    assert validate_module(ind)["pass"]
    # L = empty: inducing C_chi reproduces the principal series exactly
    ind0 = induce(principal_series(chi, a2, ()))
    full = principal_series(chi, a2)
    assert ind0.generators() == full.generators()
    for L in ((), (1,), (2,), (1, 2)):
        assert stage_compatibility_check(chi, a2, L)["pass"]


def test_restriction_examples():
    a1 = preset_datum("A1")
    V = principal_series(chi1(), a1)
    R = restrict_levi(V, ())
    M = R.mat(R.alg.theta((1,)))
    assert M == V.mat(V.alg.theta((1,)))
    cp = charpoly(M)
    assert cp == [Laurent.monomial(1), -(c + c_inv), Laurent.monomial(1)]
    assert restrict_levi(V, [1]) is V
    a2 = preset_datum("A2")
    chi = UnramifiedCharacter((Laurent.monomial(3, 1), Laurent.monomial(-2)))
    W = principal_series(chi, a2)
    direct = restrict_levi(W, ())
    staged = restrict_levi(restrict_levi(W, [1]), ())
    th = direct.alg.theta((1, -1))
    assert direct.mat(th) == staged.mat(staged.alg.theta((1, -1)))


def test_opposite_view():
    a2 = preset_datum("A2")
    chi = UnramifiedCharacter((Laurent.monomial(3, 1), Laurent.monomial(-2)))
    V = principal_series(chi, a2)
    H = V.alg
    rng = random.Random(5)
    from iwahori.checks import random_element
    for kind in ("b", "im"):
        view = LeftView(V, kind)
        assert view.matrix(H.one()) == Matrix.identity(6)
        a, b = random_element(H, rng, 2, 1), random_element(H, rng, 2, 1)
        m = [Laurent.monomial(rng.randint(1, 5)) for _ in range(6)]
        assert view.act(a * b, m) == view.act(a, view.act(b, m))
    assert LeftView(V, "im").matrix(H.t((1,))) == V.mat(H.t((1,)))


def test_conjugation_twist():
    a2 = preset_datum("A2")
    chi = UnramifiedCharacter((Laurent.monomial(3, 1), Laurent.monomial(-2)))
    V = principal_series(chi, a2, [1])
    ctx = parabolic(a2, [1])
    Tw = conjugation_twist(V, ctx)
    assert Tw.mat(Tw.alg.t((1,))) == V.mat(V.alg.t((1,)))      # T at s2 <- T at s1
    mu = (1, 0)
    assert Tw.mat(Tw.alg.theta(mu)) == V.mat(V.alg.theta(ctx.w0p.act(mu)))
    T0 = conjugation_twist(principal_series(chi, a2, ()), parabolic(a2, ()))
    w0 = a2.longest_element()
    assert T0.mat(T0.alg.theta(mu)) == Matrix([[chi(w0.act(mu))]])


def test_reeder_a1():
    a1 = preset_datum("A1")
    mp, rep = reeder_check(chi1(), a1, "as-written", "b")
    assert rep["pass"]
    assert mp.matrix == Matrix([[0, 1], [q, q - 1]])
    det = mp.matrix[0, 0] * mp.matrix[1, 1] - mp.matrix[0, 1] * mp.matrix[1, 0]
    assert det == -q
    assert reeder_check(chi1(), a1, "mirrored", "im")[1]["pass"]


def test_reeder_gl2_central():
    gl2 = preset_datum("GL2")
    chi = UnramifiedCharacter((Laurent.monomial(2, 1), Laurent.monomial(2, 1) * Laurent.monomial(5)))
    assert reeder_check(chi, gl2)[1]["pass"]


def test_jantzen_examples():
    a2 = preset_datum("A2")
    chi = UnramifiedCharacter((Laurent.monomial(3, 1), Laurent.monomial(-2)))
    V = principal_series(chi, a2, [1])
    mp, rep = jantzen_check(V, "as-written", "b")
    assert rep["pass"] and mp.matrix.shape == (6, 6) and full_rank(mp.matrix)
    # L = Delta: the identity map
    full = principal_series(chi, a2)
    mp, rep = jantzen_check(full, "as-written", "b")
    assert rep["pass"] and mp.matrix == Matrix.identity(6)
    # L = empty: the Reeder matrix of chi^{-1}
    mp0, rep0 = jantzen_check(principal_series(chi, a2, ()), "as-written", "b")
    r_mp, _ = reeder_check(char_inverse(chi), a2, "as-written", "b")
    assert rep0["pass"] and mp0.matrix == r_mp.matrix


def test_jacquet_right_action_examples():
    a2 = preset_datum("A2")
    chi = UnramifiedCharacter((Laurent.monomial(3, 1), Laurent.monomial(-2)))
    V = principal_series(chi, a2)
    ctx = parabolic(a2, [1])
    cp = ctx.conj
    H = V.alg
    got = jacquet_right_action(V, [2], cp.HM.t((1,)))
    assert got == V.mat(H.t_inv(ctx.w0p) * H.t((1,)) * H.t(ctx.w0p))
    assert jacquet_right_action(V, [2], cp.HM.one()) == Matrix.identity(6)
    full = parabolic(a2, [1, 2])
    assert jacquet_right_action(V, [1, 2], full.HM.t((2,))) == V.mat(H.t((2,)))


def test_random_character_is_generic():
    from iwahori.modules import is_generic
    d = preset_datum("G2")
    rng = random.Random(0)
    for _ in range(5):
        assert is_generic(random_character(d, rng), d)
    a1 = preset_datum("A1")
    assert not is_generic(chi1(q), a1)
    assert not is_generic(chi1(Laurent.monomial(1)), a1)
