"""Root data, Weyl groups and the extended affine Weyl group."""

import pytest

from iwahori.rootdata import ExtElt, pairing, preset_datum, PRESETS


def W(d, *word):
    return d.weyl.from_word(word)


def test_cartan_entries():
    gl2 = preset_datum("GL2")
    assert gl2.simple_roots[0] == (1, -1) and gl2.simple_coroots[0] == (1, -1)
    for name in PRESETS:
        d = preset_datum(name)
        for a, ac in zip(d.simple_roots, d.simple_coroots):
            assert pairing(a, ac) == 2
    a1 = preset_datum("A1")
    assert pairing(a1.simple_roots[0], a1.simple_coroots[0]) == 2


def test_g2_counts():
    g2 = preset_datum("G2")
    assert len(g2.positive_roots) == 6
    assert len(g2.weyl) == 12


def test_pairing_examples():
    a1 = preset_datum("A1")
    assert pairing((1, -1), (1, 0)) == 1
    assert pairing(a1.simple_roots[0], tuple(3 * x for x in a1.simple_coroots[0])) == 6


def test_reflections():
    a1, gl2 = preset_datum("A1"), preset_datum("GL2")
    ac = a1.simple_coroots[0]
    assert W(a1, 1).act(ac) == tuple(-x for x in ac)
    assert a1.weyl.identity.act((5,)) == (5,)
    assert W(gl2, 1).act((1, 0)) == (0, 1)


def test_longest_elements():
    a2 = preset_datum("A2")
    w0 = a2.longest_element()
    assert w0 == W(a2, 1, 2, 1) and w0.length == 3
    a1 = preset_datum("A1")
    assert a1.longest_element() == W(a1, 1)
    assert a2.longest_element([1]) == W(a2, 1)


def test_dominance():
    gl2 = preset_datum("GL2")
    assert gl2.is_dominant((1, 0))
    assert gl2.is_dominant((1, 1))
    plus, minus = gl2.dominant_decomposition((0, 1))
    assert gl2.is_dominant(plus) and gl2.is_dominant(minus)
    assert tuple(p - m for p, m in zip(plus, minus)) == (0, 1)
    assert (plus, minus) == ((1, 1), (1, 0))


def test_two_rho():
    assert preset_datum("GL2").two_rho() == (1, -1)
    assert preset_datum("GL3").two_rho() == (2, 0, -2)
    a2 = preset_datum("A2")
    assert a2.two_rho([1]) == a2.simple_roots[0]


def test_extended_group():
    a1, gl2 = preset_datum("A1"), preset_datum("GL2")
    ac = a1.simple_coroots[0]
    e, s = a1.weyl.identity, W(a1, 1)
    x = ExtElt(ac, e) * ExtElt((0,), s)
    assert (x.mu, x.w) == (ac, s)
    y = ExtElt(ac, s).inverse()
    assert (y.mu, y.w) == (ac, s)
    z = ExtElt((1, 0), W(gl2, 1)) * ExtElt((1, 0), W(gl2, 1))
    assert (z.mu, z.w) == ((1, 1), gl2.weyl.identity)


def test_ext_length():
    a1, gl2 = preset_datum("A1"), preset_datum("GL2")
    ac = a1.simple_coroots[0]
    assert a1.ext_length(ExtElt(ac, a1.weyl.identity)) == 2
    assert a1.ext_length(ExtElt(ac, W(a1, 1))) == 1
    assert gl2.ext_length(ExtElt((1, 0), W(gl2, 1))) == 0


def test_coset_representatives():
    a2 = preset_datum("A2")
    assert set(a2.min_coset_reps([1])) == {W(a2), W(a2, 2), W(a2, 2, 1)}
    for name in PRESETS:
        d = preset_datum(name)
        full = range(1, d.n_simple + 1)
        assert d.min_coset_reps(full) == [d.weyl.identity]
        assert set(d.min_coset_reps([])) == set(d.weyl)


def test_pq_decompose():
    a2 = preset_datum("A2")
    assert a2.pq_decompose(W(a2, 1, 2), [1]) == (W(a2, 1), W(a2, 2))
    assert a2.pq_decompose(W(a2, 1), [1]) == (W(a2, 1), W(a2))
    assert a2.pq_decompose(W(a2, 1, 2, 1), [1]) == (W(a2, 1), W(a2, 2, 1))


def test_conjugate_levi():
    a2 = preset_datum("A2")
    assert a2.conjugate_levi([1]) == ((2,), W(a2, 2, 1))
    assert a2.conjugate_levi([1, 2]) == ((1, 2), W(a2))
    assert a2.conjugate_levi([]) == ((), a2.longest_element())


@pytest.mark.parametrize("name", PRESETS)
def test_length_matches_inversions(name):
    d = preset_datum(name)
    for w in d.weyl:
        inv = sum(1 for a in d.positive_roots if not d.is_positive_root(w.act_dual(a)))
        assert inv == w.length
