"""Property-based checks on small presets (hypothesis, derandomized)."""

import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from iwahori.checks import random_element
from iwahori.hecke import hecke_algebra
from iwahori.laurent import Laurent
from iwahori.rootdata import ExtElt, preset_datum
from iwahori.serialize import elt_from_json, elt_to_json

SMALL = ("A1", "GL2", "A2", "B2")
PROFILE = settings(max_examples=40, deadline=None, derandomize=True)

coeffs = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))
laurents = st.lists(st.tuples(coeffs, st.integers(-4, 4)), max_size=4).map(
    lambda ts: sum((Laurent.monomial(c, k) for c, k in ts), Laurent()))


def _elements(n):
    """``n`` random Hecke elements of a small preset, drawn from a hypothesis seed."""
    return st.tuples(st.sampled_from(SMALL), st.integers(0, 2**32)).map(
        lambda p: (hecke_algebra(preset_datum(p[0])),
                   [random_element(hecke_algebra(preset_datum(p[0])), random.Random(p[1] + i), 3, 2)
                    for i in range(n)]))


@PROFILE
@given(laurents, laurents, laurents)
def test_laurent_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a - a).is_zero()


@PROFILE
@given(laurents)
def test_laurent_text_roundtrip(a):
    assert Laurent.parse(str(a)) == a


@PROFILE
@given(_elements(3))
def test_hecke_associative_and_distributive(data):
    H, (a, b, c) = data
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@PROFILE
@given(_elements(2))
def test_star_b_anti_multiplicative(data):
    H, (a, b) = data
    assert H.star_b(a * b) == H.star_b(b) * H.star_b(a)


@PROFILE
@given(_elements(1))
def test_star_im_involution(data):
    H, (a,) = data
    assert H.star_im(H.star_im(a)) == a


@PROFILE
@given(_elements(1))
def test_element_json_roundtrip(data):
    H, (a,) = data
    assert elt_from_json(elt_to_json(a), H) == a


@PROFILE
@given(st.sampled_from(SMALL), st.integers(0, 2**32))
def test_t_inverse(name, seed):
    d = preset_datum(name)
    H = hecke_algebra(d)
    w = random.Random(seed).choice(list(d.weyl))
    assert H.t(w) * H.t_inv(w) == H.one()


@PROFILE
@given(st.sampled_from(SMALL), st.integers(0, 2**32))
def test_im_inverse_is_inverse(name, seed):
    d = preset_datum(name)
    H = hecke_algebra(d)
    rng = random.Random(seed)
    x = ExtElt(tuple(rng.randint(-1, 1) for _ in range(d.rank)), rng.choice(list(d.weyl)))
    assert H.im(x) * H.im_inverse(x) == H.one()
