"""JSON encodings for data, elements, characters, modules and maps.

Coefficients in ``Z[v, v^-1]`` are lists of ``[exponent, "rational"]`` pairs in
descending exponent order; field elements are strings such as ``"(v^2 + 1)/(v + 1)"``.
Weyl elements are simple-reflection words.  Elements of a Levi algebra use
ambient simple indices in their words.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .hecke import HeckeAlgebra, HeckeElt, hecke_algebra
from .laurent import Laurent, RatFunc
from .linalg import Matrix, kcoerce
from .rootdata import ExtElt, RootDatum, WeylElt, preset_datum

__all__ = [
    "InputError", "dumps", "load_datum", "laurent_to_json", "laurent_from_json",
    "elt_to_json", "elt_from_json", "ext_to_json", "ext_from_json", "matrix_to_json",
    "matrix_from_json", "module_to_json", "module_from_json", "weyl_key", "parse_weyl_key",
]


class InputError(ValueError):
    """Malformed or inconsistent input; the message names the offending field."""


def dumps(obj: Any) -> str:
    """Canonical compact JSON (stable key order comes from construction order)."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


# -- root data -------------------------------------------------------------------

_LEVI_NAME = re.compile(r"^(?P<base>.+)\[(?P<idx>[\d,\s]*)\]$")


def load_datum(ref: str | dict) -> RootDatum:
    """A preset name, a Levi name such as ``A2[1]``, or a root-datum JSON object."""
    if isinstance(ref, dict):
        try:
            return RootDatum.from_json(ref)
        except (TypeError, ValueError) as exc:
            raise InputError(f"datum: {exc}") from None
    m = _LEVI_NAME.match(ref.strip())
    try:
        if m:
            base = preset_datum(m.group("base"))
            idx = [int(x) for x in m.group("idx").split(",") if x.strip()]
            return base.levi(idx)
        return preset_datum(ref)
    except ValueError as exc:
        raise InputError(f"datum: {exc}") from None


def _global_word(alg: HeckeAlgebra, w: WeylElt) -> list[int]:
    d = alg.datum
    if d.parent is None:
        return list(w.word)
    return [d.levi_indices[i - 1] for i in w.word]


def _local_word(alg: HeckeAlgebra, word, field: str) -> tuple[int, ...]:
    d = alg.datum
    if not isinstance(word, list) or not all(isinstance(i, int) for i in word):
        raise InputError(f"{field}: expected a list of simple indices, got {word!r}")
    if d.parent is None:
        for i in word:
            if not 1 <= i <= d.n_simple:
                raise InputError(f"{field}: simple index {i} out of range for {d.name}")
        return tuple(word)
    pos = {g: j + 1 for j, g in enumerate(d.levi_indices)}
    try:
        return tuple(pos[i] for i in word)
    except KeyError as exc:
        raise InputError(f"{field}: index {exc.args[0]} is not in the Levi {list(d.levi_indices)}") from None


# -- coefficients ----------------------------------------------------------------

def laurent_to_json(c: Laurent) -> list:
    return [[k, str(x)] for k, x in c.items()]


def laurent_from_json(obj, field: str = "coeff") -> Laurent:
    """Accepts ``[[k, "c"], ...]``, a number, or a polynomial string like ``"q - 1"``."""
    try:
        if isinstance(obj, str):
            return Laurent.parse(obj)
        if isinstance(obj, bool):
            raise TypeError
        if isinstance(obj, int):
            return Laurent.monomial(obj)
        out: dict[int, Fraction] = {}
        for pair in obj:
            k, c = pair
            if not isinstance(k, int) or isinstance(k, bool):
                raise TypeError
            out[k] = out.get(k, Fraction(0)) + Fraction(str(c))
        return Laurent(out)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"{field}: cannot read coefficient {obj!r}") from None


def k_from_json(obj, field: str):
    try:
        return kcoerce(str(obj)) if not isinstance(obj, (Laurent, RatFunc)) else kcoerce(obj)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"{field}: cannot read field element {obj!r}") from None


# -- elements --------------------------------------------------------------------

def elt_to_json(h: HeckeElt) -> dict:
    alg = h.alg
    return {
        "datum": alg.datum.name,
        "terms": [{"mu": list(mu), "w": _global_word(alg, w), "coeff": laurent_to_json(c)}
                  for mu, w, c in h.terms()],
    }


def elt_from_json(obj, alg: HeckeAlgebra | None = None) -> HeckeElt:
    """Read an element; ``alg`` (if given) must agree with the ``datum`` field."""
    if not isinstance(obj, dict):
        raise InputError("element: expected a JSON object")
    name = obj.get("datum")
    if alg is None:
        if name is None:
            raise InputError("datum: element has no datum and none was given")
        alg = hecke_algebra(load_datum(name))
    elif name is not None and name != alg.datum.name:
        raise InputError(f"datum: element is over {name}, expected {alg.datum.name}")
    terms = obj.get("terms")
    if not isinstance(terms, list):
        raise InputError("terms: expected a list")
    out = alg.zero()
    for n, t in enumerate(terms):
        if not isinstance(t, dict):
            raise InputError(f"terms[{n}]: expected an object")
        mu = t.get("mu", [0] * alg.rank)
        if (not isinstance(mu, list) or len(mu) != alg.rank
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in mu)):
            raise InputError(f"terms[{n}].mu: expected {alg.rank} integers, got {mu!r}")
        word = _local_word(alg, t.get("w", []), f"terms[{n}].w")
        c = laurent_from_json(t.get("coeff", 1), f"terms[{n}].coeff")
        out = out + alg.basis(mu, alg.weyl.from_word(word), c)
    return out


def ext_to_json(x: ExtElt) -> dict:
    return {"mu": list(x.mu), "w": list(x.w.word)}


def ext_from_json(obj, datum: RootDatum) -> ExtElt:
    if not isinstance(obj, dict) or "mu" not in obj:
        raise InputError("ext: expected an object with fields mu and w")
    mu = obj["mu"]
    if not isinstance(mu, list) or len(mu) != datum.rank or not all(isinstance(x, int) for x in mu):
        raise InputError(f"mu: expected {datum.rank} integers, got {mu!r}")
    word = obj.get("w", [])
    if not isinstance(word, list) or not all(isinstance(i, int) and 1 <= i <= datum.n_simple for i in word):
        raise InputError(f"w: invalid word {word!r}")
    return datum.ext(mu, datum.weyl.from_word(word))


def weyl_key(w: WeylElt) -> str:
    """``"e"`` or a word like ``"s2s1"``."""
    return repr(w)


def parse_weyl_key(key: str, datum: RootDatum) -> WeylElt:
    if key == "e":
        return datum.weyl.identity
    if not re.fullmatch(r"(s\d+)+", key):
        raise InputError(f"coset key {key!r} is not a word like 's2s1'")
    return datum.weyl.from_word(int(x) for x in re.findall(r"\d+", key))


# -- matrices and modules --------------------------------------------------------

def matrix_to_json(m: Matrix) -> list[list[str]]:
    return m.to_strings()


def matrix_from_json(obj, field: str) -> Matrix:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise InputError(f"{field}: expected a list of rows")
    try:
        return Matrix([[k_from_json(x, field) for x in row] for row in obj])
    except ValueError as exc:
        raise InputError(f"{field}: {exc}") from None


def module_to_json(V) -> dict:
    T, Th = V.generators()
    return {
        "datum": V.ambient.name,
        "levi": list(V.levi),
        "dim": V.dim,
        "T": {str(i): matrix_to_json(T[i]) for i in sorted(T)},
        "Theta": {str(j): matrix_to_json(Th[j]) for j in sorted(Th)},
    }


def module_from_json(obj, datum: RootDatum | None = None):
    from .modules import HModule

    if not isinstance(obj, dict):
        raise InputError("module: expected a JSON object")
    name = obj.get("datum")
    if datum is None:
        if name is None:
            raise InputError("datum: module has no datum and none was given")
        datum = load_datum(name)
    elif name is not None and name != datum.name:
        raise InputError(f"datum: module is over {name}, expected {datum.name}")
    levi = obj.get("levi")
    if not isinstance(levi, list):
        raise InputError("levi: expected a list of simple indices")
    try:
        L = datum.levi_set(levi)
    except ValueError as exc:
        raise InputError(f"levi: {exc}") from None
    dim = obj.get("dim")
    if not isinstance(dim, int) or dim < 0:
        raise InputError("dim: expected a natural number")
    T_in, Th_in = obj.get("T"), obj.get("Theta")
    if not isinstance(T_in, dict) or not isinstance(Th_in, dict):
        raise InputError("T/Theta: expected objects keyed by index")
    alg = hecke_algebra(datum.levi(L))
    T = {}
    for pos, i in enumerate(L):
        if str(i) not in T_in:
            raise InputError(f"T.{i}: missing matrix")
        T[pos + 1] = matrix_from_json(T_in[str(i)], f"T.{i}")
    Th = {}
    for j in range(1, datum.rank + 1):
        if str(j) not in Th_in:
            raise InputError(f"Theta.{j}: missing matrix")
        Th[j] = matrix_from_json(Th_in[str(j)], f"Theta.{j}")
    try:
        return HModule(alg, dim, T=T, Theta=Th, label="input")
    except ValueError as exc:
        raise InputError(f"module: {exc}") from None
