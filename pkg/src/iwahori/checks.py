"""Seeded verification suites and the convention report.

Every suite takes a root datum and a :class:`SuiteConfig` and returns a JSON-ready
dict with a ``pass`` flag, counts of what was checked and (on failure) witnesses.
Randomness comes from ``random.Random`` seeded with the string
``"{seed}:{suite}:{datum}"``, so reports are reproducible across platforms.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .hecke import HeckeAlgebra, HeckeElt, hecke_algebra
from .laurent import Laurent
from .linalg import rank
from .modules import (
    STAR_FOR, induce, jantzen_check, principal_series, random_character, reeder_check,
    stage_compatibility_check, theta_spectrum_check, validate_module,
)
from .parabolic import ORIENTATIONS, parabolic
from .rootdata import ExtElt, RootDatum, pairing

__all__ = ["SuiteConfig", "SUITES", "run_suite", "convention_report", "random_element",
           "ext_elements_upto", "all_levis"]

_MAX_WITNESSES = 3


@dataclass
class SuiteConfig:
    seed: int = 0
    samples: int | None = None      # overrides each suite's default sample count
    max_terms: int = 6
    max_mu: int = 3
    orientation: str = "auto"       # "auto" checks both standard configurations
    extra: dict = field(default_factory=dict)

    def count(self, default: int) -> int:
        return default if self.samples is None else self.samples

    def rng(self, suite: str, datum: RootDatum) -> random.Random:
        return random.Random(f"{self.seed}:{suite}:{datum.name}")

    def configs(self) -> list[tuple[str, str]]:
        """``(orientation, star)`` pairs to verify."""
        if self.orientation == "auto":
            return [(o, STAR_FOR[o]) for o in ORIENTATIONS]
        return [(self.orientation, STAR_FOR[self.orientation])]


class _Report:
    def __init__(self, suite: str, datum: RootDatum):
        self.data = {"suite": suite, "datum": datum.name, "pass": True, "checked": {}, "failures": []}

    def check(self, name: str, ok: bool, witness=None) -> bool:
        c = self.data["checked"]
        c[name] = c.get(name, 0) + 1
        if not ok:
            self.data["pass"] = False
            if len(self.data["failures"]) < _MAX_WITNESSES:
                self.data["failures"].append({"check": name, "witness": witness})
        return ok

    def note(self, key: str, value) -> None:
        self.data[key] = value

    def done(self) -> dict:
        return self.data


# -- sampling helpers --------------------------------------------------------------

def _unit(n: int, j: int, s: int = 1) -> tuple[int, ...]:
    return tuple(s * int(i == j) for i in range(n))


def _box(rank_: int, b: int):
    return itertools.product(range(-b, b + 1), repeat=rank_)


def random_coeff(rng: random.Random) -> Laurent:
    c = Laurent.monomial(rng.choice((-3, -2, -1, 1, 2, 3)), rng.randint(-2, 2))
    if rng.random() < 0.25:
        c = c + Laurent.monomial(rng.choice((-1, 1)), rng.randint(-2, 2))
    return c if c else Laurent.monomial(1)


def random_element(alg: HeckeAlgebra, rng: random.Random, max_terms: int = 6,
                   max_mu: int = 3) -> HeckeElt:
    W = alg.weyl
    out = alg.zero()
    for _ in range(rng.randint(1, max_terms)):
        mu = [rng.randint(-max_mu, max_mu) for _ in range(alg.rank)]
        out = out + alg.basis(mu, W.elements[rng.randrange(len(W))], random_coeff(rng))
    return out if out else alg.one()


def all_levis(datum: RootDatum) -> list[tuple[int, ...]]:
    n = datum.n_simple
    return [L for r in range(n + 1) for L in itertools.combinations(range(1, n + 1), r)]


def _mu_bound(datum: RootDatum, length: int) -> int:
    """A box containing every ``mu`` with ``l(pi^mu w) <= length`` (semisimple case).

    ``|<alpha_i, mu>| <= length + 1`` for simple roots, and the simple roots form a basis.
    """
    A = np.array(datum.simple_roots, dtype=float)
    inv = np.linalg.inv(A)
    return int(math.ceil((length + 1) * np.abs(inv).sum(axis=1).max() - 1e-9))


def ext_elements_upto(datum: RootDatum, length: int, box: int | None = None) -> list[ExtElt]:
    """All ``pi^mu w`` with ``l <= length``; for non-semisimple data only ``|mu|_inf <= box``."""
    if datum.n_simple < datum.rank:
        b = 2 if box is None else box
    else:
        b = _mu_bound(datum, length) if box is None else box
    out = []
    for mu in _box(datum.rank, b):
        for w in datum.weyl:
            x = ExtElt(mu, w)
            if datum.ext_length(x) <= length:
                out.append(x)
    out.sort(key=lambda x: (datum.ext_length(x), x.mu, x.w.idx))
    return out


def _elt_witness(h: HeckeElt) -> str:
    s = repr(h)
    return s if len(s) < 400 else s[:400] + "..."


# -- presentation --------------------------------------------------------------------

def _reduced_words(datum: RootDatum, w: int) -> list[tuple[int, ...]]:
    W = datum.weyl
    if w == 0:
        return [()]
    out = []
    for i in range(1, datum.n_simple + 1):
        y = W.lmul[i - 1][w]
        if W.lengths[y] < W.lengths[w]:
            out += [(i,) + rest for rest in _reduced_words(datum, y)]
    return out


def _cross_oracle(H: HeckeAlgebra, i: int, mu) -> HeckeElt:
    """The displayed Bernstein relation, written out term by term."""
    d = H.datum
    a, ac = d.simple_roots[i - 1], d.simple_coroots[i - 1]
    m = pairing(a, mu)
    q1 = Laurent({2: 1, 0: -1})
    out = H.basis(d.reflect(i, tuple(mu)), (i,))
    if m > 0:
        for k in range(m):
            out = out + H.basis([x - k * y for x, y in zip(mu, ac)], (), q1)
    elif m < 0:
        for k in range(1, -m + 1):
            out = out - H.basis([x + k * y for x, y in zip(mu, ac)], (), q1)
    return out


def suite_presentation(d: RootDatum, cfg: SuiteConfig) -> dict:
    H = hecke_algebra(d)
    rep = _Report("presentation", d)
    q = Laurent.monomial(1, 2)
    for i in range(1, d.n_simple + 1):
        t = H.t((i,))
        rep.check("quadratic", t * t == H.scalar(q) + t.scale(q - 1), {"s": i})
    for w in d.weyl:
        for word in _reduced_words(d, w.idx):
            rep.check("braid", H.t_word(word) == H.t(w), {"w": list(w.word), "word": list(word)})
        rep.check("t_inverse", H.t_inv(w) * H.t(w) == H.one(), {"w": list(w.word)})
    rng = cfg.rng("presentation", d)
    pts = list(_box(d.rank, 1)) + [tuple(rng.randint(-3, 3) for _ in range(d.rank)) for _ in range(10)]
    for mu in pts:
        for nu in pts[:: max(1, len(pts) // 12)]:
            a, b = H.theta(mu), H.theta(nu)
            s = tuple(x + y for x, y in zip(mu, nu))
            rep.check("theta_hom", a * b == H.theta(s) and b * a == H.theta(s), {"mu": mu, "nu": nu})
    bound = cfg.extra.get("bernstein_box", 5)
    for i in range(1, d.n_simple + 1):
        a = d.simple_roots[i - 1]
        for mu in _box(d.rank, bound):
            if abs(pairing(a, mu)) > 5:
                continue
            prod = H.t((i,)) * H.theta(mu)
            ok = prod == _cross_oracle(H, i, mu) and prod == H.cross(i, mu)
            rep.check("bernstein", ok, {"s": i, "mu": list(mu)})
    return rep.done()


def suite_associativity(d: RootDatum, cfg: SuiteConfig) -> dict:
    H = hecke_algebra(d)
    rep = _Report("associativity", d)
    rng = cfg.rng("associativity", d)
    for n in range(cfg.count(500)):
        a, b, c = (random_element(H, rng, cfg.max_terms, cfg.max_mu) for _ in range(3))
        rep.check("associativity", (a * b) * c == a * (b * c), {"sample": n})
    return rep.done()


# -- Iwahori-Matsumoto basis ------------------------------------------------------------

def _group_product(x: dict, y: dict, d: RootDatum) -> dict:
    out: dict = {}
    for (mu, w), c in x.items():
        for (nu, u), e in y.items():
            key = (tuple(a + b for a, b in zip(mu, w.act(nu))), w * u)
            out[key] = out.get(key, 0) + c * e
    return {k: v for k, v in out.items() if v}


def suite_im(d: RootDatum, cfg: SuiteConfig) -> dict:
    H = hecke_algebra(d)
    rep = _Report("im", d)
    rng = cfg.rng("im", d)
    elts = ext_elements_upto(d, 4)
    rep.note("elements", len(elts))
    for x in elts:
        at_one = H.im(x).specialize_v1()
        rep.check("specialize_v1", at_one == {(tuple(x.mu), x.w): 1}, {"x": [list(x.mu), list(x.w.word)]})
    # coherence on length-additive pairs
    n_pairs = cfg.count(300)
    found = attempts = 0
    while found < n_pairs and attempts < 50 * n_pairs:
        attempts += 1
        x, y = rng.choice(elts), rng.choice(elts)
        xy = x * y
        if d.ext_length(xy) != d.ext_length(x) + d.ext_length(y):
            continue
        found += 1
        rep.check("coherence", H.im(x) * H.im(y) == H.im(xy),
                  {"x": [list(x.mu), list(x.w.word)], "y": [list(y.mu), list(y.w.word)]})
    # linear independence over the coefficient field
    cols: dict = {}
    rows = []
    for x in elts:
        g = H.im(x).grouped()
        for key in g:
            cols.setdefault(key, len(cols))
        rows.append(g)
    mat = [[Laurent() for _ in range(len(cols))] for _ in rows]
    for r, g in enumerate(rows):
        for key, c in g.items():
            mat[r][cols[key]] = c
    rep.check("independence", rank(mat) == len(rows), {"rows": len(rows), "cols": len(cols)})
    # v -> 1 turns multiplication into the group algebra
    for n in range(cfg.count(50)):
        a = random_element(H, rng, 3, 2)
        b = random_element(H, rng, 3, 2)
        sa, sb = a.specialize_v1(), b.specialize_v1()
        rep.check("group_algebra", (a * b).specialize_v1() == _group_product(sa, sb, d), {"sample": n})
    return rep.done()


def suite_modulus(d: RootDatum, cfg: SuiteConfig) -> dict:
    """``delta^{-1}(pi^mu) = q^{l(pi^mu)}`` for dominant ``mu`` with ``|mu|_inf <= 4``."""
    H = hecke_algebra(d)
    rep = _Report("modulus", d)
    e = d.weyl.identity
    for mu in _box(d.rank, 4):
        if not d.is_dominant(mu):
            continue
        lhs = Laurent.monomial(1, -2 * H.delta_half_exp(mu))
        rhs = Laurent.monomial(1, 2 * d.ext_length(ExtElt(mu, e)))
        rep.check("modulus", lhs == rhs, {"mu": list(mu)})
    return rep.done()


# -- oppositions -----------------------------------------------------------------

class _StarReference:
    """``star_im(Theta_mu)`` from the Iwahori-Matsumoto basis on ``+-e_j``, extended multiplicatively."""

    def __init__(self, H: HeckeAlgebra):
        self.H = H
        self.cache: dict = {tuple([0] * H.rank): H.one()}

    def __call__(self, mu) -> HeckeElt:
        mu = tuple(mu)
        res = self.cache.get(mu)
        if res is None:
            j = max(range(len(mu)), key=lambda k: abs(mu[k]))
            e = _unit(len(mu), j, 1 if mu[j] > 0 else -1)
            rest = tuple(m - x for m, x in zip(mu, e))
            res = self(rest) * self.H.star_im_theta_reference(e)
            self.cache[mu] = res
        return res


def _sandwich_variants(H: HeckeAlgebra, mu) -> dict[str, HeckeElt]:
    w0 = H.datum.longest_element()
    lam = tuple(-x for x in w0.act(tuple(mu)))
    th = H.theta(lam)
    return {"as-written": H.t_inv(w0) * th * H.t(w0), "mirrored": H.t(w0) * th * H.t_inv(w0)}


def opposition_orientations(d: RootDatum, box: int = 3) -> dict[str, list[str]]:
    """Which sandwich orientation each opposition satisfies on ``Theta_mu``, ``|mu|_inf <= box``."""
    H = hecke_algebra(d)
    ref = _StarReference(H)
    ok = {(k, o): True for k in ("b", "im") for o in ORIENTATIONS}
    for mu in _box(d.rank, box):
        var = _sandwich_variants(H, mu)
        got = {"b": H.star_b(H.theta(mu)), "im": ref(mu)}
        for (k, o) in ok:
            if ok[(k, o)] and got[k] != var[o]:
                ok[(k, o)] = False
    return {k: [o for o in ORIENTATIONS if ok[(k, o)]] for k in ("b", "im")}


def suite_opposition(d: RootDatum, cfg: SuiteConfig) -> dict:
    H = hecke_algebra(d)
    rep = _Report("opposition", d)
    rng = cfg.rng("opposition", d)
    for x in ext_elements_upto(d, 4):
        rep.check("im_inverse", H.star_im(H.im(x)) == H.im(x.inverse()),
                  {"x": [list(x.mu), list(x.w.word)]})
    for w in d.weyl:
        rep.check("finite", H.star_b(H.t(w)) == H.t(w.inverse()) == H.star_im(H.t(w)),
                  {"w": list(w.word)})
    for n in range(cfg.count(50)):
        a = random_element(H, rng, 3, 2)
        rep.check("involution", H.star_im(H.star_im(a)) == a, {"a": _elt_witness(a)})
    n_pairs = cfg.count(200)
    for n in range(n_pairs):
        a, b = random_element(H, rng, 3, 2), random_element(H, rng, 3, 2)
        rep.check("star_b_anti", H.star_b(a * b) == H.star_b(b) * H.star_b(a), {"sample": n})
    # star_im blows supports up (hundreds of terms on G2), so its products stay small
    for n in range(cfg.count(40)):
        a, b = random_element(H, rng, 2, 1), random_element(H, rng, 2, 1)
        rep.check("star_im_anti", H.star_im(a * b) == H.star_im(b) * H.star_im(a), {"sample": n})
    orient = opposition_orientations(d, cfg.extra.get("sandwich_box", 3))
    rep.note("sandwich", orient)
    rep.check("star_b_as_written", orient["b"] == ["as-written"], orient)
    rep.check("star_im_one_orientation", len(orient["im"]) == 1, orient)
    return rep.done()


# -- parabolic ----------------------------------------------------------------------

def suite_length(d: RootDatum, cfg: SuiteConfig) -> dict:
    rep = _Report("length", d)
    W = d.weyl
    for L in all_levis(d):
        ctx = parabolic(d, L)
        r = ctx.check_length_formula()
        rep.check("conjugate_length", r["pass"], r)
        rep.check("coset_count", len(ctx.reps) * len(ctx.W_M) == len(W), {"levi": list(L)})
        # descent-free representatives versus the two positivity conditions on Delta_M
        pos = set(d.positive_roots)
        simple = [d.simple_roots[i - 1] for i in L]
        reps = set(ctx.reps)
        inv = {w for w in W if all(w.inverse().act_dual(a) in pos for a in simple)}
        fwd = {w for w in W if all(w.act_dual(a) in pos for a in simple)}
        rep.check("coset_inverse_positive", inv == reps, {"levi": list(L)})
        if L:
            rep.note(f"coset_condition_{''.join(map(str, L))}",
                     {"w^-1 alpha > 0": inv == reps, "w alpha > 0": fwd == reps})
        for w in W:
            a, b = d.pq_decompose(w, L)
            rep.check("pq_additive", a.length + b.length == w.length and a * b == w,
                      {"levi": list(L), "w": list(w.word)})
        Lp, w0p = d.conjugate_levi(L)
        back, w0pp = d.conjugate_levi(Lp)
        rep.check("conjugate_involution", back == tuple(L) and w0pp == w0p.inverse(),
                  {"levi": list(L), "conjugate": list(Lp)})
    return rep.done()


def _levi_generators(HM: HeckeAlgebra) -> list[HeckeElt]:
    gens = [HM.t((i,)) for i in range(1, HM.datum.n_simple + 1)]
    for j in range(HM.rank):
        gens += [HM.theta(_unit(HM.rank, j)), HM.theta(_unit(HM.rank, j, -1))]
    return gens


def suite_freeness(d: RootDatum, cfg: SuiteConfig) -> dict:
    H = hecke_algebra(d)
    rep = _Report("freeness", d)
    rng = cfg.rng("freeness", d)
    for L in all_levis(d):
        ctx = parabolic(d, L)
        for n in range(cfg.count(100)):
            h = random_element(H, rng, cfg.max_terms, cfg.max_mu)
            rep.check("left_roundtrip", ctx.reassemble_left(ctx.decompose_left(h)) == h,
                      {"levi": list(L), "h": _elt_witness(h)})
            rep.check("right_roundtrip", ctx.reassemble_right(ctx.decompose_right(h)) == h,
                      {"levi": list(L), "h": _elt_witness(h)})
        # {T_{w'}} is independent over H_M: the images of a spanning set of
        # sum_{w'} H_M (box of Theta's times W_M) have full rank
        rows, cols = [], {}
        for wp in ctx.reps:
            for mu in _box(d.rank, 1):
                for j in range(len(ctx.W_M)):
                    g = (ctx.embed(ctx.HM.basis(mu, j)) * H.t(wp)).grouped()
                    for key in g:
                        cols.setdefault(key, len(cols))
                    rows.append(g)
        mat = [[Laurent() for _ in range(len(cols))] for _ in rows]
        for r, g in enumerate(rows):
            for key, c in g.items():
                mat[r][cols[key]] = c
        rep.check("uniqueness", rank(mat) == len(rows), {"levi": list(L), "rows": len(rows)})
    return rep.done()


def suite_parabolic(d: RootDatum, cfg: SuiteConfig) -> dict:
    rep = _Report("parabolic", d)
    rng = cfg.rng("parabolic", d)
    H = hecke_algebra(d)
    for L in all_levis(d):
        ctx = parabolic(d, L)
        cp = ctx.conj
        samples = _levi_generators(cp.HM) + [
            random_element(cp.HM, rng, 3, 2) for _ in range(cfg.count(100))]
        for orientation, kind in cfg.configs():
            for n, om in enumerate(samples):
                rep.check(f"opposition_{kind}", ctx.parabolic_opposition(om, orientation, kind),
                          {"levi": list(L), "orientation": orientation, "sample": n,
                           "omega": _elt_witness(om)})
        for n in range(cfg.count(100) // 10 or 1):
            a, b = random_element(cp.HM, rng, 3, 2), random_element(cp.HM, rng, 3, 2)
            rep.check("gamma_hom", ctx.gamma(a * b) == ctx.gamma(a) * ctx.gamma(b), {"levi": list(L)})
            a, b = random_element(ctx.HM, rng, 3, 2), random_element(ctx.HM, rng, 3, 2)
            rep.check("embed_hom", ctx.embed(a * b) == ctx.embed(a) * ctx.embed(b), {"levi": list(L)})
            rep.check("gamma_inverse", ctx.gamma(ctx.gamma_inverse(a)) == a, {"levi": list(L)})
        # the conjugate Levi's Bernstein relations go to those of M
        for i in range(1, cp.sub.n_simple + 1):
            for mu in _box(d.rank, 2):
                lhs = ctx.gamma(cp.HM.t((i,)) * cp.HM.theta(mu))
                rhs = ctx.gamma(cp.HM.t((i,))) * ctx.gamma(cp.HM.theta(mu))
                rep.check("gamma_bernstein", lhs == rhs, {"levi": list(L), "s": i, "mu": list(mu)})
    full = parabolic(d, None)
    for n in range(5):
        h = random_element(H, rng, 3, 2)
        rep.check("full_levi_star", full.levi_star_b(h) == H.star_b(h), {"sample": n})
    return rep.done()


# -- modules ------------------------------------------------------------------------

def suite_induction(d: RootDatum, cfg: SuiteConfig) -> dict:
    rep = _Report("induction", d)
    rng = cfg.rng("induction", d)
    for L in all_levis(d):
        ctx = parabolic(d, L)
        for n in range(cfg.count(5)):
            chi = random_character(d, rng)
            r = stage_compatibility_check(chi, d, L)
            rep.check("stage_compatibility", r["pass"], {"levi": list(L), "chi": chi.to_json(), **r})
            V = principal_series(chi, d, L)
            v = validate_module(V)
            rep.check("levi_module_valid", v["pass"], {"levi": list(L), "chi": chi.to_json(), **v})
            ind = induce(V, ctx)
            rep.check("dimension", ind.dim == V.dim * len(ctx.reps), {"levi": list(L)})
            v = validate_module(ind)
            rep.check("induced_valid", v["pass"], {"levi": list(L), "chi": chi.to_json(), **v})
    return rep.done()


def suite_spectrum(d: RootDatum, cfg: SuiteConfig) -> dict:
    rep = _Report("spectrum", d)
    rng = cfg.rng("spectrum", d)
    for n in range(cfg.count(5)):
        chi = random_character(d, rng)
        mus = [_unit(d.rank, j) for j in range(d.rank)]
        mus += [tuple(rng.randint(-2, 2) for _ in range(d.rank)) for _ in range(3)]
        for mu in mus:
            r = theta_spectrum_check(chi, d, mu)
            rep.check("theta_spectrum", r["pass"], {"chi": chi.to_json(), **r})
    return rep.done()


def suite_reeder(d: RootDatum, cfg: SuiteConfig) -> dict:
    rep = _Report("reeder", d)
    rng = cfg.rng("reeder", d)
    for n in range(cfg.count(10)):
        chi = random_character(d, rng)
        extra = [tuple(rng.randint(-2, 2) for _ in range(d.rank)) for _ in range(2)]
        for orientation, kind in cfg.configs():
            _, r = reeder_check(chi, d, orientation, kind, extra_mu=extra)
            rep.check(f"reeder_{kind}", r["pass"], {"chi": chi.to_json(), **r})
    return rep.done()


def suite_jantzen(d: RootDatum, cfg: SuiteConfig) -> dict:
    rep = _Report("jantzen", d)
    rng = cfg.rng("jantzen", d)
    for L in all_levis(d):
        ctx = parabolic(d, L)
        for n in range(cfg.count(10)):
            chi = random_character(d, rng)
            V = principal_series(chi, d, L)
            for orientation, kind in cfg.configs():
                _, r = jantzen_check(V, orientation, kind, ctx)
                rep.check(f"jantzen_{kind}", r["pass"], {"chi": chi.to_json(), **r})
    return rep.done()


# -- convention report ---------------------------------------------------------------

def _translation_variants(d: RootDatum, box: int = 2) -> dict[str, list[str]]:
    """Which side assignment of ``T_w T_{pi^mu} = T_{w pi^mu}`` holds for (anti)dominant ``mu``."""
    H = hecke_algebra(d)
    ok = {("antidominant", o): True for o in ORIENTATIONS}
    ok.update({("dominant", o): True for o in ORIENTATIONS})
    e = d.weyl.identity
    for mu in _box(d.rank, box):
        kinds = [k for k, f in (("dominant", d.is_dominant), ("antidominant", d.is_antidominant)) if f(mu)]
        for kind in kinds:
            t = ExtElt(mu, e)
            for w in d.weyl:
                f = ExtElt(tuple([0] * d.rank), w)
                left = H.im(f) * H.im(t) == H.im(f * t)     # T_w T_{pi^mu}
                right = H.im(t) * H.im(f) == H.im(t * f)    # T_{pi^mu} T_w
                written = left if kind == "antidominant" else right
                mirrored = right if kind == "antidominant" else left
                ok[(kind, "as-written")] &= written
                ok[(kind, "mirrored")] &= mirrored
    return {kind: [o for o in ORIENTATIONS if ok[(kind, o)]] for kind in ("antidominant", "dominant")}


def _combos(check: Callable[[str, str], bool]) -> dict[str, list[str]]:
    return {k: [o for o in ORIENTATIONS if check(o, k)] for k in ("b", "im")}


def preset_conventions(d: RootDatum, cfg: SuiteConfig) -> dict:
    rng = cfg.rng("conventions", d)
    out: dict = {}
    tr = _translation_variants(d)
    out["translation_antidominant"] = {"-": tr["antidominant"]}
    out["translation_dominant"] = {"-": tr["dominant"]}
    out["opposition_sandwich"] = opposition_orientations(d, cfg.extra.get("sandwich_box", 3))

    par = {(o, k): True for o in ORIENTATIONS for k in ("b", "im")}
    jan = dict(par)
    twj = dict(par)
    for L in all_levis(d):
        ctx = parabolic(d, L)
        cp = ctx.conj
        samples = _levi_generators(cp.HM) + [random_element(cp.HM, rng, 3, 2) for _ in range(3)]
        chi = random_character(d, rng)
        V = principal_series(chi, d, L)
        for o in ORIENTATIONS:
            for k in ("b", "im"):
                par[(o, k)] &= all(ctx.parabolic_opposition(om, o, k) for om in samples)
                _, r = jantzen_check(V, o, k, ctx)
                jan[(o, k)] &= r["welldef"] and r["equivariant"] and r["bijective"]
                twj[(o, k)] &= r["twisted_jacquet"]
    out["parabolic_opposition"] = _combos(lambda o, k: par[(o, k)])
    chi = random_character(d, rng)
    out["reeder"] = _combos(lambda o, k: reeder_check(chi, d, o, k)[1]["pass"])
    out["jantzen"] = _combos(lambda o, k: jan[(o, k)])
    out["twisted_jacquet"] = _combos(lambda o, k: twj[(o, k)])
    return out


IDENTITIES = ("translation_antidominant", "translation_dominant", "opposition_sandwich",
              "parabolic_opposition", "reeder", "jantzen", "twisted_jacquet")


def convention_report(data: list[RootDatum], cfg: SuiteConfig) -> dict:
    """Which variant of each side-sensitive identity holds, per preset and globally."""
    per = {d.name: preset_conventions(d, cfg) for d in data}
    identities: dict = {}
    global_: dict = {}
    ok = True
    for ident in IDENTITIES:
        identities[ident] = {name: per[name][ident] for name in per}
        global_[ident] = {}
        for key in per[data[0].name][ident] if data else ():
            common = set(ORIENTATIONS)
            for name in per:
                common &= set(per[name][ident][key])
            choice = [o for o in ORIENTATIONS if o in common]
            if len(choice) == 1:
                global_[ident][key] = choice[0]
            else:
                global_[ident][key] = None
                ok = False
    # the opposition identities must pair star_b with the written form and star_im with its mirror
    uniform = all(global_[i].get("b") == "as-written" and global_[i].get("im") == "mirrored"
                  for i in IDENTITIES[2:])
    return {"suite": "conventions", "presets": [d.name for d in data], "identities": identities,
            "global": global_, "uniform": uniform, "pass": ok and uniform}


SUITES: dict[str, Callable[[RootDatum, SuiteConfig], dict]] = {
    "presentation": suite_presentation,
    "associativity": suite_associativity,
    "im": suite_im,
    "modulus": suite_modulus,
    "opposition": suite_opposition,
    "length": suite_length,
    "freeness": suite_freeness,
    "parabolic": suite_parabolic,
    "induction": suite_induction,
    "spectrum": suite_spectrum,
    "reeder": suite_reeder,
    "jantzen": suite_jantzen,
}
ALIASES = {"bernstein": "presentation", "lemma": "modulus"}


def run_suite(name: str, data: list[RootDatum], cfg: SuiteConfig) -> dict:
    name = ALIASES.get(name, name)
    if name == "conventions":
        return convention_report(data, cfg)
    if name not in SUITES:
        raise KeyError(name)
    reports = [SUITES[name](d, cfg) for d in data]
    return {"suite": name, "seed": cfg.seed, "pass": all(r["pass"] for r in reports), "reports": reports}
