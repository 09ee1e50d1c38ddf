"""Parabolic subalgebras ``H_M`` of ``H`` for a standard Levi ``M``.

``H_M`` is the Hecke algebra of the Levi root datum (same lattice, simple
roots restricted to ``L``), multiplied with its own Bernstein relations.  Its
Weyl group indices are local; :meth:`ParabolicCtx.embed` relabels them into
the ambient algebra.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .hecke import HeckeAlgebra, HeckeElt, _KB, _MU_SHIFT, _WB, _clean, _split, hecke_algebra
from .rootdata import ConventionError, RootDatum, WeylElt

__all__ = ["ParabolicCtx", "parabolic", "ORIENTATIONS"]

ORIENTATIONS = ("as-written", "mirrored")


def _relabel(elt: HeckeElt, target: HeckeAlgebra, wmap, mumap=None) -> HeckeElt:
    """Move every term ``Theta_mu T_w`` to ``target`` with ``w -> wmap[w]`` (``mu -> mumap(mu)``)."""
    out: dict[int, object] = {}
    if mumap is None:
        for key, c in elt._d.items():
            mp, w, k = _split(key)
            out[(mp * _WB + wmap[w]) * _KB + k] = c
        return HeckeElt(target, out)
    acc: dict[int, object] = defaultdict(int)
    for mu, w, k, c in elt.raw_terms():
        acc[target._key(mumap(mu), wmap[w], k)] += c
    return HeckeElt(target, _clean(acc))


@dataclass
class ParabolicCtx:
    """A standard Levi ``L`` of ``datum`` with its coset data and conjugate Levi."""

    datum: RootDatum
    levi: tuple[int, ...]
    sub: RootDatum = field(init=False, repr=False)
    H: HeckeAlgebra = field(init=False, repr=False)
    HM: HeckeAlgebra = field(init=False, repr=False)

    def __post_init__(self):
        d = self.datum
        self.levi = d.levi_set(self.levi)
        self.sub = d.levi(self.levi)
        self.H = hecke_algebra(d)
        self.HM = hecke_algebra(self.sub)
        W, WM = d.weyl, self.sub.weyl
        # local index j of the Levi is the global simple index levi[j-1]
        self.to_global = [W.from_word(self.levi[i - 1] for i in word).idx for word in WM.words]
        self.to_local = {g: j for j, g in enumerate(self.to_global)}
        self.W_M = [W.elements[g] for g in self.to_global]
        self.reps = d.min_coset_reps(self.levi)
        self.w0pp = d.longest_element(self.levi)
        self.conj_levi, self.w0p = d.conjugate_levi(self.levi)
        if W.lengths[-1] != self.w0pp.length + self.w0p.length or self.w0pp * self.w0p != W.longest():
            raise ConventionError(f"{d.name}{list(self.levi)}: w0 != w0'' w0'")
        self._decomp: dict = {}
        self._conj: ParabolicCtx | None = None

    def __repr__(self) -> str:
        return f"ParabolicCtx({self.datum.name}, levi={list(self.levi)})"

    @property
    def conj(self) -> ParabolicCtx:
        """The context of the conjugate Levi ``M' = w0'^{-1} M w0'``."""
        if self._conj is None:
            self._conj = parabolic(self.datum, self.conj_levi)
        return self._conj

    # -- embedding -------------------------------------------------------------
    def local(self, w: WeylElt) -> int:
        """Local index of ``w`` in ``W_M``; raises if ``w`` is not in ``W_M``."""
        try:
            return self.to_local[w.idx]
        except KeyError:
            raise ValueError(f"{w} is not in W_M for levi {list(self.levi)}") from None

    def embed(self, h: HeckeElt) -> HeckeElt:
        """``H_M -> H``: ``Theta^M_mu T^M_w -> Theta_mu T_w``."""
        if h.alg is not self.HM:
            raise ValueError(f"expected an element of H_M for levi {list(self.levi)}")
        if self.HM is self.H:
            return h
        return _relabel(h, self.H, self.to_global)

    def to_levi(self, h: HeckeElt) -> HeckeElt:
        """Inverse of :meth:`embed`; raises on support outside ``W_M``."""
        if h.alg is not self.H:
            raise ValueError("expected an element of the ambient algebra")
        if self.HM is self.H:
            return h
        bad = [w for w in h.weyl_support() if w.idx not in self.to_local]
        if bad:
            raise ValueError(f"support {bad[0]} lies outside W_M for levi {list(self.levi)}")
        return _relabel(h, self.HM, self.to_local)

    def levi_elt(self, terms) -> HeckeElt:
        """An element of ``H_M`` from ``(mu, global word, coeff)`` triples."""
        W = self.datum.weyl
        return self.HM.from_terms(
            (mu, self.local(W.from_word(w)), c) for mu, w, c in terms)

    # -- freeness over H_M -------------------------------------------------------
    def decompose_left(self, h: HeckeElt) -> dict[WeylElt, HeckeElt]:
        """``h = sum_{w'} omega_{w'} T_{w'}`` with ``omega_{w'}`` in ``H_M`` and ``w'`` in ^M W."""
        if h.alg is not self.H:
            raise ValueError("expected an element of the ambient algebra")
        W = self.datum.weyl
        split = self._decomp
        parts: dict[int, dict[int, object]] = defaultdict(dict)
        for key, c in h._d.items():
            mp, w, k = _split(key)
            s = split.get(w)
            if s is None:
                wpp, wp = self.datum.pq_decompose(W.elements[w], self.levi)
                s = split[w] = (self.to_local[wpp.idx], wp.idx)
            parts[s[1]][(mp * _WB + s[0]) * _KB + k] = c
        return {W.elements[wp]: HeckeElt(self.HM, d) for wp, d in sorted(parts.items())}

    def reassemble_left(self, parts: dict[WeylElt, HeckeElt]) -> HeckeElt:
        out = self.H.zero()
        for wp, omega in parts.items():
            out = out + self.embed(omega) * self.H.t(wp)
        return out

    def decompose_right(self, h: HeckeElt) -> dict[WeylElt, HeckeElt]:
        """``h = sum_x T_x omega_x`` with ``x`` minimal in ``x W_M`` and ``omega_x`` in ``H_M``."""
        if h.alg is not self.H:
            raise ValueError("expected an element of the ambient algebra")
        W = self.datum.weyl
        HM = self.HM
        parts: dict[int, HeckeElt] = {}
        for (w, mu), c in self.H.t_left_form(h).items():
            x, wpp = self.datum.qp_decompose(W.elements[w], self.levi)
            term = (HM.t(self.local(wpp)) * HM.theta(mu)).scale(c)
            parts[x.idx] = parts[x.idx] + term if x.idx in parts else term
        return {W.elements[x]: om for x, om in sorted(parts.items()) if om}

    def reassemble_right(self, parts: dict[WeylElt, HeckeElt]) -> HeckeElt:
        out = self.H.zero()
        for x, omega in parts.items():
            out = out + self.H.t(x) * self.embed(omega)
        return out

    def decompose_over_levi(self, h: HeckeElt, side: str = "left") -> dict[WeylElt, HeckeElt]:
        if side == "left":
            return self.decompose_left(h)
        if side == "right":
            return self.decompose_right(h)
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")

    # -- oppositions and transport ---------------------------------------------
    def levi_star(self, h: HeckeElt, kind: str = "b") -> HeckeElt:
        """The opposition of ``H_M`` computed with the Levi's own data."""
        if h.alg is not self.HM:
            raise ValueError(f"expected an element of H_M for levi {list(self.levi)}")
        return self.HM.star(h, kind)

    def levi_star_b(self, h: HeckeElt) -> HeckeElt:
        return self.levi_star(h, "b")

    def levi_star_im(self, h: HeckeElt) -> HeckeElt:
        return self.levi_star(h, "im")

    def gamma(self, h: HeckeElt) -> HeckeElt:
        """The isomorphism ``H_{M'} -> H_M`` induced by ``x -> w0' x w0'^{-1}``."""
        cp = self.conj
        if h.alg is not cp.HM:
            raise ValueError(f"expected an element of H_M' for levi {list(cp.levi)}")
        W = self.datum.weyl
        w0p, w0p_inv = self.w0p.idx, W.inv[self.w0p.idx]
        wmap = [self.to_local[W.mul(W.mul(w0p, g), w0p_inv)] for g in cp.to_global]
        mat = W.matrices[w0p]
        return _relabel(h, self.HM, wmap,
                        lambda mu: tuple(sum(r[j] * mu[j] for j in range(len(mu))) for r in mat))

    def gamma_inverse(self, h: HeckeElt) -> HeckeElt:
        cp = self.conj
        if h.alg is not self.HM:
            raise ValueError(f"expected an element of H_M for levi {list(self.levi)}")
        W = self.datum.weyl
        w0p, w0p_inv = self.w0p.idx, W.inv[self.w0p.idx]
        wmap = [cp.to_local[W.mul(W.mul(w0p_inv, g), w0p)] for g in self.to_global]
        mat = W.matrices[w0p_inv]
        return _relabel(h, cp.HM, wmap,
                        lambda mu: tuple(sum(r[j] * mu[j] for j in range(len(mu))) for r in mat))

    def sandwich(self, x: HeckeElt, orientation: str) -> HeckeElt:
        """``T_{w0'}^{-1} x T_{w0'}`` (as written) or ``T_{w0'^{-1}} x T_{w0'^{-1}}^{-1}`` (mirrored)."""
        H = self.H
        if orientation == "as-written":
            return H.t_inv(self.w0p) * x * H.t(self.w0p)
        if orientation == "mirrored":
            w = self.w0p.inverse()
            return H.t(w) * x * H.t_inv(w)
        raise ValueError(f"orientation must be one of {ORIENTATIONS}, not {orientation!r}")

    def prefactor(self, orientation: str) -> HeckeElt:
        """The element multiplying ``h^*`` in the Jantzen map for each orientation."""
        if orientation == "as-written":
            return self.H.t(self.w0p)
        if orientation == "mirrored":
            return self.H.t_inv(self.w0p.inverse())
        raise ValueError(f"orientation must be one of {ORIENTATIONS}, not {orientation!r}")

    # -- identities --------------------------------------------------------------
    def check_length_formula(self) -> dict:
        """``l(w0'^{-1} w'' w0') = l(w'')`` for every ``w''`` in ``W_M``."""
        inv = self.w0p.inverse()
        witnesses = []
        for w in self.W_M:
            c = inv * w * self.w0p
            if c.length != w.length:
                witnesses.append({"w''": list(w.word), "conjugate": list(c.word)})
        return {"levi": list(self.levi), "checked": len(self.W_M),
                "pass": not witnesses, "witnesses": witnesses}

    def parabolic_opposition(self, omega: HeckeElt, orientation: str, kind: str) -> bool:
        """Compare ``star(embed(omega))`` with the sandwich of ``gamma(omega^#)`` for ``omega`` in ``H_{M'}``."""
        cp = self.conj
        lhs = self.H.star(cp.embed(omega), kind)
        rhs = self.sandwich(self.embed(self.gamma(cp.levi_star(omega, kind))), orientation)
        return lhs == rhs


_CTX: dict[tuple[int, tuple[int, ...]], ParabolicCtx] = {}


def parabolic(datum: RootDatum, levi: Iterable[int] | None) -> ParabolicCtx:
    """The (cached) parabolic context of ``levi``."""
    L = datum.levi_set(levi)
    key = (id(datum), L)
    ctx = _CTX.get(key)
    if ctx is None or ctx.datum is not datum:
        ctx = _CTX[key] = ParabolicCtx(datum, L)
    return ctx
