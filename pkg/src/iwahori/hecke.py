"""The Iwahori-Hecke algebra in the Bernstein basis ``Theta_mu T_w``.

Elements are stored flat: a dict ``key -> c`` meaning the term
``c * v^k * Theta_mu * T_w``, where ``key`` packs ``(mu, w_index, k)`` into one
integer with balanced digits.  Packing is additive in ``mu`` and ``k``, so the
inner multiplication loop shifts keys by plain integer addition.  All
arithmetic is exact.

Normalization: ``delta^{1/2}(pi^mu) = v^{-<2rho, mu>}``, so for dominant ``mu``
the Iwahori-Matsumoto element is ``T_{pi^mu} = v^{<2rho, mu>} Theta_mu``.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import gcd as _gcd
from typing import Iterable, Sequence

import numpy as np

from . import _kernel
from .laurent import Laurent, as_rational
from .rootdata import ConventionError, ExtElt, RootDatum, WeylElt, pairing

__all__ = ["HeckeAlgebra", "HeckeElt", "hecke_algebra"]

Vec = tuple[int, ...]
Key = int

# digit sizes for packed keys; coordinates and v-exponents must stay below half
_MB = 1 << 24
_WB = 1 << 20
_KB = 1 << 24
_HALF_MB = _MB // 2
_HALF_KB = _KB // 2
_MU_SHIFT = _WB * _KB


def _pack(mu: Vec) -> int:
    x = 0
    for c in reversed(mu):
        x = x * _MB + c
    return x


def _unpack(x: int, rank: int) -> Vec:
    out = []
    for _ in range(rank):
        d = (x + _HALF_MB) % _MB - _HALF_MB
        out.append(d)
        x = (x - d) // _MB
    return tuple(out)


def _split(key: int) -> tuple[int, int, int]:
    """``key -> (packed mu, w, k)``."""
    k = (key + _HALF_KB) % _KB - _HALF_KB
    r = (key - k) // _KB
    w = r % _WB
    return (r - w) // _WB, w, k


def _add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def _neg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def _clean(d: dict) -> dict:
    return {k: as_rational(c) for k, c in d.items() if c}


class HeckeElt:
    """A finite sum ``sum c_{mu,w}(v) Theta_mu T_w``; treat as immutable."""

    __slots__ = ("alg", "_d")

    def __init__(self, alg: HeckeAlgebra, data: dict[Key, object] | None = None):
        self.alg = alg
        self._d: dict[Key, object] = data if data is not None else {}

    # -- ring structure ----------------------------------------------------
    def _check(self, other: HeckeElt) -> None:
        if other.alg is not self.alg:
            raise ValueError(
                f"datum mismatch: {self.alg.datum.name} vs {other.alg.datum.name}")

    def __add__(self, other) -> HeckeElt:
        if not isinstance(other, HeckeElt):
            other = self.alg.scalar(other)
        self._check(other)
        out = dict(self._d)
        for key, c in other._d.items():
            out[key] = out.get(key, 0) + c
        return HeckeElt(self.alg, _clean(out))

    __radd__ = __add__

    def __neg__(self) -> HeckeElt:
        return HeckeElt(self.alg, {k: -c for k, c in self._d.items()})

    def __sub__(self, other) -> HeckeElt:
        if not isinstance(other, HeckeElt):
            other = self.alg.scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> HeckeElt:
        return self.alg.scalar(other) - self

    def __mul__(self, other) -> HeckeElt:
        if isinstance(other, HeckeElt):
            return self.alg.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> HeckeElt:
        return self.scale(other)

    def __pow__(self, n: int) -> HeckeElt:
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> HeckeElt:
        """Multiply by a central scalar (rational or Laurent polynomial in v)."""
        c = Laurent.coerce(c)
        cd = c.as_dict()
        if len(cd) == 1:
            (j, y), = cd.items()
            return HeckeElt(self.alg, {key + j: as_rational(x * y) for key, x in self._d.items()})
        out: dict[Key, object] = defaultdict(int)
        for key, x in self._d.items():
            for j, y in cd.items():
                out[key + j] += x * y
        return HeckeElt(self.alg, _clean(out))

    def __eq__(self, other) -> bool:
        if isinstance(other, HeckeElt):
            return other.alg is self.alg and other._d == self._d
        try:
            return self._d == self.alg.scalar(other)._d
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.alg), frozenset(self._d.items())))

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self) -> bool:
        return bool(self._d)

    # -- readout -----------------------------------------------------------
    def raw_terms(self) -> Iterable[tuple[Vec, int, int, object]]:
        """Unordered ``(mu, w_index, k, c)`` for each monomial ``c v^k Theta_mu T_w``."""
        unpack = self.alg._unpack
        for key, c in self._d.items():
            mp, w, k = _split(key)
            yield unpack(mp), w, k, c

    def grouped(self) -> dict[tuple[Vec, int], Laurent]:
        acc: dict[tuple[Vec, int], dict[int, object]] = defaultdict(dict)
        for mu, w, k, c in self.raw_terms():
            acc[(mu, w)][k] = c
        return {key: Laurent(v) for key, v in acc.items()}

    def terms(self) -> list[tuple[Vec, WeylElt, Laurent]]:
        """Terms ``(mu, w, coeff)`` in canonical order."""
        W = self.alg.weyl
        g = self.grouped()
        keys = sorted(g, key=lambda mw: (sum(abs(x) for x in mw[0]), mw[0], mw[1]))
        return [(mu, W.elements[w], g[(mu, w)]) for mu, w in keys]

    def coeff(self, mu: Sequence[int], w: WeylElt | Sequence[int] = ()) -> Laurent:
        w = self.alg._widx(w)
        mu = tuple(mu)
        return Laurent({k: c for m, x, k, c in self.raw_terms() if m == mu and x == w})

    def support(self) -> set[tuple[Vec, int]]:
        return {(mu, w) for mu, w, _, _ in self.raw_terms()}

    def weyl_support(self) -> set[WeylElt]:
        W = self.alg.weyl
        return {W.elements[w] for _, w, _, _ in self.raw_terms()}

    def __len__(self) -> int:
        return len(self.support())

    def __repr__(self) -> str:
        if not self._d:
            return "0"
        parts = []
        for mu, w, c in self.terms():
            basis = []
            if any(mu):
                basis.append(f"Theta{list(mu)}")
            if not w.is_identity():
                basis.append(f"T[{w!r}]")
            b = "*".join(basis) or "1"
            parts.append(f"({c})*{b}")
        return " + ".join(parts)

    def specialize_v1(self) -> dict[tuple[Vec, WeylElt], Fraction]:
        """The image under ``v -> 1`` (group algebra of the extended affine Weyl group)."""
        acc: dict[tuple[Vec, int], object] = defaultdict(int)
        for mu, w, k, c in self.raw_terms():
            acc[(mu, w)] += c
        W = self.alg.weyl
        return {(mu, W.elements[w]): Fraction(c) for (mu, w), c in acc.items() if c}

    def evaluate(self, v) -> HeckeElt:
        """Specialize ``v`` to a nonzero rational; the result has constant coefficients."""
        v = Fraction(v)
        acc: dict[Key, object] = defaultdict(int)
        for key, c in self._d.items():
            k = (key + _HALF_KB) % _KB - _HALF_KB
            acc[key - k] += c * v ** k
        return HeckeElt(self.alg, _clean(acc))


class HeckeAlgebra:
    """Multiplication, basis conversions and oppositions for one root datum."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.weyl = datum.weyl
        self.rank = datum.rank
        if len(self.weyl) >= _WB:
            raise ValueError(f"{datum.name}: Weyl group too large for packed keys")
        self._zero_mu = datum.zero()
        self._unpacked: dict[int, Vec] = {}
        self._push: dict[tuple[int, Vec], list] = {}
        self._prod0: dict[tuple[int, int], list] = {}
        self._pusht: dict[tuple[int, int, int], list] = {}
        self._tlf: dict[tuple[Vec, int], list] = {}
        self._tinv: dict[int, HeckeElt] = {}
        self._im: dict[tuple[Vec, int], HeckeElt] = {}
        self._im_inv: dict[tuple[Vec, int], HeckeElt] = {}
        self._star_im_cache: dict[Vec, HeckeElt] = {}
        self._aff_cache: list | None = None
        self._two_rho = datum.two_rho()
        self._w0 = datum.longest_element()

    def __repr__(self) -> str:
        return f"HeckeAlgebra({self.datum.name!r})"

    # -- packed keys -------------------------------------------------------
    def _key(self, mu: Vec, w: int, k: int) -> Key:
        return (_pack(mu) * _WB + w) * _KB + k

    def _unpack(self, mp: int) -> Vec:
        mu = self._unpacked.get(mp)
        if mu is None:
            mu = _unpack(mp, self.rank)
            self._unpacked[mp] = mu
        return mu

    # -- constructors ------------------------------------------------------
    def _widx(self, w) -> int:
        if isinstance(w, WeylElt):
            if w.group is not self.weyl:
                raise ValueError("Weyl element from another group")
            return w.idx
        if isinstance(w, int):
            return w
        return self.weyl.from_word(w).idx

    def _mu(self, mu: Sequence[int]) -> Vec:
        mu = tuple(int(x) for x in mu)
        if len(mu) != self.rank:
            raise ValueError(f"cocharacter {mu} does not have rank {self.rank}")
        if any(abs(x) >= _HALF_MB // 4 for x in mu):
            raise ValueError(f"cocharacter {mu} is too large")
        return mu

    def zero(self) -> HeckeElt:
        return HeckeElt(self, {})

    def one(self) -> HeckeElt:
        return self.scalar(1)

    def scalar(self, c) -> HeckeElt:
        c = Laurent.coerce(c)
        return HeckeElt(self, {self._key(self._zero_mu, 0, k): x for k, x in c.as_dict().items()})

    def basis(self, mu: Sequence[int], w=(), coeff=1) -> HeckeElt:
        """``coeff * Theta_mu * T_w``."""
        c = Laurent.coerce(coeff)
        mu, w = self._mu(mu), self._widx(w)
        return HeckeElt(self, {self._key(mu, w, k): x for k, x in c.as_dict().items()})

    def theta(self, mu: Sequence[int]) -> HeckeElt:
        return self.basis(mu)

    def t(self, w) -> HeckeElt:
        """``T_w`` for a Weyl element or word."""
        return self.basis(self._zero_mu, w)

    def t_word(self, word: Iterable[int]) -> HeckeElt:
        """The product ``T_{s_{i1}} ... T_{s_{ik}}`` (equals ``T_w`` for reduced words)."""
        out = self.one()
        for i in word:
            self.datum.check_index(i)
            out = out * self.t((i,))
        return out

    def t_inv(self, w) -> HeckeElt:
        """``T_w^{-1}``."""
        w = self._widx(w)
        res = self._tinv.get(w)
        if res is None:
            res = self.one()
            q_inv = Laurent.monomial(1, -2)
            for i in reversed(self.weyl.words[w]):
                s_inv = self.t((i,)).scale(q_inv) - self.scalar(1 - q_inv)
                res = res * s_inv
            self._tinv[w] = res
        return res

    def from_terms(self, terms: Iterable[tuple[Sequence[int], object, object]]) -> HeckeElt:
        acc: dict[Key, object] = defaultdict(int)
        for mu, w, c in terms:
            for key, x in self.basis(mu, w, c)._d.items():
                acc[key] += x
        return HeckeElt(self, _clean(acc))

    # -- normalization -----------------------------------------------------
    def delta_half_exp(self, mu: Sequence[int], levi: Iterable[int] | None = None) -> int:
        """``e`` with ``delta_L^{1/2}(pi^mu) = v^e``."""
        return -pairing(self.datum.two_rho(levi), mu)

    # -- Bernstein relation --------------------------------------------------
    def _cross_terms(self, i: int, mu: Vec) -> list[tuple[Vec, int, int, int]]:
        """``T_s Theta_mu`` as a list ``(kappa, w, k, c)``."""
        d = self.datum
        a = d.simple_roots[i - 1]
        ac = d.simple_coroots[i - 1]
        m = pairing(a, mu)
        s = self.weyl.lmul[i - 1][0]
        out = [(d.reflect(i, mu), s, 0, 1)]
        if m > 0:
            for k in range(m):
                kap = tuple(x - k * y for x, y in zip(mu, ac))
                out += [(kap, 0, 2, 1), (kap, 0, 0, -1)]
        elif m < 0:
            for k in range(1, -m + 1):
                kap = tuple(x + k * y for x, y in zip(mu, ac))
                out += [(kap, 0, 2, -1), (kap, 0, 0, 1)]
        return out

    def cross(self, i: int, mu: Sequence[int]) -> HeckeElt:
        """Normal form of ``T_{s_i} Theta_mu`` read off the Bernstein relation."""
        self.datum.check_index(i)
        acc: dict[Key, object] = defaultdict(int)
        for kap, w, k, c in self._cross_terms(i, self._mu(mu)):
            acc[self._key(kap, w, k)] += c
        return HeckeElt(self, _clean(acc))

    # -- multiplication ------------------------------------------------------
    def _prod_h0(self, x: int, u: int) -> list[tuple[int, int, object]]:
        """``T_x T_u`` as a list ``(y, k, c)``."""
        key = (x, u)
        res = self._prod0.get(key)
        if res is not None:
            return res
        W = self.weyl
        if u == 0:
            res = [(x, 0, 1)]
        else:
            i = W.words[u][0]
            u2 = W.lmul[i - 1][u]
            xs = W.rmul[i - 1][x]
            if W.lengths[xs] > W.lengths[x]:
                first = [(xs, 0, 1)]
            else:
                first = [(xs, 2, 1), (x, 2, 1), (x, 0, -1)]
            acc: dict[tuple[int, int], object] = defaultdict(int)
            for y, k, c in first:
                for z, k2, c2 in self._prod_h0(y, u2):
                    acc[(z, k + k2)] += c * c2
            res = [(z, k, c) for (z, k), c in acc.items() if c]
        self._prod0[key] = res
        return res

    def _push_theta(self, w: int, nu: Vec) -> list[tuple[Vec, int, int, object]]:
        """``T_w Theta_nu`` in normal form, as a list ``(kappa, x, k, c)``."""
        key = (w, nu)
        res = self._push.get(key)
        if res is not None:
            return res
        W = self.weyl
        if w == 0:
            res = [(nu, 0, 0, 1)]
        else:
            i = W.words[w][0]
            w2 = W.lmul[i - 1][w]
            acc: dict[tuple[Vec, int, int], object] = defaultdict(int)
            for kap, x, k, c in self._push_theta(w2, nu):
                for kap2, s, k2, c2 in self._cross_terms(i, kap):
                    if s == 0:
                        acc[(kap2, x, k + k2)] += c * c2
                    else:
                        for y, k3, c3 in self._prod_h0(s, x):
                            acc[(kap2, y, k + k2 + k3)] += c * c2 * c3
            res = [(kap, x, k, c) for (kap, x, k), c in acc.items() if c]
        self._push[key] = res
        return res

    def _push_packed(self, w: int, nu_p: int, u: int) -> list[tuple[Key, object]]:
        """``T_w Theta_nu T_u`` in normal form, as packed ``(key, c)`` pairs."""
        key = (w, nu_p, u)
        res = self._pusht.get(key)
        if res is not None:
            return res
        acc: dict[Key, object] = defaultdict(int)
        for kap, x, k, c in self._push_theta(w, self._unpack(nu_p)):
            kp = _pack(kap) * _MU_SHIFT + k
            for y, k2, c2 in self._prod_h0(x, u):
                acc[kp + y * _KB + k2] += c * c2
        res = [(kk, c) for kk, c in acc.items() if c]
        self._pusht[key] = res
        return res

    def mul(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        a._check(b)
        if a.alg is not self:
            raise ValueError("element from another algebra")
        if not a._d or not b._d:
            return self.zero()
        if _kernel.AVAILABLE and len(a._d) * len(b._d) > 16:
            res = self._mul_compiled(a, b)
            if res is not None:
                return res
        return self._mul_python(a, b)

    def _mul_python(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        # a-terms keyed by w carry the shift mu*_MU_SHIFT + k
        left: dict[int, list] = defaultdict(list)
        for key, c in a._d.items():
            mp, w, k = _split(key)
            left[w].append((mp * _MU_SHIFT + k, c))
        right: dict[tuple[int, int], list] = defaultdict(list)
        for key, c in b._d.items():
            mp, u, k = _split(key)
            right[(mp, u)].append((k, c))
        out: dict[Key, object] = defaultdict(int)
        for w, shifts in left.items():
            for (nu_p, u), kcs in right.items():
                pushed = self._push_packed(w, nu_p, u)
                for sa, ca in shifts:
                    for kb, cb in kcs:
                        s0, c0 = sa + kb, ca * cb
                        for kp, cp in pushed:
                            out[kp + s0] += c0 * cp
        return HeckeElt(self, _clean(out))

    # -- compiled multiplication --------------------------------------------
    def _tables(self):
        tabs = self.__dict__.get("_ktables")
        if tabs is None:
            d, W = self.datum, self.weyl
            n_w = len(W)
            roots = np.array(d.simple_roots, dtype=np.int64).reshape(d.n_simple, self.rank)
            coroots = np.array(d.simple_coroots, dtype=np.int64).reshape(d.n_simple, self.rank)
            lmul = np.array(W.lmul, dtype=np.int64).reshape(d.n_simple, n_w)
            lengths = np.array(W.lengths, dtype=np.int64)
            off, ys, ks, cs = [0], [], [], []
            for x in range(n_w):
                for u in range(n_w):
                    for y, k, c in self._prod_h0(x, u):
                        ys.append(y)
                        ks.append(k)
                        cs.append(c)
                    off.append(len(ys))
            words = [np.array([i - 1 for i in W.words[w]], dtype=np.int64) for w in range(n_w)]
            tabs = (roots, coroots, lmul, lengths, np.array(off, dtype=np.int64),
                    np.array(ys, dtype=np.int64), np.array(ks, dtype=np.int64),
                    np.array(cs, dtype=np.int64), words)
            self.__dict__["_ktables"] = tabs
            self._p0_norm = max(
                sum(abs(c) for _, _, c in self._prod_h0(x, u)) for x in range(n_w) for u in range(n_w))
        return tabs

    def _orbit_bounds(self, mus: np.ndarray) -> np.ndarray:
        """Per row ``nu`` of ``mus``: the largest coordinate (in absolute value) on ``W nu``."""
        mats = self.__dict__.get("_kmats")
        if mats is None:
            mats = np.array(self.weyl.matrices, dtype=np.int64).reshape(len(self.weyl), self.rank, self.rank)
            self.__dict__["_kmats"] = mats
        return np.abs(np.einsum("wij,nj->nwi", mats, mus)).reshape(len(mus), -1).max(axis=1)

    def _push_arrays(self, w: int, nu_p: int, u: int):
        """Compiled ``T_w Theta_nu T_u`` as ``(kappa, y, k, c)`` arrays (memoized)."""
        cache = self.__dict__.setdefault("_kpush", {})
        key = (w, nu_p, u)
        res = cache.get(key)
        if res is None:
            roots, coroots, lmul, lengths, p0_off, p0_y, p0_k, p0_c, words = self._tables()
            nu = np.array([self._unpack(nu_p)], dtype=np.int64).reshape(1, self.rank)
            R = int(self._orbit_bounds(nu)[0])
            one = np.ones(1, dtype=np.int64)
            zero = np.zeros(1, dtype=np.int64)
            kap, xs, ks, cs, ok = _kernel.apply_left(words[w], nu, zero, zero, one, roots,
                                                     coroots, lmul, lengths, R, len(self.weyl))
            if ok:
                *res, ok = _kernel.right_t(u, kap, xs, ks, cs, p0_off, p0_y, p0_k, p0_c,
                                           self._p0_norm, R, len(self.weyl))
            res = tuple(res) if ok else None
            cache[key] = res
        return res

    def _int_parts(self, elt: HeckeElt):
        """``(parts, den)`` with integer coefficients ``c * den``, or ``None`` if too large."""
        den = 1
        for c in elt._d.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // _gcd(den, c.denominator)
        parts = [(_split(key), int(c * den)) for key, c in elt._d.items()]
        if sum(abs(c) for _, c in parts) >= _kernel.LIMIT:
            return None
        return parts, den

    def _mul_compiled(self, a: HeckeElt, b: HeckeElt) -> HeckeElt | None:
        """The product via the compiled kernel, or ``None`` if it does not fit in int64."""
        n_w, r = len(self.weyl), self.rank
        pa, pb = self._int_parts(a), self._int_parts(b)
        if pa is None or pb is None or not r:
            return None
        (a_parts, a_den), (b_parts, b_den) = pa, pb
        left: dict[int, list] = defaultdict(list)
        for (mp, w, k), c in a_parts:
            left[w].append((self._unpack(mp), k, c))
        right: dict[tuple[int, int], list] = defaultdict(list)
        for (mp, u, k), c in b_parts:
            right[(mp, u)].append((k, c))
        ws = list(left)
        a_norm = sum(abs(c) for _, c in a_parts)
        if len(right) <= 2 * len(a_parts):
            # few right-hand groups: one memoized push T_w Theta_nu T_u per pair
            gbs = list(right)
            nus = np.array([self._unpack(mp) for mp, _ in gbs], dtype=np.int64).reshape(-1, r)
            R = int(self._orbit_bounds(nus).max())
            pushes = [self._push_arrays(w, mp, u) for w in ws for mp, u in gbs]
            b_k = np.array([k for g in gbs for k, _ in right[g]], dtype=np.int64)
            b_c = np.array([c for g in gbs for _, c in right[g]], dtype=np.int64)
            b_off = np.cumsum([0] + [len(right[g]) for g in gbs]).astype(np.int64)
        else:
            # many right-hand groups: apply T_w to all of b at once
            roots, coroots, lmul, lengths, *_rest, words = self._tables()
            b_mu = np.array([self._unpack(mp) for (mp, _, _), _ in b_parts],
                            dtype=np.int64).reshape(-1, r)
            R = int(self._orbit_bounds(b_mu).max())
            b_x = np.array([u for (_, u, _), _ in b_parts], dtype=np.int64)
            b_kk = np.array([k for (_, _, k), _ in b_parts], dtype=np.int64)
            b_cc = np.array([c for _, c in b_parts], dtype=np.int64)
            pushes = []
            for w in ws:
                *res, ok = _kernel.apply_left(words[w], b_mu, b_x, b_kk, b_cc, roots, coroots,
                                              lmul, lengths, R, n_w)
                pushes.append(tuple(res) if ok else None)
            gbs = [None]
            b_k = np.zeros(1, dtype=np.int64)
            b_c = np.ones(1, dtype=np.int64)
            b_off = np.array([0, 1], dtype=np.int64)
        if any(p is None for p in pushes):
            return None
        p_max = max(int(np.abs(p[3]).sum()) for p in pushes)
        if a_norm * int(np.abs(b_c).sum()) * p_max >= _kernel.LIMIT:
            return None
        pushes = [p if len(p[3]) else (np.zeros((1, r), np.int64), np.zeros(1, np.int64),
                                       np.zeros(1, np.int64), np.zeros(1, np.int64))
                  for p in pushes]
        a_mu = np.array([m for w in ws for m, _, _ in left[w]], dtype=np.int64).reshape(-1, r)
        a_k = np.array([k for w in ws for _, k, _ in left[w]], dtype=np.int64)
        a_c = np.array([c for w in ws for _, _, c in left[w]], dtype=np.int64)
        kap = np.concatenate([p[0] for p in pushes]).reshape(-1, r)
        p_y = np.concatenate([p[1] for p in pushes])
        p_k = np.concatenate([p[2] for p in pushes])
        p_c = np.concatenate([p[3] for p in pushes])
        a_lo, kap_lo = a_mu.min(axis=0), kap.min(axis=0)
        mu_lo = a_lo + kap_lo
        mu_size = a_mu.max(axis=0) - a_lo + kap.max(axis=0) - kap_lo + 1
        k_lo = int(a_k.min() + b_k.min() + p_k.min())
        k_size = int(a_k.max() - a_k.min() + b_k.max() - b_k.min() + p_k.max() - p_k.min()) + 1
        strides = [k_size * n_w]
        for j in range(r - 1):
            strides.append(strides[-1] * int(mu_size[j]))
        if strides[-1] * int(mu_size[r - 1]) >= _kernel.LIMIT:
            return None
        st = np.array(strides, dtype=np.int64)
        a_part = (a_mu - a_lo) @ st + (a_k - a_k.min())
        b_part = b_k - b_k.min()
        p_part = (kap - kap_lo) @ st + p_y * k_size + (p_k - p_k.min())
        a_off = np.cumsum([0] + [len(left[w]) for w in ws]).astype(np.int64)
        p_off = np.cumsum([0] + [len(p[3]) for p in pushes]).astype(np.int64)
        n_b = len(gbs)
        count = sum(len(left[w]) * int(b_off[j + 1] - b_off[j]) * len(pushes[i * n_b + j][3])
                    for i, w in enumerate(ws) for j in range(n_b))
        box = strides[-1] * int(mu_size[r - 1])
        keys, vals = _kernel.accumulate(a_off, a_part, a_c, b_off, b_part, b_c,
                                        p_off, p_part, p_c, min(box, count, 1 << 20))
        # decode the box coordinates back into packed keys
        ks = (keys % k_size + k_lo).tolist()
        rest = keys // k_size
        ys = (rest % n_w).tolist()
        mu_idx = (rest // n_w).tolist()
        pack_of: dict[int, int] = {}
        den = a_den * b_den
        sizes = [int(x) for x in mu_size]
        los = [int(x) for x in mu_lo]
        out: dict[Key, object] = {}
        for mi, y, k, c in zip(mu_idx, ys, ks, vals.tolist()):
            base = pack_of.get(mi)
            if base is None:
                x, mu = mi, []
                for j in range(r):
                    mu.append(x % sizes[j] + los[j])
                    x //= sizes[j]
                base = _pack(tuple(mu)) * _MU_SHIFT
                pack_of[mi] = base
            out[base + y * _KB + k] = c if den == 1 else as_rational(Fraction(c, den))
        return HeckeElt(self, out)

    # -- Iwahori-Matsumoto basis -------------------------------------------
    def _affine_reflections(self) -> list[tuple[ExtElt, HeckeElt, HeckeElt]]:
        """Per component: ``(s_aff, T_{s_aff}, T_{s_aff}^{-1})`` with ``s_aff = pi^{theta^vee} s_theta``."""
        if self._aff_cache is not None:
            return self._aff_cache
        out = []
        for theta, theta_c, s_theta in self.datum.highest_roots:
            x = ExtElt(theta_c, s_theta)
            e = pairing(self._two_rho, theta_c)
            t_aff = self.theta(theta_c).scale(Laurent.monomial(1, e)) * self.t_inv(s_theta)
            t_aff_inv = (self.t(s_theta) * self.theta(_neg(theta_c))).scale(Laurent.monomial(1, -e))
            out.append((x, t_aff, t_aff_inv))
        self._aff_cache = out
        return out

    def _descent(self, x: ExtElt, length: int):
        """A simple affine reflection ``s`` with ``l(xs) = l(x) - 1``: ``(xs, T_s, T_s^{-1})``."""
        d = self.datum
        W = self.weyl
        for i in range(1, d.n_simple + 1):
            s = W.simple(i)
            y = x * ExtElt(self._zero_mu, s)
            if d.ext_length(y) == length - 1:
                return y, self.t(s), self.t_inv(s)
        for s_aff, t_aff, t_aff_inv in self._affine_reflections():
            y = x * s_aff
            if d.ext_length(y) == length - 1:
                return y, t_aff, t_aff_inv
        raise ConventionError(f"no descent found for {x} of length {length}")

    def _antidominant_conj(self, mu: Vec, sign: int) -> HeckeElt:
        """``T_{w0} Theta_{sign * w0 mu} T_{w0}^{-1}``."""
        lam = self._w0.act(mu)
        if sign < 0:
            lam = _neg(lam)
        return self.t(self._w0) * self.theta(lam) * self.t_inv(self._w0)

    def im(self, x: ExtElt) -> HeckeElt:
        """The Iwahori-Matsumoto basis element ``T_x`` in Bernstein coordinates."""
        key = (tuple(x.mu), x.w.idx)
        res = self._im.get(key)
        if res is not None:
            return res
        d = self.datum
        mu, w = key
        if not any(mu):
            res = self.t(w)
        elif w == 0 and d.is_dominant(mu):
            res = self.basis(mu, (), Laurent.monomial(1, pairing(self._two_rho, mu)))
        elif w == 0 and d.is_antidominant(mu):
            e = pairing(self._two_rho, self._w0.act(mu))
            res = self._antidominant_conj(mu, 1).scale(Laurent.monomial(1, e))
        else:
            length = d.ext_length(x)
            if length == 0:
                # x pi^lam = w pi^{lam + w^-1 mu} is length-additive for dominant lam
                nu = x.w.inverse().act(mu)
                res = self.basis(nu, (), Laurent.monomial(1, pairing(self._two_rho, nu)))
                res = self.t(w) * res
            else:
                y, t_s, _ = self._descent(x, length)
                res = self.im(y) * t_s
        self._im[key] = res
        return res

    def im_inverse(self, x: ExtElt) -> HeckeElt:
        """``T_x^{-1}``, by the same descent recursion as :meth:`im`."""
        key = (tuple(x.mu), x.w.idx)
        res = self._im_inv.get(key)
        if res is not None:
            return res
        d = self.datum
        mu, w = key
        if w == 0 and d.is_dominant(mu):
            res = self.basis(_neg(mu), (), Laurent.monomial(1, -pairing(self._two_rho, mu)))
        elif w == 0 and d.is_antidominant(mu):
            # inverse of the conjugate formula used by im()
            e = pairing(self._two_rho, self._w0.act(mu))
            res = self._antidominant_conj(mu, -1).scale(Laurent.monomial(1, -e))
        else:
            length = d.ext_length(x)
            if length == 0:
                res = self.im(x.inverse())
            else:
                y, _, t_s_inv = self._descent(x, length)
                res = t_s_inv * self.im_inverse(y)
        self._im_inv[key] = res
        return res

    # -- oppositions ---------------------------------------------------------
    def star_im_theta_reference(self, mu: Sequence[int]) -> HeckeElt:
        """``star_im(Theta_mu)`` straight from the Iwahori-Matsumoto basis.

        ``Theta_mu = Theta_{lam} Theta_{kap}^{-1}`` with ``lam, kap`` dominant, and
        ``Theta_lam = v^{-<2rho,lam>} T_{pi^lam}`` is sent to ``v^{-<2rho,lam>} T_{pi^{-lam}}``.
        Slow; :meth:`star_im` uses the closed form this reduces to.
        """
        mu = self._mu(mu)
        res = self._star_im_cache.get(mu)
        if res is None:
            plus, minus = self.datum.small_dominant_split(mu)
            e = self.weyl.identity
            a = self.im(ExtElt(_neg(plus), e)).scale(
                Laurent.monomial(1, -pairing(self._two_rho, plus)))
            b = self.im_inverse(ExtElt(_neg(minus), e)).scale(
                Laurent.monomial(1, pairing(self._two_rho, minus)))
            res = b * a
            self._star_im_cache[mu] = res
        return res

    def _finite_parts(self, h: HeckeElt) -> dict[int, HeckeElt]:
        """``h = sum_mu Theta_mu X_mu``; returns packed ``mu -> X_mu^rev`` where
        ``X^rev`` applies ``T_w -> T_{w^{-1}}``."""
        if h.alg is not self:
            raise ValueError(f"datum mismatch: {h.alg.datum.name} vs {self.datum.name}")
        inv = self.weyl.inv
        by_mu: dict[int, dict[Key, object]] = defaultdict(dict)
        for key, c in h._d.items():
            mp, w, k = _split(key)
            by_mu[mp][inv[w] * _KB + k] = c
        return {mp: HeckeElt(self, finite) for mp, finite in by_mu.items()}

    def _sandwich_sum(self, h: HeckeElt, left: HeckeElt, right: HeckeElt) -> HeckeElt:
        """``sum_mu X_mu^rev * left * Theta_{-w0 mu} * right``."""
        w0 = self._w0
        acc: dict[Key, object] = defaultdict(int)
        for mp, finite in self._finite_parts(h).items():
            lam = _neg(w0.act(self._unpack(mp)))
            for key, c in (finite * left * self.theta(lam))._d.items():
                acc[key] += c
        return HeckeElt(self, _clean(acc)) * right

    def star_im(self, h: HeckeElt) -> HeckeElt:
        """The anti-involution fixed by ``T_x -> T_{x^{-1}}`` on the Iwahori-Matsumoto basis.

        On ``Theta_lam`` (``lam`` dominant) it gives ``v^{-<2rho,lam>} T_{pi^{-lam}}``, and
        the antidominant case of :meth:`im` rewrites that as ``T_{w0} Theta_{-w0 lam} T_{w0}^{-1}``.
        Conjugation is multiplicative, so the same holds for every ``mu``; see
        :meth:`star_im_theta_reference` for the unreduced route.
        """
        return self._sandwich_sum(h, self.t(self._w0), self.t_inv(self._w0))

    def star_b(self, h: HeckeElt) -> HeckeElt:
        """The anti-map fixed by ``T_s -> T_s`` and ``Theta_mu -> T_{w0}^{-1} Theta_{-w0 mu} T_{w0}``."""
        return self._sandwich_sum(h, self.t_inv(self._w0), self.t(self._w0))

    def star(self, h: HeckeElt, kind: str) -> HeckeElt:
        if kind == "im":
            return self.star_im(h)
        if kind == "b":
            return self.star_b(h)
        raise ValueError(f"unknown opposition {kind!r} (expected 'im' or 'b')")

    # -- decompositions ------------------------------------------------------
    def decompose_R(self, h: HeckeElt) -> dict[WeylElt, list[tuple[Vec, Laurent]]]:
        """The R-coefficients ``r_w`` with ``h = sum_w Theta(r_w) T_w``."""
        out: dict[WeylElt, list[tuple[Vec, Laurent]]] = {}
        for mu, w, c in h.terms():
            out.setdefault(w, []).append((mu, c))
        return dict(sorted(out.items(), key=lambda kv: kv[0].idx))

    def t_left_form(self, h: HeckeElt) -> dict[tuple[int, Vec], Laurent]:
        """Rewrite ``h = sum T_w Theta_mu c`` (finite part on the left); keys ``(w, mu)``."""
        acc: dict[tuple[int, Vec, int], object] = defaultdict(int)
        for mu, w, k, c in h.raw_terms():
            for x, kap, k2, c2 in self._theta_past_t(mu, w):
                acc[(x, kap, k + k2)] += c * c2
        out: dict[tuple[int, Vec], dict[int, object]] = defaultdict(dict)
        for (x, kap, k), c in acc.items():
            if c:
                out[(x, kap)][k] = c
        return {key: Laurent(v) for key, v in out.items()}

    def _theta_past_t(self, mu: Vec, w: int) -> list[tuple[int, Vec, int, object]]:
        """``Theta_mu T_w`` as ``sum c v^k T_x Theta_kappa``."""
        key = (mu, w)
        res = self._tlf.get(key)
        if res is not None:
            return res
        W = self.weyl
        d = self.datum
        if w == 0:
            res = [(0, mu, 0, 1)]
        else:
            # w = s w2 with s the first letter; Theta_mu T_s = T_s Theta_{s mu} - (rest of T_s Theta_{s mu})
            i = W.words[w][0]
            w2 = W.lmul[i - 1][w]
            smu = d.reflect(i, mu)
            s = W.lmul[i - 1][0]
            first: list[tuple[int, Vec, int, object]] = [(s, smu, 0, 1)]
            for kap, x, k, c in self._cross_terms(i, smu):
                if x == 0:
                    first.append((0, kap, k, -c))
            acc: dict[tuple[int, Vec, int], object] = defaultdict(int)
            for x, kap, k, c in first:
                for y, kap2, k2, c2 in self._theta_past_t(kap, w2):
                    for z, k3, c3 in self._prod_h0(x, y):
                        acc[(z, kap2, k + k2 + k3)] += c * c2 * c3
            res = [(x, kap, k, c) for (x, kap, k), c in acc.items() if c]
        self._tlf[key] = res
        return res

    def from_t_left(self, data: dict[tuple[int, Vec], Laurent]) -> HeckeElt:
        """Inverse of :meth:`t_left_form`."""
        acc: dict[Key, object] = defaultdict(int)
        for (x, kap), c in data.items():
            for key, y in (self.t(x) * self.theta(kap)).scale(c)._d.items():
                acc[key] += y
        return HeckeElt(self, _clean(acc))


def hecke_algebra(datum: RootDatum) -> HeckeAlgebra:
    """The (cached) Hecke algebra of ``datum``."""
    alg = datum.__dict__.get("_hecke_algebra")
    if alg is None:
        alg = HeckeAlgebra(datum)
        datum.__dict__["_hecke_algebra"] = alg
    return alg
