"""Finite-dimensional right modules over ``H`` and its parabolic subalgebras.

Modules use row vectors: ``v . h = v * mat(h)`` and ``mat(ab) = mat(a) mat(b)``.
Principal series and induced modules compute ``mat(h)`` row by row from the
algebra (row ``b`` is the image of basis vector ``b``), so every relation check
below compares two independent routes.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .hecke import HeckeAlgebra, HeckeElt, hecke_algebra
from .laurent import ONE, ZERO, Laurent, RatFunc
from .linalg import Matrix, charpoly, full_rank, kcoerce, poly_from_roots
from .parabolic import ORIENTATIONS, ParabolicCtx, parabolic
from .rootdata import RootDatum, WeylElt

__all__ = [
    "UnramifiedCharacter", "HModule", "ModuleMap", "random_character", "char_twist",
    "char_inverse", "principal_series", "induce", "restrict_levi", "conjugation_twist",
    "opposite_left_view", "validate_module", "reeder_check", "jantzen_check",
    "jacquet_right_action", "stage_compatibility_check", "theta_spectrum_check",
    "STAR_FOR",
]

# the opposition that goes with each orientation of the sandwich identities
STAR_FOR = {"as-written": "b", "mirrored": "im"}


def _kpow(x, e: int):
    if e >= 0:
        return x ** e
    if isinstance(x, Laurent) and x.is_monomial():
        return x ** e
    return RatFunc.coerce(x) ** e


# -- characters ----------------------------------------------------------------

@dataclass(frozen=True)
class UnramifiedCharacter:
    """``chi`` on ``X_*``, given by its values on the coordinate basis ``e_1..e_n``."""

    values: tuple

    def __post_init__(self):
        vals = tuple(kcoerce(x) for x in self.values)
        if any(x.is_zero() for x in vals):
            raise ValueError("character values must be nonzero")
        object.__setattr__(self, "values", vals)

    @property
    def rank(self) -> int:
        return len(self.values)

    def monomial(self) -> bool:
        return all(isinstance(x, Laurent) and x.is_monomial() for x in self.values)

    def __call__(self, mu: Sequence[int]):
        out = ONE
        for x, e in zip(self.values, mu):
            if e:
                out = out * _kpow(x, e)
        return kcoerce(out)

    def mono(self, mu: Sequence[int]) -> tuple[Fraction, int]:
        """``chi(mu) = c v^k`` as ``(c, k)``; only for monomial-valued characters."""
        c, k = Fraction(1), 0
        for x, e in zip(self.values, mu):
            if e:
                (kx, cx), = x.as_dict().items()
                c *= Fraction(cx) ** e
                k += kx * e
        return c, k

    def to_json(self) -> list[str]:
        return [str(x) for x in self.values]

    @classmethod
    def parse(cls, values: Sequence) -> UnramifiedCharacter:
        return cls(tuple(kcoerce(str(x)) for x in values))


def char_twist(chi: UnramifiedCharacter, w: WeylElt) -> UnramifiedCharacter:
    """``chi^w(mu) = chi(w^{-1} mu)``."""
    winv = w.inverse()
    n = chi.rank
    return UnramifiedCharacter(tuple(
        chi(winv.act(tuple(int(i == j) for i in range(n)))) for j in range(n)))


def char_inverse(chi: UnramifiedCharacter) -> UnramifiedCharacter:
    return UnramifiedCharacter(tuple(kcoerce(_kpow(x, -1)) for x in chi.values))


def is_generic(chi: UnramifiedCharacter, datum: RootDatum) -> bool:
    """No coroot value is ``1`` or ``q^{+-1}``."""
    bad = {Laurent.monomial(1, 0), Laurent.monomial(1, 2), Laurent.monomial(1, -2)}
    return all(chi(datum.coroot(a)) not in bad for a in datum.roots)


def random_character(datum: RootDatum, rng: random.Random) -> UnramifiedCharacter:
    """A generic character with monomial values ``c v^k`` (``|c|`` in 2..9, ``|k|`` <= 3)."""
    while True:
        vals = tuple(Laurent.monomial(rng.choice((-1, 1)) * rng.randint(2, 9), rng.randint(-3, 3))
                     for _ in range(datum.rank))
        chi = UnramifiedCharacter(vals)
        if is_generic(chi, datum):
            return chi


# -- modules -------------------------------------------------------------------

def _unit(n: int, j: int) -> tuple[int, ...]:
    return tuple(int(i == j) for i in range(n))


def _levi_info(alg: HeckeAlgebra) -> tuple[RootDatum, tuple[int, ...]]:
    d = alg.datum
    if d.parent is None:
        return d, tuple(range(1, d.n_simple + 1))
    return d.parent, d.levi_indices


class HModule:
    """A right module over ``alg`` (``H`` or a Levi algebra ``H_M``).

    Either ``rows(b, h)`` computes the image of basis vector ``b`` under ``h``, or
    the action is given by generator matrices (``T`` keyed by local simple index,
    ``Theta`` keyed by lattice coordinate) and extended multiplicatively.
    """

    def __init__(self, alg: HeckeAlgebra, dim: int, rows: Callable | None = None,
                 T: dict | None = None, Theta: dict | None = None,
                 Theta_inv: dict | None = None, label: str = ""):
        self.alg = alg
        self.dim = dim
        self.label = label
        self.ambient, self.levi = _levi_info(alg)
        self._rows = rows
        if rows is None:
            if T is None or Theta is None:
                raise ValueError("give either a row evaluator or generator matrices")
            self._T = {int(i): T[i] for i in T}
            self._Theta = {int(j): Theta[j] for j in Theta}
            self._Theta_inv = dict(Theta_inv or {})
            for M in list(self._T.values()) + list(self._Theta.values()):
                if M.shape != (dim, dim):
                    raise ValueError(f"generator matrix has shape {M.shape}, expected {dim}x{dim}")
            n_simple, rank = alg.datum.n_simple, alg.rank
            if set(self._T) != set(range(1, n_simple + 1)):
                raise ValueError(f"T matrices must be given for local indices 1..{n_simple}")
            if set(self._Theta) != set(range(1, rank + 1)):
                raise ValueError(f"Theta matrices must be given for coordinates 1..{rank}")
        self._mu_cache: dict = {}
        self._w_cache: dict = {}
        self._mat_cache: dict = {}

    def __repr__(self) -> str:
        return f"HModule({self.label or self.alg.datum.name}, levi={list(self.levi)}, dim={self.dim})"

    # -- evaluation ------------------------------------------------------------
    def row(self, b: int, h: HeckeElt) -> list:
        """The row vector ``e_b . h``."""
        if self._rows is not None:
            return self._rows(b, h)
        return self.mat(h).rows[b]

    def mat(self, h: HeckeElt) -> Matrix:
        if h.alg is not self.alg:
            raise ValueError(f"element of {h.alg.datum.name} acting on a module over {self.alg.datum.name}")
        res = self._mat_cache.get(h)
        if res is None:
            if self._rows is not None:
                res = Matrix._raw([self._rows(b, h) for b in range(self.dim)], self.dim)
            else:
                res = self._gen_eval(h)
            self._mat_cache[h] = res
        return res

    def vec(self, v: Sequence, h: HeckeElt) -> list:
        """``v . h`` for a row vector ``v``."""
        out = [ZERO] * self.dim
        for b, a in enumerate(v):
            if a.is_zero():
                continue
            for j, x in enumerate(self.row(b, h)):
                if not x.is_zero():
                    out[j] = out[j] + a * x
        return [kcoerce(x) for x in out]

    # generator-only evaluation, used for relation checks
    def gen_T(self, i: int) -> Matrix:
        """Matrix of ``T_{s_i}`` (local index ``i``)."""
        if self._rows is None:
            return self._T[i]
        return self.mat(self.alg.t((i,)))

    def gen_Theta(self, j: int, sign: int = 1) -> Matrix:
        """Matrix of ``Theta_{+-e_j}``."""
        if self._rows is not None:
            return self.mat(self.alg.theta(tuple(sign * x for x in _unit(self.alg.rank, j - 1))))
        if sign > 0:
            return self._Theta[j]
        inv = self._Theta_inv.get(j)
        if inv is None:
            inv = self._Theta_inv[j] = self._Theta[j].inverse()
        return inv

    def theta_mat(self, mu: Sequence[int]) -> Matrix:
        """``Theta_mu`` as a product of generator matrices."""
        mu = tuple(mu)
        res = self._mu_cache.get(mu)
        if res is None:
            res = Matrix.identity(self.dim)
            for j, e in enumerate(mu):
                if e:
                    g = self.gen_Theta(j + 1, 1 if e > 0 else -1)
                    for _ in range(abs(e)):
                        res = res * g
            self._mu_cache[mu] = res
        return res

    def t_mat(self, w: int) -> Matrix:
        """``T_w`` (local index) as a product of generator matrices."""
        res = self._w_cache.get(w)
        if res is None:
            res = Matrix.identity(self.dim)
            for i in self.alg.weyl.words[w]:
                res = res * self.gen_T(i)
            self._w_cache[w] = res
        return res

    def _gen_eval(self, h: HeckeElt) -> Matrix:
        out = Matrix.zeros(self.dim)
        by_mu: dict[tuple, dict[int, Laurent]] = defaultdict(dict)
        for (mu, w), c in h.grouped().items():
            by_mu[mu][w] = c
        for mu, fin in by_mu.items():
            part = Matrix.zeros(self.dim)
            for w, c in fin.items():
                part = part + self.t_mat(w).scale(c)
            out = out + self.theta_mat(mu) * part
        return out

    def generators(self) -> tuple[dict[int, Matrix], dict[int, Matrix]]:
        """``({global simple index: T matrix}, {coordinate: Theta matrix})``."""
        T = {self.levi[i - 1]: self.gen_T(i) for i in range(1, self.alg.datum.n_simple + 1)}
        Th = {j: self.gen_Theta(j) for j in range(1, self.alg.rank + 1)}
        return T, Th

    def explicit(self) -> HModule:
        """A copy given by generator matrices only."""
        T, Th = self.generators()
        local = {i: T[self.levi[i - 1]] for i in range(1, self.alg.datum.n_simple + 1)}
        inv = {j: self.gen_Theta(j, -1) for j in Th} if self._rows is not None else None
        return HModule(self.alg, self.dim, T=local, Theta=Th, Theta_inv=inv, label=self.label)


@dataclass
class ModuleMap:
    """A linear map given by its matrix on row vectors: ``row b`` is the image of ``b``."""

    source: str
    target: str
    matrix: Matrix
    verified: list[str] = field(default_factory=list)
    report: dict = field(default_factory=dict)


# -- constructions --------------------------------------------------------------

def _left_products(alg: HeckeAlgebra) -> dict:
    cache = alg.__dict__.get("_left_products")
    if cache is None:
        cache = alg.__dict__["_left_products"] = {}
    return cache


def _t_times(alg: HeckeAlgebra, w: int, h: HeckeElt) -> HeckeElt:
    """``T_w h`` (memoized per algebra; the products do not depend on characters)."""
    cache = _left_products(alg)
    key = (w, h)
    res = cache.get(key)
    if res is None:
        res = h if w == 0 else alg.t(w) * h
        cache[key] = res
    return res


def _reduce(elt: HeckeElt, chi: UnramifiedCharacter, n: int) -> list:
    """``sum c v^k Theta_mu T_w -> sum c v^k chi(mu) e_w``."""
    if chi.monomial():
        cols: list[dict[int, Fraction]] = [defaultdict(Fraction) for _ in range(n)]
        cache: dict = {}
        for mu, w, k, c in elt.raw_terms():
            m = cache.get(mu)
            if m is None:
                m = cache[mu] = chi.mono(mu)
            cols[w][k + m[1]] += c * m[0]
        return [Laurent({k: c for k, c in col.items() if c}) for col in cols]
    acc: list = [ZERO] * n
    for (mu, w), c in elt.grouped().items():
        acc[w] = acc[w] + c * chi(mu)
    return [kcoerce(x) for x in acc]


def principal_series(chi: UnramifiedCharacter, datum: RootDatum, levi=None) -> HModule:
    """``C_chi (x)_R H_L`` on the basis ``1 (x) T_w``, ``w`` in ``W_L`` (local order)."""
    if chi.rank != datum.rank:
        raise ValueError(f"character has rank {chi.rank}, datum {datum.name} has rank {datum.rank}")
    alg = hecke_algebra(datum.levi(levi))
    n = len(alg.weyl)

    def rows(b: int, h: HeckeElt) -> list:
        return _reduce(_t_times(alg, b, h), chi, n)

    mod = HModule(alg, n, rows=rows, label=f"PS({datum.name})")
    mod.character = chi
    return mod


def induce(V: HModule, ctx: ParabolicCtx | None = None) -> HModule:
    """``V (x)_{H_M} H`` on the basis ``v_i (x) T_{w'}`` (index ``r * dim V + i`` for the ``r``-th rep)."""
    if ctx is None:
        ctx = parabolic(V.ambient, V.levi)
    if V.alg is not ctx.HM:
        raise ValueError("module and parabolic context disagree on the Levi")
    d, reps = V.dim, ctx.reps
    pos = {w.idx: r for r, w in enumerate(reps)}
    cache: dict = {}

    def rows(b: int, h: HeckeElt) -> list:
        r, i = divmod(b, d)
        key = (reps[r].idx, h)
        parts = cache.get(key)
        if parts is None:
            parts = cache[key] = ctx.decompose_left(_t_times(ctx.H, reps[r].idx, h))
        out = [ZERO] * (d * len(reps))
        for u, omega in parts.items():
            off = pos[u.idx] * d
            for j, x in enumerate(V.row(i, omega)):
                out[off + j] = x
        return out

    mod = HModule(ctx.H, d * len(reps), rows=rows, label=f"Ind({V.label})")
    mod.base, mod.ctx = V, ctx
    return mod


def restrict_levi(V: HModule, levi) -> HModule:
    """The restriction of ``V`` (over ``H_L``) to ``H_{L'}`` for ``L'`` inside ``L``."""
    ctx_new = parabolic(V.ambient, levi)
    if not set(ctx_new.levi) <= set(V.levi):
        raise ValueError(f"levi {list(ctx_new.levi)} is not contained in {list(V.levi)}")
    if ctx_new.HM is V.alg:
        return V
    src = parabolic(V.ambient, V.levi)

    def lift(h: HeckeElt) -> HeckeElt:
        h = ctx_new.embed(h)
        return h if src.HM is src.H else src.to_levi(h)

    cache: dict = {}

    def rows(b: int, h: HeckeElt) -> list:
        g = cache.get(h)
        if g is None:
            g = cache[h] = lift(h)
        return V.row(b, g)

    mod = HModule(ctx_new.HM, V.dim, rows=rows, label=f"Res({V.label})")
    return mod


def conjugation_twist(V: HModule, ctx: ParabolicCtx | None = None) -> HModule:
    """``V`` as a module over ``H_{M'}``: ``omega'`` acts by ``sigma(gamma(omega'))``."""
    if ctx is None:
        ctx = parabolic(V.ambient, V.levi)
    cache: dict = {}

    def rows(b: int, h: HeckeElt) -> list:
        g = cache.get(h)
        if g is None:
            g = cache[h] = ctx.gamma(h)
        return V.row(b, g)

    return HModule(ctx.conj.HM, V.dim, rows=rows, label=f"Tw({V.label})")


class LeftView:
    """The left action ``omega . m = m . star(omega)`` of a right module."""

    def __init__(self, V: HModule, kind: str = "b"):
        self.V, self.kind = V, kind
        self._cache: dict = {}

    def star(self, h: HeckeElt) -> HeckeElt:
        res = self._cache.get(h)
        if res is None:
            res = self._cache[h] = self.V.alg.star(h, self.kind)
        return res

    def act(self, h: HeckeElt, m: Sequence) -> list:
        return self.V.vec(m, self.star(h))

    def matrix(self, h: HeckeElt) -> Matrix:
        """Row ``b`` is ``h . e_b``."""
        return self.V.mat(self.star(h))

    __call__ = act


def opposite_left_view(V: HModule, kind: str = "b") -> LeftView:
    return LeftView(V, kind)


# -- relation checks --------------------------------------------------------------

def _braid_order(alg: HeckeAlgebra, i: int, j: int) -> int:
    W = alg.weyl
    x, m = 0, 0
    while True:
        x = W.lmul[i - 1][W.lmul[j - 1][x]]
        m += 1
        if x == 0:
            return m


def validate_module(V: HModule, extra_mu: Sequence[Sequence[int]] = ()) -> dict:
    """Check the defining relations on generator matrices; reports the first failure."""
    alg = V.alg
    n_s, rank = alg.datum.n_simple, alg.rank
    q = Laurent.monomial(1, 2)
    I = Matrix.identity(V.dim)
    failures: list[dict] = []
    checked: list[str] = []

    def fail(rel: str, witness) -> None:
        failures.append({"relation": rel, "witness": witness})

    th = {j: V.gen_Theta(j) for j in range(1, rank + 1)}
    th_inv = {j: V.gen_Theta(j, -1) for j in range(1, rank + 1)}
    checked.append("theta_invertible")
    for j in range(1, rank + 1):
        if th[j] * th_inv[j] != I or th_inv[j] * th[j] != I:
            fail("theta_invertible", [j])
    checked.append("theta_commute")
    for j in range(1, rank + 1):
        for k in range(j + 1, rank + 1):
            if th[j] * th[k] != th[k] * th[j]:
                fail("theta_commute", [j, k])
    T = {i: V.gen_T(i) for i in range(1, n_s + 1)}
    checked.append("quadratic")
    for i, M in T.items():
        if not ((M - I.scale(q)) * (M + I)).is_zero():
            fail("quadratic", [V.levi[i - 1]])
    checked.append("braid")
    for i in range(1, n_s + 1):
        for j in range(i + 1, n_s + 1):
            m = _braid_order(alg, i, j)
            a, b = I, I
            for t in range(m):
                a = a * T[(i, j)[t % 2]]
                b = b * T[(j, i)[t % 2]]
            if a != b:
                fail("braid", [V.levi[i - 1], V.levi[j - 1]])
    checked.append("bernstein")
    mus = [tuple(s * x for x in _unit(rank, j)) for j in range(rank) for s in (1, -1)]
    mus += [tuple(mu) for mu in extra_mu]
    for i in range(1, n_s + 1):
        for mu in mus:
            lhs = T[i] * V.theta_mat(mu)
            rhs = Matrix.zeros(V.dim)
            for (kap, w), c in alg.cross(i, mu).grouped().items():
                rhs = rhs + (V.theta_mat(kap) * V.t_mat(w)).scale(c)
            if lhs != rhs:
                fail("bernstein", {"s": V.levi[i - 1], "mu": list(mu)})
    return {"pass": not failures, "checked": checked, "failures": failures[:1],
            "n_failures": len(failures)}


# -- Jacquet functors ----------------------------------------------------------------

def jacquet_right_action(V: HModule, levi_prime, omega: HeckeElt,
                         orientation: str = "as-written") -> Matrix:
    """``mat(T_{w0'}^{-1} gamma(omega) T_{w0'})`` for ``omega`` in ``H_{M'}`` (``V`` over ``H``).

    ``M`` is the Levi whose conjugate is ``levi_prime``.
    """
    ctx = _ctx_with_conjugate(V.ambient, levi_prime)
    return V.mat(ctx.sandwich(ctx.embed(ctx.gamma(omega)), orientation))


def _ctx_with_conjugate(datum: RootDatum, levi_prime) -> ParabolicCtx:
    Lp = datum.levi_set(levi_prime)
    L, _ = datum.conjugate_levi(Lp)
    ctx = parabolic(datum, L)
    if ctx.conj_levi != Lp:
        raise AssertionError(f"conjugate Levi of {list(L)} is {list(ctx.conj_levi)}, not {list(Lp)}")
    return ctx


def theta_spectrum_check(chi: UnramifiedCharacter, datum: RootDatum, mu: Sequence[int]) -> dict:
    """Characteristic polynomial of ``Theta_mu`` on the Jacquet restriction of the principal
    series versus ``prod_w (x - chi(w^{-1} mu))``."""
    V = restrict_levi(principal_series(chi, datum), ())
    M = V.mat(V.alg.theta(mu))
    got = charpoly(M)
    want = poly_from_roots(chi(w.inverse().act(tuple(mu))) for w in datum.weyl)
    ok = len(got) == len(want) and all(a == b for a, b in zip(got, want))
    return {"mu": list(mu), "pass": ok, "charpoly": [str(x) for x in got],
            "expected": [str(x) for x in want]}


# -- stage compatibility ------------------------------------------------------------

def stage_compatibility_check(chi: UnramifiedCharacter, datum: RootDatum, levi) -> dict:
    """``induce(PS(chi, L))`` against ``PS(chi)`` under ``v_{w''} (x) T_{w'} <-> t_{w'' w'}``."""
    ctx = parabolic(datum, levi)
    ind = induce(principal_series(chi, datum, ctx.levi), ctx)
    full = principal_series(chi, datum)
    W = datum.weyl
    d = len(ctx.W_M)
    perm = [0] * full.dim
    for r, wp in enumerate(ctx.reps):
        for i, wpp in enumerate(ctx.W_M):
            perm[r * d + i] = W.mul(wpp.idx, wp.idx)
    if sorted(perm) != list(range(full.dim)):
        return {"pass": False, "reason": "basis map is not a bijection"}
    T1, Th1 = ind.generators()
    T2, Th2 = full.generators()
    bad = [f"T{i}" for i in T1 if T1[i] != T2[i].permuted(perm)]
    bad += [f"Theta{j}" for j in Th1 if Th1[j] != Th2[j].permuted(perm)]
    return {"levi": list(ctx.levi), "pass": not bad, "mismatch": bad}


# -- Reeder and Jantzen maps --------------------------------------------------------

def _ambient_generators(alg: HeckeAlgebra) -> list[HeckeElt]:
    gens = [alg.t((i,)) for i in range(1, alg.datum.n_simple + 1)]
    for j in range(alg.rank):
        e = _unit(alg.rank, j)
        gens += [alg.theta(e), alg.theta(tuple(-x for x in e))]
    return gens


def reeder_check(chi: UnramifiedCharacter, datum: RootDatum, orientation: str = "as-written",
                 kind: str | None = None, extra_mu: Sequence[Sequence[int]] = ()) -> tuple[ModuleMap, dict]:
    """``H (x)_R C_{chi^{w0}} -> C_{chi^{-1}} (x)_R H``, ``h (x) 1 -> m0 . h^*``.

    ``m0 = 1 (x) T_{w0}`` as written, ``1 (x) T_{w0}^{-1}`` mirrored.
    """
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    kind = kind or STAR_FOR[orientation]
    H = hecke_algebra(datum)
    W = datum.weyl
    w0 = W.longest()
    n = len(W)
    target = principal_series(char_inverse(chi), datum)
    view = LeftView(target, kind)
    pre = H.t(w0) if orientation == "as-written" else H.t_inv(w0)
    twisted = char_twist(chi, w0)

    def phi(h: HeckeElt) -> list:
        return target.row(0, pre * view.star(h))

    Phi = Matrix._raw([phi(H.t(w)) for w in W], n)

    # well-definedness: m0 . star(Theta_mu) = chi(w0 mu) m0
    m0 = target.row(0, pre)
    mus = [tuple(s * x for x in _unit(datum.rank, j)) for j in range(datum.rank) for s in (1, -1)]
    mus += [tuple(mu) for mu in extra_mu]
    welldef = True
    for mu in mus:
        c = chi(w0.act(mu))
        if phi(H.theta(mu)) != [kcoerce(c * x) for x in m0]:
            welldef = False
            break

    def source_rows(g: HeckeElt) -> Matrix:
        rows = []
        for w in W:
            row = [ZERO] * n
            for (x, kap), c in H.t_left_form(_prod(g, H.t(w))).items():
                row[x] = row[x] + c * twisted(kap)
            rows.append([kcoerce(y) for y in row])
        return Matrix._raw(rows, n)

    equivariant = all(source_rows(g) * Phi == Phi * view.matrix(g) for g in _ambient_generators(H))
    bijective = full_rank(Phi)
    report = {"datum": datum.name, "orientation": orientation, "star": kind,
              "welldef": welldef, "equivariant": equivariant, "bijective": bijective,
              "pass": welldef and equivariant and bijective}
    verified = [k for k in ("welldef", "equivariant", "bijective") if report[k]]
    return ModuleMap("H(x)C[chi^w0]", "PS(chi^-1)", Phi, verified, report), report


def _prod(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    cache = _left_products(a.alg)
    key = ("prod", a, b)
    res = cache.get(key)
    if res is None:
        res = cache[key] = a * b
    return res


def jantzen_check(V: HModule, orientation: str = "as-written", kind: str | None = None,
                  ctx: ParabolicCtx | None = None) -> tuple[ModuleMap, dict]:
    """``H (x)_{H_{M'}} {}^{w0'}V^op -> V (x)_{H_M} H``, ``h (x) v -> v (x) P h^*``.

    ``P = T_{w0'}`` as written and ``T_{w0'^{-1}}^{-1}`` mirrored; ``V^op`` uses the
    Levi's own opposition of the same kind.  Also compares the twisted Jacquet action
    with the opposite action of ``H_{M'}`` on the target.
    """
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    kind = kind or STAR_FOR[orientation]
    if ctx is None:
        ctx = parabolic(V.ambient, V.levi)
    cp = ctx.conj
    H, datum = ctx.H, ctx.datum
    d = V.dim
    target = induce(V, ctx)
    view = LeftView(target, kind)
    pre = ctx.prefactor(orientation)
    xs = datum.min_coset_reps_right(cp.levi)
    xpos = {x.idx: r for r, x in enumerate(xs)}
    N = d * len(xs)
    if N != target.dim:
        return ModuleMap("H(x)V^op", "Ind(V)", Matrix.zeros(0), [], {}), {
            "pass": False, "reason": f"dimension mismatch {N} vs {target.dim}"}

    op_cache: dict = {}

    def op_act(omega: HeckeElt, i: int) -> list:
        """``omega . v_i`` in ``{}^{w0'}V^op`` for ``omega`` in ``H_{M'}``."""
        g = op_cache.get(omega)
        if g is None:
            g = op_cache[omega] = ctx.levi_star(ctx.gamma(omega), kind)
        return V.row(i, g)

    def psi_row(x: WeylElt, i: int) -> list:
        return target.row(i, pre * view.star(H.t(x)))

    Psi = Matrix._raw([psi_row(x, i) for x in xs for i in range(d)], N)

    # well-definedness across the tensor relation h omega' (x) v = h (x) omega' . v
    welldef = True
    levi_gens = _ambient_generators(cp.HM)
    for omega in levi_gens:
        emb = view.star(cp.embed(omega))
        for x in xs:
            sx = view.star(H.t(x))
            base = [target.row(k, pre * sx) for k in range(d)]
            for i in range(d):
                lhs = target.row(i, pre * emb * sx)
                coeffs = op_act(omega, i)
                rhs = [ZERO] * N
                for k, a in enumerate(coeffs):
                    if not a.is_zero():
                        rhs = [r + a * b for r, b in zip(rhs, base[k])]
                if lhs != [kcoerce(r) for r in rhs]:
                    welldef = False
                    break
            if not welldef:
                break
        if not welldef:
            break

    def source_rows(g: HeckeElt) -> Matrix:
        rows = []
        for x in xs:
            parts = cp.decompose_right(_prod(g, H.t(x)))
            for i in range(d):
                row = [ZERO] * N
                for y, omega in parts.items():
                    off = xpos[y.idx] * d
                    for j, a in enumerate(op_act(omega, i)):
                        row[off + j] = a
                rows.append(row)
        return Matrix._raw(rows, N)

    equivariant = all(source_rows(g) * Psi == Psi * view.matrix(g) for g in _ambient_generators(H))
    bijective = full_rank(Psi)

    # twisted Jacquet action on the target versus the opposite action of H_{M'}
    twisted = all(
        jacquet_right_action(target, cp.levi, cp.levi_star(omega, kind), orientation)
        == view.matrix(cp.embed(omega))
        for omega in levi_gens)

    report = {"datum": datum.name, "levi": list(ctx.levi), "orientation": orientation,
              "star": kind, "welldef": welldef, "equivariant": equivariant,
              "bijective": bijective, "twisted_jacquet": twisted,
              "pass": welldef and equivariant and bijective and twisted}
    verified = [k for k in ("welldef", "equivariant", "bijective") if report[k]]
    return ModuleMap("H(x)V^op", "Ind(V)", Psi, verified, report), report
