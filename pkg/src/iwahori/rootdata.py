"""Root data, finite Weyl groups and the extended affine Weyl group.

Both lattices are modelled as ``Z^rank`` with the dot pairing.  The Weyl group
acts on the left; simple reflections are indexed ``1..r`` everywhere in the
public API, and words are tuples of those indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil
from typing import Iterable, Sequence

__all__ = [
    "RootDatum", "WeylGroup", "WeylElt", "ExtElt", "ConventionError",
    "preset_datum", "PRESETS", "pairing",
]

Vec = tuple[int, ...]

_MAX_ORBIT = 20000


class ConventionError(RuntimeError):
    """An internal consistency check failed (signals a bug, not bad input)."""


def pairing(chi: Sequence[int], mu: Sequence[int]) -> int:
    """The pairing of a character with a cocharacter."""
    if len(chi) != len(mu):
        raise ValueError(f"rank mismatch: {len(chi)} vs {len(mu)}")
    return sum(a * b for a, b in zip(chi, mu))


def _vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def _vscale(k: int, a: Vec) -> Vec:
    return tuple(k * x for x in a)


def _matvec(m, v: Vec) -> Vec:
    return tuple(sum(r[j] * v[j] for j in range(len(v))) for r in m)


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _identity(n: int):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _transpose(m):
    return tuple(zip(*m)) if m else ()


def _rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


class WeylGroup:
    """Finite Weyl group of a root datum, fully enumerated.

    Elements are indexed ``0..N-1`` in the canonical order (length, then
    lexicographically least reduced word); index 0 is the identity.
    """

    def __init__(self, datum: RootDatum):
        self.datum = datum
        n, r = datum.rank, datum.n_simple
        gens = []
        for i in range(r):
            a, ac = datum.simple_roots[i], datum.simple_coroots[i]
            # s_i(mu) = mu - <alpha_i, mu> alpha_i^vee, as a matrix on column vectors
            gens.append(tuple(
                tuple(int(p == q) - ac[p] * a[q] for q in range(n)) for p in range(n)
            ))
        self._gens = gens
        ident = _identity(n)
        length = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    m2 = _matmul(g, m)
                    if m2 not in length:
                        length[m2] = length[m] + 1
                        nxt.append(m2)
                        if len(length) > _MAX_ORBIT:
                            raise ValueError(f"{datum.name}: Weyl group is not finite")
            frontier = nxt
        words: dict = {ident: ()}
        for m in sorted(length, key=length.__getitem__):
            if m == ident:
                continue
            for i, g in enumerate(gens):
                m2 = _matmul(g, m)
                if length[m2] < length[m]:
                    words[m] = (i + 1,) + words[m2]
                    break
        order = sorted(length, key=lambda m: (length[m], words[m]))
        self.matrices = order
        self.index = {m: k for k, m in enumerate(order)}
        self.lengths = [length[m] for m in order]
        self.words = [words[m] for m in order]
        self.order = len(order)
        # s_i * w and w * s_i
        self.lmul = [[self.index[_matmul(g, m)] for m in order] for g in gens]
        self.rmul = [[self.index[_matmul(m, g)] for m in order] for g in gens]
        self.inv = [self._inverse_index(k) for k in range(self.order)]
        self._mul: dict[tuple[int, int], int] = {}
        self.elements = [WeylElt(self, k) for k in range(self.order)]

    def _inverse_index(self, k: int) -> int:
        x = 0
        for i in reversed(self.words[k]):
            x = self.rmul[i - 1][x]
        return x

    def mul(self, a: int, b: int) -> int:
        key = (a, b)
        res = self._mul.get(key)
        if res is None:
            res = a
            for i in self.words[b]:
                res = self.rmul[i - 1][res]
            self._mul[key] = res
        return res

    def act(self, k: int, mu: Vec) -> Vec:
        return _matvec(self.matrices[k], mu)

    def act_dual(self, k: int, chi: Vec) -> Vec:
        # the contragredient: <w chi, w mu> = <chi, mu>
        return _matvec(_transpose(self.matrices[self.inv[k]]), chi)

    def from_word(self, word: Iterable[int]) -> WeylElt:
        x = 0
        for i in word:
            if not 1 <= i <= self.datum.n_simple:
                raise ValueError(f"invalid simple index {i} for {self.datum.name}")
            x = self.rmul[i - 1][x]
        return self.elements[x]

    def from_matrix(self, m) -> WeylElt:
        return self.elements[self.index[tuple(tuple(r) for r in m)]]

    @property
    def identity(self) -> WeylElt:
        return self.elements[0]

    def simple(self, i: int) -> WeylElt:
        return self.elements[self.lmul[i - 1][0]]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return self.order

    def longest(self) -> WeylElt:
        return self.elements[-1]


class WeylElt:
    """An element of a finite Weyl group; canonical form is its index."""

    __slots__ = ("group", "idx")

    def __init__(self, group: WeylGroup, idx: int):
        self.group = group
        self.idx = idx

    @property
    def word(self) -> tuple[int, ...]:
        return self.group.words[self.idx]

    @property
    def length(self) -> int:
        return self.group.lengths[self.idx]

    def __mul__(self, other: WeylElt) -> WeylElt:
        if other.group is not self.group:
            raise ValueError("Weyl elements from different groups")
        return self.group.elements[self.group.mul(self.idx, other.idx)]

    def inverse(self) -> WeylElt:
        return self.group.elements[self.group.inv[self.idx]]

    def act(self, mu: Sequence[int]) -> Vec:
        return self.group.act(self.idx, tuple(mu))

    def act_dual(self, chi: Sequence[int]) -> Vec:
        return self.group.act_dual(self.idx, tuple(chi))

    def is_identity(self) -> bool:
        return self.idx == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElt) and other.group is self.group and other.idx == self.idx

    def __hash__(self) -> int:
        return hash((id(self.group), self.idx))

    def __repr__(self) -> str:
        if not self.word:
            return "e"
        return "".join(f"s{i}" for i in self.word)


@dataclass(frozen=True)
class ExtElt:
    """``pi^mu w`` in the extended affine Weyl group, ``(mu, w)(nu, u) = (mu + w nu, wu)``."""

    mu: Vec
    w: WeylElt

    @property
    def datum(self) -> RootDatum:
        return self.w.group.datum

    def __mul__(self, other: ExtElt) -> ExtElt:
        return ExtElt(_vadd(self.mu, self.w.act(other.mu)), self.w * other.w)

    def inverse(self) -> ExtElt:
        wi = self.w.inverse()
        return ExtElt(tuple(-x for x in wi.act(self.mu)), wi)

    @property
    def length(self) -> int:
        return self.datum.ext_length(self)

    def __repr__(self) -> str:
        return f"pi^{list(self.mu)}*{self.w!r}"


class RootDatum:
    """A split reductive root datum with ``X^* = X_* = Z^rank``."""

    def __init__(self, name: str, simple_roots: Sequence[Sequence[int]],
                 simple_coroots: Sequence[Sequence[int]], rank: int | None = None,
                 *, parent: RootDatum | None = None, levi: tuple[int, ...] | None = None):
        self.name = name
        self.simple_roots: tuple[Vec, ...] = tuple(tuple(int(x) for x in a) for a in simple_roots)
        self.simple_coroots: tuple[Vec, ...] = tuple(tuple(int(x) for x in a) for a in simple_coroots)
        if rank is None:
            if not self.simple_roots:
                raise ValueError("rank is required when there are no simple roots")
            rank = len(self.simple_roots[0])
        self.rank = int(rank)
        self.n_simple = len(self.simple_roots)
        # set only on Levi sub-data: the ambient datum and the ambient indices of our simple roots
        self.parent = parent
        self.levi_indices = levi
        self._validate()
        self.cartan = tuple(
            tuple(pairing(a, c) for c in self.simple_coroots) for a in self.simple_roots
        )
        self._levis: dict[tuple[int, ...], RootDatum] = {}

    def _validate(self) -> None:
        if len(self.simple_coroots) != self.n_simple:
            raise ValueError(f"{self.name}: {self.n_simple} roots but {len(self.simple_coroots)} coroots")
        for v in self.simple_roots + self.simple_coroots:
            if len(v) != self.rank:
                raise ValueError(f"{self.name}: vector {v} does not have length {self.rank}")
        for i, a in enumerate(self.simple_roots):
            for j, c in enumerate(self.simple_coroots):
                p = pairing(a, c)
                if i == j and p != 2:
                    raise ValueError(f"{self.name}: <alpha_{i+1}, coroot_{i+1}> = {p} != 2")
                if i != j and p > 0:
                    raise ValueError(f"{self.name}: <alpha_{i+1}, coroot_{j+1}> = {p} > 0")
        for i in range(self.n_simple):
            for j in range(self.n_simple):
                if (pairing(self.simple_roots[i], self.simple_coroots[j]) == 0) != (
                        pairing(self.simple_roots[j], self.simple_coroots[i]) == 0):
                    raise ValueError(f"{self.name}: Cartan matrix is not symmetrizable at ({i+1},{j+1})")
        if self.n_simple and _rank(self.simple_roots) != self.n_simple:
            raise ValueError(f"{self.name}: simple roots are linearly dependent")
        if self.n_simple and _rank(self.simple_coroots) != self.n_simple:
            raise ValueError(f"{self.name}: simple coroots are linearly dependent")

    def __repr__(self) -> str:
        return f"RootDatum({self.name!r})"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "simple_roots": [list(a) for a in self.simple_roots],
            "simple_coroots": [list(a) for a in self.simple_coroots],
        }

    @classmethod
    def from_json(cls, obj: dict) -> RootDatum:
        for key in ("name", "rank", "simple_roots", "simple_coroots"):
            if key not in obj:
                raise ValueError(f"root datum JSON is missing field {key!r}")
        return cls(obj["name"], obj["simple_roots"], obj["simple_coroots"], obj["rank"])

    # -- basic arithmetic --------------------------------------------------
    def pairing(self, chi: Sequence[int], mu: Sequence[int]) -> int:
        return pairing(chi, mu)

    def check_index(self, i: int) -> int:
        if not 1 <= i <= self.n_simple:
            raise ValueError(f"invalid simple index {i} for {self.name}")
        return i

    def reflect(self, i: int, mu: Vec) -> Vec:
        """``s_i mu = mu - <alpha_i, mu> alpha_i^vee`` on cocharacters."""
        a, ac = self.simple_roots[i - 1], self.simple_coroots[i - 1]
        m = pairing(a, mu)
        return tuple(x - m * y for x, y in zip(mu, ac)) if m else mu

    def zero(self) -> Vec:
        return (0,) * self.rank

    def basis_vector(self, j: int) -> Vec:
        return tuple(int(k == j) for k in range(self.rank))

    @cached_property
    def weyl(self) -> WeylGroup:
        return WeylGroup(self)

    # -- roots -------------------------------------------------------------
    @cached_property
    def _root_data(self):
        """Orbit of (root, coroot, simple-root coefficients) under W."""
        r = self.n_simple
        seen: dict[Vec, tuple[Vec, tuple[int, ...]]] = {}
        stack = []
        for i in range(r):
            e = tuple(int(k == i) for k in range(r))
            seen[self.simple_roots[i]] = (self.simple_coroots[i], e)
            stack.append(self.simple_roots[i])
        while stack:
            b = stack.pop()
            bc, co = seen[b]
            for i in range(r):
                a, ac = self.simple_roots[i], self.simple_coroots[i]
                m = pairing(b, ac)
                b2 = tuple(x - m * y for x, y in zip(b, a))
                if b2 in seen:
                    continue
                mc = pairing(a, bc)
                bc2 = tuple(x - mc * y for x, y in zip(bc, ac))
                co2 = tuple(c - (m if k == i else 0) for k, c in enumerate(co))
                seen[b2] = (bc2, co2)
                stack.append(b2)
                if len(seen) > _MAX_ORBIT:
                    raise ValueError(f"{self.name}: root system is not finite")
        return seen

    @cached_property
    def roots(self) -> tuple[Vec, ...]:
        return tuple(sorted(self._root_data))

    @cached_property
    def positive_roots(self) -> tuple[Vec, ...]:
        """Positive roots, sorted by height then lexicographically."""
        pos = [b for b, (_, co) in self._root_data.items() if all(c >= 0 for c in co)]
        for b in self._root_data:
            co = self._root_data[b][1]
            if not (all(c >= 0 for c in co) or all(c <= 0 for c in co)):
                raise ConventionError(f"root {b} is neither positive nor negative")
        return tuple(sorted(pos, key=lambda b: (sum(self._root_data[b][1]), b)))

    def coroot(self, root: Vec) -> Vec:
        return self._root_data[tuple(root)][0]

    def root_coefficients(self, root: Vec) -> tuple[int, ...]:
        return self._root_data[tuple(root)][1]

    def is_positive_root(self, root: Vec) -> bool:
        return all(c >= 0 for c in self._root_data[tuple(root)][1])

    @cached_property
    def strict_dom_witness(self) -> Vec:
        """Smallest (L1 norm, then lex-greatest) cocharacter with <alpha_i, nu> >= 1."""
        if not self.n_simple:
            return self.zero()

        def ok(nu):
            return all(pairing(a, nu) >= 1 for a in self.simple_roots)

        bound = sum(abs(x) for x in self._linear_witness())
        for norm in range(1, min(bound, 12) + 1):
            for nu in sorted(_vectors_of_norm(self.rank, norm), reverse=True):
                if ok(nu):
                    return nu
        return self._linear_witness()

    def _linear_witness(self) -> Vec:
        # nu = A^T (A A^T)^{-1} 1 scaled to an integer vector; <alpha_i, nu> = const > 0
        A = [[Fraction(x) for x in a] for a in self.simple_roots]
        r = len(A)
        G = [[sum(A[i][k] * A[j][k] for k in range(self.rank)) for j in range(r)] for i in range(r)]
        aug = [G[i] + [Fraction(1)] for i in range(r)]
        for c in range(r):
            piv = next(i for i in range(c, r) if aug[i][c] != 0)
            aug[c], aug[piv] = aug[piv], aug[c]
            for i in range(r):
                if i != c and aug[i][c] != 0:
                    f = aug[i][c] / aug[c][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        y = [aug[i][r] / aug[i][i] for i in range(r)]
        nu = [sum(A[i][k] * y[i] for i in range(r)) for k in range(self.rank)]
        den = 1
        for x in nu:
            den = den * x.denominator // _gcd(den, x.denominator)
        return tuple(int(x * den) for x in nu)

    def is_dominant(self, mu: Sequence[int]) -> bool:
        return all(pairing(a, mu) >= 0 for a in self.simple_roots)

    def is_antidominant(self, mu: Sequence[int]) -> bool:
        return all(pairing(a, mu) <= 0 for a in self.simple_roots)

    def dominant_decomposition(self, mu: Sequence[int]) -> tuple[Vec, Vec]:
        """``mu = mu_plus - mu_minus`` with ``mu_minus = k * nu`` for the least ``k``."""
        mu = tuple(mu)
        nu = self.strict_dom_witness
        k = 0
        for a in self.simple_roots:
            p = pairing(a, mu)
            if p < 0:
                k = max(k, ceil(-p / pairing(a, nu)))
        minus = _vscale(k, nu)
        return _vadd(mu, minus), minus

    def small_dominant_split(self, mu: Sequence[int]) -> tuple[Vec, Vec]:
        """``mu = lam - kap`` with both dominant and ``kap`` of least L1 norm.

        Any such split gives the same answers wherever it is used; a small one keeps
        intermediate elements small.  Falls back to :meth:`dominant_decomposition`.
        """
        mu = tuple(mu)
        plus, minus = self.dominant_decomposition(mu)
        if not self.rank:
            return plus, minus
        for norm in range(sum(abs(x) for x in minus)):
            for kap in sorted(_vectors_of_norm(self.rank, norm), reverse=True):
                if self.is_dominant(kap):
                    lam = _vadd(mu, kap)
                    if self.is_dominant(lam):
                        return lam, kap
        return plus, minus

    def two_rho(self, levi: Iterable[int] | None = None) -> Vec:
        """Sum of the positive roots of the Levi subsystem on ``levi`` (default: all of Delta)."""
        L = self.levi_set(levi)
        out = (0,) * self.rank
        for b in self.positive_roots:
            co = self.root_coefficients(b)
            if all(c == 0 or (k + 1) in L for k, c in enumerate(co)):
                out = _vadd(out, b)
        return out

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components of the Dynkin diagram, as sorted tuples of indices."""
        left = set(range(1, self.n_simple + 1))
        comps = []
        while left:
            start = min(left)
            comp = {start}
            stack = [start]
            while stack:
                i = stack.pop()
                for j in list(left - comp):
                    if self.cartan[i - 1][j - 1] != 0:
                        comp.add(j)
                        stack.append(j)
            left -= comp
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @cached_property
    def highest_roots(self) -> tuple[tuple[Vec, Vec, WeylElt], ...]:
        """Per component: (highest root theta, its coroot, the reflection s_theta)."""
        out = []
        for comp in self.components:
            cand = [b for b in self.positive_roots
                    if all(c == 0 or (k + 1) in comp for k, c in enumerate(self.root_coefficients(b)))]
            theta = max(cand, key=lambda b: (sum(self.root_coefficients(b)), b))
            out.append((theta, self.coroot(theta), self.reflection(theta)))
        return tuple(out)

    def reflection(self, root: Vec) -> WeylElt:
        ac = self.coroot(root)
        n = self.rank
        m = tuple(tuple(int(p == q) - ac[p] * root[q] for q in range(n)) for p in range(n))
        return self.weyl.from_matrix(m)

    # -- lengths -----------------------------------------------------------
    @cached_property
    def _inversion_flags(self) -> list[tuple[bool, ...]]:
        """For each w: which positive roots alpha have w^{-1} alpha negative."""
        W = self.weyl
        pos = self.positive_roots
        out = []
        for k in range(W.order):
            wi = W.inv[k]
            out.append(tuple(not self.is_positive_root(W.act_dual(wi, b)) for b in pos))
        return out

    def ext_length(self, x: ExtElt) -> int:
        """Iwahori-Matsumoto length of ``pi^mu w``."""
        flags = self._inversion_flags[x.w.idx]
        return sum(abs(pairing(b, x.mu) - f) for b, f in zip(self.positive_roots, flags))

    def ext(self, mu: Sequence[int], w: WeylElt | Sequence[int] = ()) -> ExtElt:
        if not isinstance(w, WeylElt):
            w = self.weyl.from_word(w)
        mu = tuple(mu)
        if len(mu) != self.rank:
            raise ValueError(f"cocharacter {mu} does not have rank {self.rank}")
        return ExtElt(mu, w)

    def length(self, w: WeylElt) -> int:
        return w.length

    # -- Levi subsets --------------------------------------------------------
    def levi_set(self, levi: Iterable[int] | None) -> tuple[int, ...]:
        """Validate and normalize a subset of simple indices (``None`` = all)."""
        if levi is None:
            return tuple(range(1, self.n_simple + 1))
        L = tuple(sorted(set(int(i) for i in levi)))
        for i in L:
            self.check_index(i)
        return L

    def levi_elements(self, levi: Iterable[int] | None) -> list[WeylElt]:
        L = set(self.levi_set(levi))
        return [w for w in self.weyl if set(w.word) <= L]

    def longest_element(self, levi: Iterable[int] | None = None) -> WeylElt:
        return max(self.levi_elements(levi), key=lambda w: (w.length, w.idx))

    def min_coset_reps(self, levi: Iterable[int] | None) -> list[WeylElt]:
        """Minimal length representatives of W_M \\ W, in canonical order."""
        L = self.levi_set(levi)
        W = self.weyl
        return [w for w in W if all(W.lengths[W.lmul[i - 1][w.idx]] > w.length for i in L)]

    def min_coset_reps_right(self, levi: Iterable[int] | None) -> list[WeylElt]:
        """Minimal length representatives of W / W_M, in canonical order."""
        L = self.levi_set(levi)
        W = self.weyl
        return [w for w in W if all(W.lengths[W.rmul[i - 1][w.idx]] > w.length for i in L)]

    def pq_decompose(self, w: WeylElt, levi: Iterable[int] | None) -> tuple[WeylElt, WeylElt]:
        """``w = w'' w'`` with ``w''`` in W_M and ``w'`` a minimal coset representative."""
        L = self.levi_set(levi)
        W = self.weyl
        x = w.idx
        changed = True
        while changed:
            changed = False
            for i in L:
                y = W.lmul[i - 1][x]
                if W.lengths[y] < W.lengths[x]:
                    x, changed = y, True
                    break
        rep = W.elements[x]
        return w * rep.inverse(), rep

    def qp_decompose(self, w: WeylElt, levi: Iterable[int] | None) -> tuple[WeylElt, WeylElt]:
        """``w = x w''`` with ``x`` minimal in ``x W_M`` and ``w''`` in W_M."""
        a, b = self.pq_decompose(w.inverse(), levi)
        return b.inverse(), a.inverse()

    def conjugate_levi(self, levi: Iterable[int] | None) -> tuple[tuple[int, ...], WeylElt]:
        """``(L', w0')``: ``w0'`` longest in ^M W and ``Delta_{M'} = w0'^{-1}(Delta_M)``."""
        L = self.levi_set(levi)
        w0p = max(self.min_coset_reps(L), key=lambda w: (w.length, w.idx))
        inv = w0p.inverse()
        index = {a: i + 1 for i, a in enumerate(self.simple_roots)}
        Lp = []
        for i in L:
            img = inv.act_dual(self.simple_roots[i - 1])
            if img not in index:
                raise ConventionError(
                    f"{self.name}: w0'^-1 maps alpha_{i} to {img}, which is not simple")
            Lp.append(index[img])
        return tuple(sorted(Lp)), w0p

    def levi(self, levi: Iterable[int] | None) -> RootDatum:
        """The root datum of the standard Levi ``M`` (same lattices, simple roots on ``levi``)."""
        L = self.levi_set(levi)
        if L == tuple(range(1, self.n_simple + 1)):
            return self
        if L not in self._levis:
            label = ",".join(map(str, L))
            self._levis[L] = RootDatum(
                f"{self.name}[{label}]",
                [self.simple_roots[i - 1] for i in L],
                [self.simple_coroots[i - 1] for i in L],
                self.rank, parent=self, levi=L,
            )
        return self._levis[L]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _vectors_of_norm(n: int, norm: int):
    if n == 1:
        yield (norm,)
        if norm:
            yield (-norm,)
        return
    for first in range(-norm, norm + 1):
        for rest in _vectors_of_norm(n - 1, norm - abs(first)):
            yield (first,) + rest


# -- presets -------------------------------------------------------------------

_CARTAN = {
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -2), (-1, 2)),   # alpha_1 long
    "G2": ((2, -1), (-3, 2)),   # alpha_1 short
}


def _simply_connected(name: str, cartan) -> RootDatum:
    n = len(cartan)
    coroots = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return RootDatum(name, [tuple(row) for row in cartan], coroots, n)


def _gl(n: int) -> RootDatum:
    roots = [tuple(int(k == i) - int(k == i + 1) for k in range(n)) for i in range(n - 1)]
    return RootDatum(f"GL{n}", roots, roots, n)


PRESETS = ("A1", "GL2", "A2", "GL3", "B2", "G2")


def _single(name: str) -> RootDatum:
    if name == "A1":
        return RootDatum("A1", [(2,)], [(1,)], 1)
    if name in ("GL2", "GL3"):
        return _gl(int(name[2]))
    if name in _CARTAN:
        return _simply_connected(name, _CARTAN[name])
    raise ValueError(f"unknown root datum {name!r}; presets are {', '.join(PRESETS)}")


def direct_sum(parts: Sequence[RootDatum], name: str) -> RootDatum:
    rank = sum(p.rank for p in parts)
    roots, coroots = [], []
    offset = 0
    for p in parts:
        pad = lambda v: (0,) * offset + tuple(v) + (0,) * (rank - offset - p.rank)
        roots += [pad(a) for a in p.simple_roots]
        coroots += [pad(a) for a in p.simple_coroots]
        offset += p.rank
    return RootDatum(name, roots, coroots, rank)


_CACHE: dict[str, RootDatum] = {}


def preset_datum(name: str) -> RootDatum:
    """A preset root datum, or a direct sum such as ``A1xA1`` / ``A1+GL2``."""
    key = name.strip()
    if key in _CACHE:
        return _CACHE[key]
    parts = [p for p in re.split(r"\s*[x×+]\s*", key) if p]
    if not parts:
        raise ValueError("empty root datum name")
    if len(parts) == 1:
        d = _single(parts[0])
    else:
        d = direct_sum([_single(p) for p in parts], "x".join(parts))
    _CACHE[key] = d
    return d
