"""Dense matrices over ``K = Q(v)`` with Laurent entries where possible.

Full-rank and invertibility claims are certified by evaluating at a rational
point and eliminating modulo a prime: a nonzero minor there is nonzero over
``K`` too.  When the certificate fails we fall back to exact elimination.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .laurent import ONE, ZERO, Laurent, RatFunc

__all__ = ["Matrix", "kcoerce", "charpoly", "poly_from_roots", "rank", "full_rank"]

_P = 2147483647  # 2^31 - 1, so products of residues fit in int64


def kcoerce(x):
    """An element of ``K``: a Laurent polynomial when possible, else a ``RatFunc``."""
    if isinstance(x, Laurent):
        return x
    if isinstance(x, RatFunc):
        return x.num if x.is_laurent() else x
    if isinstance(x, str):
        r = RatFunc.parse(x)
        return r.num if r.is_laurent() else r
    return Laurent.coerce(x)


def _is_zero(x) -> bool:
    return x.is_zero()


class Matrix:
    """An ``n x m`` matrix over ``K``; rows act on row vectors from the right."""

    __slots__ = ("rows", "n", "m")

    def __init__(self, rows: Iterable[Sequence], m: int | None = None):
        self.rows = [[kcoerce(x) for x in row] for row in rows]
        self.n = len(self.rows)
        self.m = len(self.rows[0]) if self.rows else (m or 0)
        if any(len(r) != self.m for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def _raw(cls, rows: list[list], m: int) -> Matrix:
        out = cls.__new__(cls)
        out.rows, out.n, out.m = rows, len(rows), m
        return out

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> Matrix:
        m = n if m is None else m
        return cls._raw([[ZERO] * m for _ in range(n)], m)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        rows = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = ONE
        return cls._raw(rows, n)

    @classmethod
    def scalar(cls, n: int, c) -> Matrix:
        c = kcoerce(c)
        rows = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = c
        return cls._raw(rows, n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.n, self.m

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(_is_zero(x) for row in self.rows for x in row)

    def __add__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix._raw([[a + b for a, b in zip(ra, rb)]
                            for ra, rb in zip(self.rows, other.rows)], self.m)

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix._raw([[a - b for a, b in zip(ra, rb)]
                            for ra, rb in zip(self.rows, other.rows)], self.m)

    def __neg__(self) -> Matrix:
        return Matrix._raw([[-a for a in r] for r in self.rows], self.m)

    def _same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def scale(self, c) -> Matrix:
        c = kcoerce(c)
        return Matrix._raw([[a * c for a in r] for r in self.rows], self.m)

    def __mul__(self, other) -> Matrix:
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self.m != other.n:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.m
        out = []
        for row in self.rows:
            nz = [(k, a) for k, a in enumerate(row) if not _is_zero(a)]
            new = []
            for col in cols:
                acc = ZERO
                for k, a in nz:
                    b = col[k]
                    if not _is_zero(b):
                        acc = acc + a * b
                new.append(acc)
            out.append(new)
        return Matrix._raw(out, other.m)

    __rmul__ = scale

    def vec_mul(self, vec: Sequence) -> list:
        """The row vector ``vec * self``."""
        out = [ZERO] * self.m
        for a, row in zip(vec, self.rows):
            if _is_zero(a):
                continue
            for j, b in enumerate(row):
                if not _is_zero(b):
                    out[j] = out[j] + a * b
        return out

    def __pow__(self, e: int) -> Matrix:
        if e < 0:
            raise ValueError("use an explicit inverse")
        out = Matrix.identity(self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def transpose(self) -> Matrix:
        return Matrix._raw([list(c) for c in zip(*self.rows)], self.n)

    def permuted(self, perm: Sequence[int]) -> Matrix:
        """``P M P^{-1}`` for the basis relabeling ``new index i = old index perm[i]``."""
        return Matrix._raw([[self.rows[perm[i]][perm[j]] for j in range(self.m)]
                            for i in range(self.n)], self.m)

    def evaluate(self, v) -> list[list[Fraction]]:
        return [[_eval(x, v) for x in row] for row in self.rows]

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows]

    def __repr__(self) -> str:
        return f"Matrix({self.to_strings()})"

    # -- exact field operations ------------------------------------------------
    def inverse(self) -> Matrix:
        """Exact inverse over ``K`` (Gauss-Jordan); raises ``ZeroDivisionError`` if singular."""
        n = self.n
        if n != self.m:
            raise ValueError("inverse of a non-square matrix")
        a = [[RatFunc.coerce(x) for x in row] + [RatFunc(ONE if i == j else ZERO) for j in range(n)]
             for i, row in enumerate(self.rows)]
        for c in range(n):
            piv = next((i for i in range(c, n) if not a[i][c].is_zero()), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[c], a[piv] = a[piv], a[c]
            inv = a[c][c].inverse()
            a[c] = [x * inv for x in a[c]]
            for i in range(n):
                if i != c and not a[i][c].is_zero():
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return Matrix([row[n:] for row in a])


def _eval(x, v: Fraction) -> Fraction:
    return x.evaluate(v)


def _mod_value(x, v: int) -> int | None:
    """``x(v) mod p`` or ``None`` if a denominator vanishes mod p."""
    if isinstance(x, RatFunc):
        num, den = _mod_value(x.num, v), _mod_value(x.den, v)
        if num is None or den is None or den == 0:
            return None
        return num * pow(den, -1, _P) % _P
    total = 0
    for k, c in x.as_dict().items():
        c = Fraction(c)
        if c.denominator % _P == 0:
            return None
        term = c.numerator * pow(c.denominator, -1, _P) % _P
        total += term * pow(v, k, _P)
    return total % _P


def _rank_mod_p(rows: list[list[int]]) -> int:
    if not rows or not rows[0]:
        return 0
    a = np.array(rows, dtype=np.int64) % _P
    n, m = a.shape
    r = 0
    for c in range(m):
        if r == n:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, _P)
        a[r] = a[r] * inv % _P
        below = a[r + 1:, c].copy()
        mask = below != 0
        if mask.any():
            a[r + 1:][mask] = (a[r + 1:][mask] - np.outer(below[mask], a[r]) % _P) % _P
        r += 1
    return r


def rank_lower_bound(mat: Matrix | list[list], seed: int = 0, tries: int = 2) -> int:
    """A proven lower bound on the rank over ``K`` (evaluation plus reduction mod p)."""
    rows = mat.rows if isinstance(mat, Matrix) else mat
    rng = random.Random(seed)
    best = 0
    for _ in range(tries):
        v = rng.randrange(2, _P - 1)
        vals = []
        ok = True
        for row in rows:
            r = []
            for x in row:
                y = _mod_value(x, v)
                if y is None:
                    ok = False
                    break
                r.append(y)
            if not ok:
                break
            vals.append(r)
        if not ok:
            continue
        best = max(best, _rank_mod_p(vals))
        if best == min(len(rows), len(rows[0]) if rows else 0):
            break
    return best


def exact_rank(mat: Matrix | list[list]) -> int:
    """Rank over ``K`` by exact elimination (slow; used when certificates are inconclusive)."""
    rows = mat.rows if isinstance(mat, Matrix) else mat
    a = [[RatFunc.coerce(x) for x in row] for row in rows]
    if not a:
        return 0
    n, m = len(a), len(a[0])
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if not a[i][c].is_zero()), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        for i in range(r + 1, n):
            if not a[i][c].is_zero():
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == n:
            break
    return r


def rank(mat: Matrix | list[list]) -> int:
    rows = mat.rows if isinstance(mat, Matrix) else mat
    if not rows:
        return 0
    full = min(len(rows), len(rows[0]))
    lb = rank_lower_bound(rows)
    if lb == full:
        return lb
    return exact_rank(rows)


def full_rank(mat: Matrix | list[list]) -> bool:
    rows = mat.rows if isinstance(mat, Matrix) else mat
    if not rows:
        return True
    return rank(rows) == min(len(rows), len(rows[0]))


def charpoly(mat: Matrix) -> list:
    """Coefficients ``[c_0, ..., c_n]`` of ``det(x I - M)`` (Berkowitz, division-free)."""
    n = mat.n
    if n != mat.m:
        raise ValueError("characteristic polynomial of a non-square matrix")
    if n == 0:
        return [ONE]
    a = mat.rows
    # vect holds the coefficients of the characteristic polynomial of the leading r x r block,
    # highest degree first
    vect = [ONE, -a[0][0]]
    for r in range(1, n):
        # Toeplitz column for the (r+1) x (r+1) leading block
        R = [a[r][j] for j in range(r)]
        C = [a[i][r] for i in range(r)]
        Ablk = [row[:r] for row in a[:r]]
        col = [ONE, -a[r][r]]
        cur = C
        for _ in range(r):
            # R * A^k * C
            s = ZERO
            for x, y in zip(R, cur):
                if not _is_zero(x) and not _is_zero(y):
                    s = s + x * y
            col.append(-s)
            cur = [sum((Ablk[i][j] * cur[j] for j in range(r) if not _is_zero(cur[j])), ZERO)
                   for i in range(r)]
        new = []
        for i in range(r + 2):
            s = ZERO
            for j in range(min(i, r) + 1):
                if i - j < len(col):
                    s = s + col[i - j] * vect[j]
            new.append(s)
        vect = new
    return list(reversed(vect))


def poly_from_roots(roots: Iterable) -> list:
    """Coefficients ``[c_0, ..., c_n]`` of ``prod (x - r)``."""
    coeffs = [ONE]
    for r in roots:
        r = kcoerce(r)
        new = [ZERO] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i + 1] = new[i + 1] + c
            new[i] = new[i] - c * r
        coeffs = new
    return coeffs
