"""Exact coefficient rings.

``Laurent`` is a sparse Laurent polynomial in the formal variable ``v`` over
the rationals (``q = v**2``).  ``RatFunc`` is its field of fractions, used for
character values and module matrices.

String syntax, shared by printing and parsing::

    3/2*v^-2 + v - 1          # a Laurent polynomial
    (v^2 - 1)/(v + 1)         # a rational function
    q^2 - 1                   # ``q`` is accepted on input and means v^2
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Union

__all__ = ["Laurent", "RatFunc", "V", "Q", "ONE", "ZERO", "as_rational"]

Scalar = Union[int, Fraction]


def as_rational(c) -> Scalar:
    """Normalize an exact scalar: Fractions with unit denominator become ints."""
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return as_rational(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return as_rational(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def _fmt_rational(c: Scalar) -> str:
    return str(c)


class Laurent:
    """Sparse Laurent polynomial ``sum c_k v^k`` with exact rational ``c_k``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: dict[int, Scalar] | None = None, *, _trusted=False):
        if _trusted:
            self._c = coeffs
        else:
            self._c = {}
            for k, c in (coeffs or {}).items():
                c = as_rational(c)
                if c:
                    self._c[int(k)] = c
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def monomial(cls, c: Scalar = 1, k: int = 0) -> Laurent:
        c = as_rational(c)
        return cls({k: c} if c else {}, _trusted=True)

    @classmethod
    def coerce(cls, x) -> Laurent:
        if isinstance(x, Laurent):
            return x
        if isinstance(x, RatFunc):
            return x.to_laurent()
        if isinstance(x, str):
            return cls.parse(x)
        return cls.monomial(x, 0)

    # -- inspection --------------------------------------------------------
    def items(self) -> Iterator[tuple[int, Scalar]]:
        """(exponent, coefficient) pairs in descending exponent order."""
        for k in sorted(self._c, reverse=True):
            yield k, self._c[k]

    def as_dict(self) -> dict[int, Scalar]:
        return dict(self._c)

    def __getitem__(self, k: int) -> Scalar:
        return self._c.get(k, 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def __len__(self) -> int:
        return len(self._c)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other) -> Laurent:
        if not isinstance(other, Laurent):
            if isinstance(other, RatFunc):
                return NotImplemented
            other = Laurent.coerce(other)
        out = dict(self._c)
        for k, c in other._c.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = as_rational(s)
            else:
                out.pop(k, None)
        return Laurent(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> Laurent:
        return Laurent({k: -c for k, c in self._c.items()}, _trusted=True)

    def __sub__(self, other) -> Laurent:
        if isinstance(other, RatFunc):
            return NotImplemented
        return self + (-Laurent.coerce(other))

    def __rsub__(self, other) -> Laurent:
        return Laurent.coerce(other) - self

    def __mul__(self, other) -> Laurent:
        if not isinstance(other, Laurent):
            if isinstance(other, RatFunc):
                return NotImplemented
            other = Laurent.coerce(other)
        out: dict[int, Scalar] = {}
        for k1, c1 in self._c.items():
            for k2, c2 in other._c.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return Laurent({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Laurent:
        if n < 0:
            if not self.is_monomial():
                raise ZeroDivisionError(f"{self} is not a unit of the Laurent ring")
            (k, c), = self._c.items()
            return Laurent.monomial(Fraction(1) / c ** (-n), k * n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def unit_inverse(self) -> Laurent:
        return self ** -1

    def shift(self, k: int) -> Laurent:
        """Multiply by ``v**k``."""
        return Laurent({e + k: c for e, c in self._c.items()}, _trusted=True)

    def scale(self, c: Scalar) -> Laurent:
        return Laurent({k: x * c for k, x in self._c.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, Laurent):
            return self._c == other._c
        if isinstance(other, RatFunc):
            return other == self
        try:
            return self._c == Laurent.coerce(other)._c
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def evaluate(self, x) -> Fraction:
        """Exact value at ``v = x`` (``x`` a nonzero rational if negative powers occur)."""
        x = Fraction(x)
        return sum((Fraction(c) * x ** k for k, c in self._c.items()), Fraction(0))

    def substitute_q_one(self) -> Fraction:
        return self.evaluate(1)

    # -- printing / parsing ------------------------------------------------
    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, c in self.items():
            neg = c < 0
            a = -c if neg else c
            if k == 0:
                body = _fmt_rational(a)
            else:
                var = "v" if k == 1 else f"v^{k}"
                body = var if a == 1 else f"{_fmt_rational(a)}*{var}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Laurent({str(self)!r})"

    _TERM = re.compile(
        r"^(?P<coef>\d+(?:/\d+)?)?(?:\*?(?P<var>[vq])(?:\^\(?(?P<exp>-?\d+)\)?)?)?$"
    )

    @classmethod
    def parse(cls, text: str) -> Laurent:
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial string")
        if s.startswith("(") and s.endswith(")") and _balanced_outer(s):
            return cls.parse(s[1:-1])
        # split into signed terms; a '-' right after '^' or '^(' belongs to the exponent
        terms = []
        cur = ""
        for i, ch in enumerate(s):
            if ch in "+-" and cur and s[i - 1] not in "^(":
                terms.append(cur)
                cur = ch
            else:
                cur += ch
        terms.append(cur)
        out = ZERO
        for t in terms:
            sign = 1
            while t and t[0] in "+-":
                if t[0] == "-":
                    sign = -sign
                t = t[1:]
            m = cls._TERM.match(t)
            if not t or not m or (m.group("coef") is None and m.group("var") is None):
                raise ValueError(f"cannot parse term {t!r} in {text!r}")
            c = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            k = 0
            if m.group("var"):
                k = int(m.group("exp")) if m.group("exp") else 1
                if m.group("var") == "q":
                    k *= 2
            out = out + Laurent.monomial(sign * c, k)
        return out


def _balanced_outer(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(s) - 1:
                return False
    return depth == 0


ZERO = Laurent({}, _trusted=True)
ONE = Laurent({0: 1}, _trusted=True)
V = Laurent({1: 1}, _trusted=True)
Q = Laurent({2: 1}, _trusted=True)


# -- dense polynomial helpers (ascending coefficient lists over Fraction) ----

def _to_dense(p: Laurent) -> tuple[int, list[Fraction]]:
    """Split ``p = v^a * f(v)`` with ``f(0) != 0``."""
    a = p.min_exp()
    f = [Fraction(0)] * (p.max_exp() - a + 1)
    for k, c in p._c.items():
        f[k - a] = Fraction(c)
    return a, f


def _from_dense(f: list[Fraction], shift: int = 0) -> Laurent:
    return Laurent({i + shift: c for i, c in enumerate(f) if c})


def _trim(f: list[Fraction]) -> list[Fraction]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _divmod(f: list[Fraction], g: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    f = _trim(list(f))
    g = _trim(list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    qt = [Fraction(0)] * max(len(f) - len(g) + 1, 1)
    lg = g[-1]
    while len(f) >= len(g) and f:
        c = f[-1] / lg
        d = len(f) - len(g)
        qt[d] = c
        for i, gc in enumerate(g):
            f[i + d] -= c * gc
        _trim(f)
    return _trim(qt), f


def _gcd(f: list[Fraction], g: list[Fraction]) -> list[Fraction]:
    f = _trim(list(f))
    g = _trim(list(g))
    while g:
        f, g = g, _divmod(f, g)[1]
    if not f:
        return [Fraction(1)]
    lc = f[-1]
    return [c / lc for c in f]


class RatFunc:
    """Element of the fraction field ``Q(v)``.

    Canonical form: ``num / den`` with ``den`` a monic polynomial with nonzero
    constant term, coprime to ``num``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Laurent.coerce(num)
        if den is None:
            self.num, self.den = num, ONE
            return
        den = Laurent.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        if den.is_monomial():
            self.num, self.den = num * den ** -1, ONE
            return
        a, d = _to_dense(den)
        b, n = _to_dense(num)
        g = _gcd(n, d)
        if len(g) > 1:
            n = _divmod(n, g)[0]
            d = _divmod(d, g)[0]
        lc = d[-1]
        self.num = _from_dense([c / lc for c in n], b - a)
        self.den = _from_dense([c / lc for c in d])

    @classmethod
    def coerce(cls, x) -> RatFunc:
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        return cls(Laurent.coerce(x))

    def is_laurent(self) -> bool:
        return self.den is ONE or self.den == ONE

    def to_laurent(self) -> Laurent:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __add__(self, other) -> RatFunc:
        other = RatFunc.coerce(other)
        if self.is_laurent() and other.is_laurent():
            return RatFunc(self.num + other.num)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        r = RatFunc.__new__(RatFunc)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other) -> RatFunc:
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other) -> RatFunc:
        return RatFunc.coerce(other) - self

    def __mul__(self, other) -> RatFunc:
        other = RatFunc.coerce(other)
        if self.is_laurent() and other.is_laurent():
            return RatFunc(self.num * other.num)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> RatFunc:
        return self * RatFunc.coerce(other).inverse()

    def __rtruediv__(self, other) -> RatFunc:
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> RatFunc:
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_laurent():
            return RatFunc(self.num ** n)
        return RatFunc(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        try:
            other = RatFunc.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def evaluate(self, x) -> Fraction:
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator of {self} vanishes at v={x}")
        return self.num.evaluate(x) / d

    def __str__(self) -> str:
        if self.is_laurent():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> RatFunc:
        s = text.strip()
        if s.startswith("("):
            depth = 0
            for i, ch in enumerate(s):
                depth += ch == "("
                depth -= ch == ")"
                if depth == 0:
                    rest = s[i + 1:].strip()
                    if rest.startswith("/"):
                        return cls(Laurent.parse(s[1:i]), Laurent.parse(rest[1:]))
                    break
        return cls(Laurent.parse(s))


def laurent_sum(items: Iterable[Laurent]) -> Laurent:
    out = ZERO
    for x in items:
        out = out + x
    return out
