"""Exact scalars: rationals and elements of real quadratic fields.

Everything numeric in the package is either an ``int``, a
:class:`fractions.Fraction`, or a :class:`QuadraticIrrational` ``a + b*sqrt(d)``
with rational ``a, b`` and a square-free integer ``d > 1``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

Rational = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text or any(ch in text for ch in ".eE"):
        raise ValueError(f"malformed rational {text!r}")
    return Fraction(text)


def format_rational(x) -> str:
    """Wire format ``p/q`` with ``q > 0`` and ``gcd(p, q) = 1``."""
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n = s**2 * f`` and ``f`` square-free (trial division)."""
    if n <= 0:
        raise ValueError("squarefree_split expects a positive integer")
    s, f = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            f *= p
        p += 1 if p == 2 else 2
    return s, f * n


def rational_sqrt(x) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = as_fraction(x)
    if x < 0:
        raise ValueError("square root of a negative rational")
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_exact(x):
    """Square root of a nonnegative rational as a Fraction or a QuadraticIrrational."""
    r = rational_sqrt(x)
    if r is not None:
        return r
    x = as_fraction(x)
    # sqrt(n/d) = sqrt(n*d)/d
    s, f = squarefree_split(x.numerator * x.denominator)
    return QuadraticIrrational(Fraction(0), Fraction(s, x.denominator), f)


class QuadraticIrrational:
    """The real number ``a + b*sqrt(d)``; ``d`` square-free, ``d > 1``.

    Arithmetic is closed within one field Q(sqrt(d)); mixing two different
    radicands raises.  Results with ``b == 0`` collapse back to Fraction.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if d <= 1:
            raise ValueError("radicand must exceed 1")
        s, f = squarefree_split(d)
        if f == 1:
            raise ValueError("radicand is a perfect square")
        self.a = as_fraction(a)
        self.b = as_fraction(b) * s
        self.d = f

    @staticmethod
    def _make(a, b, d):
        if b == 0:
            return as_fraction(a)
        return QuadraticIrrational(a, b, d)

    def _coerce(self, other):
        if isinstance(other, QuadraticIrrational):
            if other.d != self.d:
                raise ValueError(f"cannot mix sqrt({self.d}) and sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return as_fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return self._make(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticIrrational(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return self._make(self.a - c[0], self.b - c[1], self.d)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return self._make(c[0] - self.a, c[1] - self.b, self.d)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return self._make(self.a * a + self.b * b * self.d, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def _inverse(self):
        norm = self.a * self.a - self.b * self.b * self.d
        return QuadraticIrrational(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        if isinstance(other, QuadraticIrrational):
            return self * other._inverse()
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return self._make(self.a / c[0], self.b / c[0], self.d)

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return self._inverse() * c[0]

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        if sb == 0:
            return sa
        # opposite signs: compare a^2 with b^2 d
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        return sa if lhs > rhs else sb

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, QuadraticIrrational):
            return diff.sign()
        return (diff > 0) - (diff < 0)

    def __eq__(self, other):
        if isinstance(other, QuadraticIrrational):
            if self.b == 0 or other.b == 0:
                return self.b == other.b and self.a == other.a
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __repr__(self):
        return f"QuadraticIrrational({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.d})"


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QuadraticIrrational))


def encode(x):
    """JSON-ready exact encoding: ``"p/q"`` or ``{"a", "b", "d"}`` for a + b*sqrt(d)."""
    if isinstance(x, QuadraticIrrational):
        return {"a": format_rational(x.a), "b": format_rational(x.b), "d": str(x.d)}
    return format_rational(x)


def decimal_string(x, places: int = 4) -> str:
    """Fixed-point rendering by integer arithmetic (presentation only)."""
    scale = 10 ** places
    if isinstance(x, QuadraticIrrational):
        # floor(b*sqrt(d)*scale) via isqrt on the exact square
        t = x.b * scale
        sq = t * t * x.d
        root = isqrt(sq.numerator // sq.denominator)
        scaled = x.a * scale + (root if t >= 0 else -root - 1)
        n = int(scaled // 1)
    else:
        n = int(as_fraction(x) * scale // 1)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // scale}.{n % scale:0{places}d}"
