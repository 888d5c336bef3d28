"""
Exact arithmetic in the field ℚ(√2).

A QSqrt2 holds p + q·√2 with p, q Fractions. Ordering is exact: the sign of
p + q√2 follows from the signs of p and q and, when they disagree, from
comparing p² with 2q².
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError('floats are not exact; pass an int, Fraction or string')
    return Fraction(x)


@total_ordering
class QSqrt2:
    __slots__ = ('_p', '_q')

    def __init__(self, p=0, q=0) -> None:
        self._p = _frac(p)
        self._q = _frac(q)

    @property
    def p(self) -> Fraction:
        return self._p

    @property
    def q(self) -> Fraction:
        return self._q

    @classmethod
    def coerce(cls, x) -> QSqrt2:
        return x if isinstance(x, QSqrt2) else cls(x, 0)

    def __repr__(self) -> str:
        return f'QSqrt2({self._p}, {self._q})'

    def __str__(self) -> str:
        if self._q == 0:
            return str(self._p)
        if self._p == 0:
            return f'{self._q}√2'
        sign = '+' if self._q > 0 else '-'
        return f'{self._p} {sign} {abs(self._q)}√2'

    def __hash__(self) -> int:
        return hash((self._p, self._q))

    def __float__(self) -> float:
        return float(self._p) + float(self._q) * math.sqrt(2.0)

    def __bool__(self) -> bool:
        return self._p != 0 or self._q != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QSqrt2(other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        return self._p == other._p and self._q == other._q

    def __lt__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QSqrt2(other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        return (self - other).sign() < 0

    def __add__(self, other) -> QSqrt2:
        if isinstance(other, (int, Fraction)):
            other = QSqrt2(other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        return QSqrt2(self._p + other._p, self._q + other._q)

    __radd__ = __add__

    def __neg__(self) -> QSqrt2:
        return QSqrt2(-self._p, -self._q)

    def __sub__(self, other) -> QSqrt2:
        if isinstance(other, (int, Fraction)):
            other = QSqrt2(other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        return QSqrt2(self._p - other._p, self._q - other._q)

    def __rsub__(self, other) -> QSqrt2:
        return (-self) + other

    def __mul__(self, other) -> QSqrt2:
        if isinstance(other, (int, Fraction)):
            return QSqrt2(self._p * other, self._q * other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        return QSqrt2(self._p * other._p + 2 * self._q * other._q,
                      self._p * other._q + self._q * other._p)

    __rmul__ = __mul__

    def conjugate(self) -> QSqrt2:
        return QSqrt2(self._p, -self._q)

    def norm(self) -> Fraction:
        """p² − 2q², the product with the conjugate."""
        return self._p * self._p - 2 * self._q * self._q

    def inverse(self) -> QSqrt2:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError('QSqrt2 division by zero')
        return QSqrt2(self._p / n, -self._q / n)

    def __truediv__(self, other) -> QSqrt2:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError('QSqrt2 division by zero')
            return QSqrt2(self._p / other, self._q / other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> QSqrt2:
        return QSqrt2.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> QSqrt2:
        if n < 0:
            return self.inverse() ** -n
        result, base = QSqrt2(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sign(self) -> int:
        p, q = self._p, self._q
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sp == sq or sq == 0:
            return sp
        if sp == 0:
            return sq
        # opposite signs: the term with the larger square wins
        lhs, rhs = p * p, 2 * q * q
        if lhs == rhs:
            return 0
        return sp if lhs > rhs else sq

    def __abs__(self) -> QSqrt2:
        return -self if self.sign() < 0 else self

    def to_dict(self) -> dict:
        return {'p': str(self._p), 'q': str(self._q), 'text': str(self), 'float': float(self)}


SQRT2 = QSqrt2(0, 1)
ZERO = QSqrt2(0)
ONE = QSqrt2(1)


def qs_add(x, y) -> QSqrt2:
    return QSqrt2.coerce(x) + QSqrt2.coerce(y)


def qs_mul(x, y) -> QSqrt2:
    return QSqrt2.coerce(x) * QSqrt2.coerce(y)


def qs_neg(x) -> QSqrt2:
    return -QSqrt2.coerce(x)


def qs_sign(x) -> int:
    return QSqrt2.coerce(x).sign()


def qs_cmp(x, y) -> int:
    return (QSqrt2.coerce(x) - QSqrt2.coerce(y)).sign()


def qs_max(*xs) -> QSqrt2:
    best = QSqrt2.coerce(xs[0])
    for x in xs[1:]:
        x = QSqrt2.coerce(x)
        if x > best:
            best = x
    return best


def qs_min(*xs) -> QSqrt2:
    best = QSqrt2.coerce(xs[0])
    for x in xs[1:]:
        x = QSqrt2.coerce(x)
        if x < best:
            best = x
    return best
