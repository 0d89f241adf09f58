"""Exact number systems: rationals, polynomials in T = sqrt(3)/pi, and Q(zeta)."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath

Rational = Fraction
Scalar = Union[int, Fraction]


def as_rational(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot convert {type(v).__name__} to an exact rational")


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class RingT:
    """Polynomial in T = sqrt(3)/pi with rational coefficients.

    ``coeffs[k]`` multiplies ``T**k``. Values are immutable and trailing
    zeros are trimmed, so equality is structural.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RingT is immutable")

    @classmethod
    def const(cls, c: Scalar) -> "RingT":
        return cls([c])

    @classmethod
    def t_multiple(cls, c: Scalar, k: int = 1) -> "RingT":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _coerce(self, other) -> "RingT":
        if isinstance(other, RingT):
            return other
        return RingT([as_rational(other)])

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return RingT([self.coeff(k) + o.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return RingT([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RingT):
            c = as_rational(other)
            return RingT([c * a for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return RingT()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RingT(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("RingT has no division; negative powers are unsupported")
        out, base = RingT([1]), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divexact(self, other: "RingT") -> "RingT":
        """Exact polynomial quotient; raises if ``other`` does not divide ``self``."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.coeffs[-1]
        if len(rem) - 1 < d:
            if rem:
                raise ArithmeticError("inexact polynomial division")
            return RingT()
        quot = [Fraction(0)] * (len(rem) - d)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] / lead
            quot[k - d] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k - d + j] -= c * b
        if any(rem[:d]):
            raise ArithmeticError("inexact polynomial division")
        return RingT(quot)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RingT([other])
        if not isinstance(other, RingT):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("RingT", self.coeffs))

    def eval(self, precision: int = 53):
        return ring_eval_float(self, precision)

    def __float__(self):
        return float(ring_eval_float(self, 64))

    def format(self, min_degree: int = 0) -> str:
        """Canonical text form, e.g. ``1/3 + 0·T`` or ``27/16·T^4``."""
        parts = []
        for k in range(max(self.degree, min_degree) + 1):
            c = self.coeff(k)
            if c == 0 and not (min_degree > 0 and k <= min_degree):
                continue
            mono = "" if k == 0 else ("·T" if k == 1 else f"·T^{k}")
            if not parts:
                parts.append(_fmt_rational(c) + mono)
            else:
                parts.append((" - " if c < 0 else " + ") + _fmt_rational(abs(c)) + mono)
        return "".join(parts) or "0"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RingT({[_fmt_rational(c) for c in self.coeffs]})"


def ring_eval_float(x: RingT, precision: int = 53):
    """Evaluate ``x`` at T = sqrt(3)/pi with ``precision`` bits (mpmath mpf)."""
    if precision < 53:
        raise ValueError("precision must be at least 53 bits")
    if x.is_zero():
        return mpmath.mpf(0)
    # raise the working precision until the cancellation between terms is covered
    wp = precision + 32 + 4 * x.degree
    while True:
        with mpmath.workprec(wp):
            t = mpmath.sqrt(3) / mpmath.pi
            acc = mpmath.mpf(0)
            biggest = mpmath.mpf(0)
            for k, c in enumerate(x.coeffs):
                term = mpmath.mpf(c.numerator) / c.denominator * t**k
                biggest = max(biggest, abs(term))
                acc += term
            if acc != 0:
                lost = int(mpmath.log(biggest / abs(acc), 2)) + 1
                if wp - max(lost, 0) >= precision + 16:
                    break
            else:
                lost = wp
        wp = precision + 32 + 4 * x.degree + max(lost, 0) * 2
    with mpmath.workprec(precision):
        return +acc


class CycloQ:
    """Element a + b*zeta of Q(zeta), zeta = exp(2*pi*i/3), zeta**2 = -1 - zeta."""

    __slots__ = ("re0", "re1")

    def __init__(self, re0: Scalar = 0, re1: Scalar = 0):
        object.__setattr__(self, "re0", as_rational(re0))
        object.__setattr__(self, "re1", as_rational(re1))

    def __setattr__(self, name, value):
        raise AttributeError("CycloQ is immutable")

    @classmethod
    def zeta_pow(cls, k: int) -> "CycloQ":
        return _ZETA_POWERS[k % 3]

    def _coerce(self, other) -> "CycloQ":
        if isinstance(other, CycloQ):
            return other
        return CycloQ(as_rational(other), 0)

    def __add__(self, other):
        o = self._coerce(other)
        return CycloQ(self.re0 + o.re0, self.re1 + o.re1)

    __radd__ = __add__

    def __neg__(self):
        return CycloQ(-self.re0, -self.re1)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        a, b, c, d = self.re0, self.re1, o.re0, o.re1
        # (a + b z)(c + d z) = ac + (ad + bc) z + bd z^2,  z^2 = -1 - z
        bd = b * d
        return CycloQ(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def conj(self) -> "CycloQ":
        return CycloQ(self.re0 - self.re1, -self.re1)

    def norm(self) -> Fraction:
        a, b = self.re0, self.re1
        return a * a - a * b + b * b

    def inverse(self) -> "CycloQ":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        c = self.conj()
        return CycloQ(c.re0 / n, c.re1 / n)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = CycloQ(1, 0)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def imag_to_ring(self) -> RingT:
        """The real number -(i/2pi)(z - conj z) = re1*sqrt(3)/(2pi), as RingT."""
        return RingT.t_multiple(self.re1 / 2)

    def to_complex(self) -> complex:
        return complex(float(self.re0) - float(self.re1) / 2, float(self.re1) * 3 ** 0.5 / 2)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloQ(other)
        if not isinstance(other, CycloQ):
            return NotImplemented
        return self.re0 == other.re0 and self.re1 == other.re1

    def __hash__(self):
        return hash(("CycloQ", self.re0, self.re1))

    def __repr__(self):
        return f"CycloQ({_fmt_rational(self.re0)}, {_fmt_rational(self.re1)})"


_ZETA_POWERS = (CycloQ(1, 0), CycloQ(0, 1), CycloQ(-1, -1))


class FreeZeta:
    """A rational stand-in for an indeterminate zeta (zeta != 0, +-1).

    Unlike CycloQ, no relation zeta**3 = 1 is assumed.
    """

    def __init__(self, value: Scalar):
        v = as_rational(value)
        if v in (0, 1, -1):
            raise ValueError("free zeta must avoid 0 and +-1")
        self.value = v
        self._pow = lru_cache(maxsize=None)(self._pow_uncached)

    def _pow_uncached(self, k: int) -> Fraction:
        return self.value ** k

    def pow(self, k: int) -> Fraction:
        return self._pow(k)

    def __repr__(self):
        return f"FreeZeta({self.value})"


def rational_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant over Q by Gaussian elimination with row swaps."""
    a = [list(map(as_rational, r)) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det *= piv
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                f /= piv
                row_c, row_r = a[c], a[r]
                for j in range(c + 1, n):
                    row_r[j] -= f * row_c[j]
    return det


def ring_det(rows: Sequence[Sequence[RingT]]) -> RingT:
    """Exact determinant over Q[T] by fraction-free (Bareiss) elimination."""
    a = [[e if isinstance(e, RingT) else RingT.const(e) for e in r] for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return RingT([1])
    sign = 1
    prev = RingT([1])
    for k in range(n - 1):
        p = min(
            (r for r in range(k, n) if not a[r][k].is_zero()),
            key=lambda r: (a[r][k].degree, r),
            default=None,
        )
        if p is None:
            return RingT()
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (piv * a[i][j] - a[i][k] * a[k][j]).divexact(prev)
        prev = piv
    out = a[n - 1][n - 1]
    return -out if sign < 0 else out
