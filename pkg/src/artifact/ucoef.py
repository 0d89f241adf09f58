"""Asymptotic coefficients U_s(a, b) of P(-3r-1+a, -1+b) as r grows."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

from .coupling import p_exact
from .diffops import finite_diff_pow
from .exactnum import CycloQ, RingT, ring_eval_float


def gen_binom(top: int, l: int) -> Fraction:
    """C(top, l) for any integer ``top`` and l >= 0, as an exact product."""
    out = Fraction(1)
    for i in range(l):
        out = out * (top - i) / (i + 1)
    return out


@lru_cache(maxsize=None)
def _u_cyclo(s: int, a: int, b: int) -> CycloQ:
    u = a + b - 1
    z = CycloQ(0)
    neg_zinv = -CycloQ.zeta_pow(-1)
    for l in range(s + 1):
        c = gen_binom(-b, l)
        if c == 0:
            continue
        dl = finite_diff_pow(lambda x: x**s, l, u)
        z = z + (neg_zinv ** l) * (c * dl)
    return CycloQ.zeta_pow(a - b - 1) * z


def u_coef(s: int, a: int, b: int) -> RingT:
    """Exact U_s(a, b), a rational multiple of T (zero constant term)."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    return _u_cyclo(int(s), int(a), int(b)).imag_to_ring()


def u_remainder(a: int, b: int, n: int, r: int, precision: int = 200):
    """|P(-3r-1+a, -1+b) - sum_{s<n} (3r)^(-s-1) U_s(a, b)| in high precision."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if r < 1:
        raise ValueError("r must be positive")
    exact = p_exact(-3 * r - 1 + a, -1 + b)
    # the partial sum is an exact rational multiple of T
    partial = RingT()
    for s in range(n):
        partial = partial + u_coef(s, a, b) * Fraction(1, (3 * r) ** (s + 1))
    with mpmath.workprec(precision):
        return abs(ring_eval_float(exact - partial, precision))
