"""The coupling function P(x, y): exact values in Q + Q*T and numeric quadrature."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .exactnum import RingT

MIN_GRID = 64


def _reduce(x: int, y: int) -> tuple[int, int]:
    # direct / swap / rotate, so that the first argument is <= -1
    if x <= -1:
        return x, y
    if y <= -1:
        return y, x
    return -x - y - 1, x


@lru_cache(maxsize=None)
def _p_reduced(x: int, y: int) -> tuple[Fraction, Fraction]:
    n = -x - 1
    const = Fraction(0)
    tcoef = Fraction(0)
    sign = -1 if n % 2 else 1
    # (-1-t)^n t^(-y-1) = (-1)^n sum_j C(n,j) t^(j-y-1)
    for j in range(n + 1):
        m = j - y  # m = k + 1 for the monomial t^k
        c = sign * comb(n, j)
        if m == 0:
            const += Fraction(c, 3)
            continue
        r = m % 3
        if r == 1:
            tcoef -= Fraction(c, 2 * m)
        elif r == 2:
            tcoef += Fraction(c, 2 * m)
    return const, tcoef


def p_exact(x: int, y: int) -> RingT:
    """Exact P(x, y) as ``RingT([rational, T-coefficient])``."""
    const, tcoef = _p_reduced(*_reduce(int(x), int(y)))
    return RingT([const, tcoef])


def _inner_phi(theta: np.ndarray, y: int) -> np.ndarray:
    # (1/2pi) int_0^{2pi} e^{i y phi} / (a + e^{-i phi}) dphi, a = 1 + e^{-i theta},
    # by expanding in a geometric series on the side of |a| = 1 where it converges
    a = 1.0 + np.exp(-1j * theta)
    big = np.abs(a) > 1.0
    out = np.zeros_like(a)
    if y >= 0:
        out[big] = (-1) ** y * a[big] ** (-y - 1)
    else:
        out[~big] = (-a[~big]) ** (-y - 1)
    return out


@lru_cache(maxsize=8)
def _gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def p_numeric(x: int, y: int, grid: int = 512, method: str = "iterated") -> float:
    """Numeric P(x, y) from its double-integral definition.

    ``method="iterated"`` integrates phi in closed form (geometric series) and
    theta by Gauss-Legendre with ``grid`` nodes on each smooth piece.
    ``method="trapezoid"`` is the plain 2D periodic trapezoid rule on a
    half-step offset grid; it converges only at first order because of the
    integrable 1/r singularities of the integrand.
    """
    if grid < MIN_GRID:
        raise ValueError(f"grid must be at least {MIN_GRID}, got {grid}")
    x, y = int(x), int(y)
    if method == "iterated":
        nodes, weights = _gauss_legendre(grid)
        total = 0.0 + 0.0j
        # the inner integral jumps at theta = +-2pi/3
        for lo, hi in ((-2 * np.pi / 3, 2 * np.pi / 3), (2 * np.pi / 3, 4 * np.pi / 3)):
            th = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
            vals = np.exp(1j * x * th) * _inner_phi(th, y)
            total += 0.5 * (hi - lo) * np.dot(weights, vals)
        return float((total / (2 * np.pi)).real)
    if method == "trapezoid":
        h = 2 * np.pi / grid
        t = (np.arange(grid) + 0.5) * h
        ex = np.exp(1j * x * t)
        ey = np.exp(1j * y * t)
        em = np.exp(-1j * t)
        acc = 0.0 + 0.0j
        for i in range(grid):
            acc += ex[i] * np.sum(ey / (1.0 + em[i] + em))
        return float((acc / grid**2).real)
    raise ValueError(f"unknown method {method!r}")
