"""Finite differences, Newton divided differences, and the divided-difference row transform."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, prod
from typing import Callable, Sequence

from .exactnum import RingT, as_rational


def finite_diff_pow(f: Callable[[int], object], s: int, u: int):
    """s-th forward difference of ``f`` at ``u``: sum_j (-1)^(s-j) C(s,j) f(u+j)."""
    if s < 0:
        raise ValueError("order must be nonnegative")
    total = 0
    for j in range(s + 1):
        c = comb(s, j) * (-1 if (s - j) % 2 else 1)
        total = total + c * f(u + j)
    return total


def _check_nodes(nodes: Sequence) -> list[Fraction]:
    ns = [as_rational(c) for c in nodes]
    if len(set(ns)) != len(ns):
        raise ValueError("divided differences need pairwise distinct nodes")
    return ns


def divided_diff(values: Sequence, nodes: Sequence, k: int):
    """k-th Newton divided difference D^k f(c_1) from the values f(c_1), ..., f(c_{k+1}).

    Uses the recursive definition D^k f(c_1) = (D^{k-1} f(c_2) - D^{k-1} f(c_1)) / (c_{k+1} - c_1).
    Works for rational or RingT values.
    """
    if k < 0:
        raise ValueError("order must be nonnegative")
    ns = _check_nodes(nodes)
    if k >= len(ns) or k >= len(values):
        raise ValueError("order must be smaller than the number of nodes")
    table = list(values[: k + 1])
    for level in range(1, k + 1):
        table = [
            _div(table[i + 1] - table[i], ns[i + level] - ns[i])
            for i in range(len(table) - 1)
        ]
    return table[0]


def _div(v, d: Fraction):
    if isinstance(v, RingT):
        return v * (1 / d)
    return v / d


def divided_diff_explicit(values: Sequence, nodes: Sequence, k: int):
    """Partial-fraction form sum_i f(c_i) / prod_{j != i} (c_i - c_j); used as an oracle."""
    ns = _check_nodes(nodes)[: k + 1]
    total = 0
    for i, ci in enumerate(ns):
        den = prod((ci - cj for j, cj in enumerate(ns) if j != i), start=Fraction(1))
        total = total + _div(values[i], den)
    return total


def complete_homog(n: int, vars: Sequence) -> Fraction:
    """Complete homogeneous symmetric polynomial h_n(vars); h_0 = 1, h_n = 0 for n < 0."""
    if n < 0:
        return Fraction(0)
    vs = [as_rational(v) for v in vars]
    if n == 0:
        return Fraction(1)
    if not vs:
        return Fraction(0)
    # h_n(v_1..v_k) = h_n(v_1..v_{k-1}) + v_k h_{n-1}(v_1..v_k)
    h = [Fraction(1)] + [Fraction(0)] * n
    for v in vs:
        for d in range(1, n + 1):
            h[d] += v * h[d - 1]
    return h[n]


def complete_homog_bruteforce(n: int, vars: Sequence) -> Fraction:
    vs = [as_rational(v) for v in vars]
    if n < 0:
        return Fraction(0)
    return sum((prod(c, start=Fraction(1)) for c in combinations_with_replacement(vs, n)), Fraction(0))


def dd_transform(matrix: Sequence[Sequence], rows: Sequence[int], nodes: Sequence) -> list[list]:
    """Replace rows f(c_1), ..., f(c_k) by prod_{j<l}(c_l - c_j) D^{l-1} f(c_1).

    The selected rows are taken as samples of a vector-valued function at the
    given nodes. The determinant of the result equals that of the input.
    """
    ns = _check_nodes(nodes)
    k = len(rows)
    if k != len(ns):
        raise ValueError("need one node per selected row")
    if k > len(matrix):
        raise ValueError("more selected rows than the matrix has")
    out = [list(r) for r in matrix]
    ncols = len(matrix[0]) if matrix else 0
    for l in range(k):
        scale = prod((ns[l] - ns[j] for j in range(l)), start=Fraction(1))
        new_row = []
        for c in range(ncols):
            vals = [matrix[rows[i]][c] for i in range(l + 1)]
            new_row.append(divided_diff(vals, ns[: l + 1], l) * scale)
        out[rows[l]] = new_row
    return out
