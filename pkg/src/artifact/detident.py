"""Exact checks of the determinant evaluations behind the correlation asymptotics.

Every matrix here lives over Q: the cube root of unity is replaced by a free
rational ``zeta`` (not 0, +-1), so an identity that holds for an indeterminate
zeta is tested at many rational points. Rows come in block-rows (one per
E-multihole, ``2 s_i`` rows each) and columns in block-columns (one per
W-multihole, ``2 t_j`` columns each) followed by ``2 (S - T)`` B-columns.
Inside a block every 2x2 box has the shape ``[[X11, X12], [X21, X11]]``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Callable, Optional, Sequence

from .exactnum import as_rational, rational_det

Matrix = list  # list of rows of Fraction

ROW_PAIR = "rows-ee"  # E/E pair rows, shifted coordinate constraint
COL_PAIR = "cols-ew"  # E/W pair columns, pattern (1, -zeta^{+-2})
COL_SHIFT = "cols-ew-shift"  # E/W pair columns mixing bi-columns 0..t_j-1
VANISHING_KINDS = (ROW_PAIR, COL_PAIR, COL_SHIFT)


@dataclass(frozen=True)
class BlockSpec:
    """Sizes, coordinates and parameters of one determinant instance.

    ``qs`` / ``qps`` hold per-multihole slopes; when both are ``None`` the
    shared slope ``q`` is used everywhere.
    """

    s: tuple
    t: tuple
    x: tuple
    y: tuple
    z: tuple
    w: tuple
    zeta: Fraction
    q: Fraction = Fraction(0)
    h: Fraction = Fraction(0)
    qs: Optional[tuple] = None
    qps: Optional[tuple] = None

    def __post_init__(self):
        fr = lambda seq: tuple(as_rational(v) for v in seq)  # noqa: E731
        object.__setattr__(self, "s", tuple(int(v) for v in self.s))
        object.__setattr__(self, "t", tuple(int(v) for v in self.t))
        for name in ("x", "y", "z", "w"):
            object.__setattr__(self, name, fr(getattr(self, name)))
        for name in ("zeta", "q", "h"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.qs is not None:
            object.__setattr__(self, "qs", fr(self.qs))
        if self.qps is not None:
            object.__setattr__(self, "qps", fr(self.qps))
        m, n = len(self.s), len(self.t)
        if any(v < 1 for v in self.s + self.t):
            raise ValueError("multihole sizes must be positive")
        if len(self.x) != m or len(self.y) != m or len(self.z) != n or len(self.w) != n:
            raise ValueError("coordinate lists must match the numbers of E and W multiholes")
        if (self.qs is None) != (self.qps is None):
            raise ValueError("give both per-hole slope lists or neither")
        if self.qs is not None and (len(self.qs) != m or len(self.qps) != n):
            raise ValueError("per-hole slope lists must match the multihole counts")
        if self.zeta in (0, 1, -1):
            raise ValueError("free zeta must avoid 0 and +-1")
        if self.S < self.T:
            raise ValueError("need S >= T (mirror the configuration first)")

    @property
    def m(self) -> int:
        return len(self.s)

    @property
    def n(self) -> int:
        return len(self.t)

    @property
    def S(self) -> int:
        return sum(self.s)

    @property
    def T(self) -> int:
        return sum(self.t)

    def slope_e(self, i: int) -> Fraction:
        return self.q if self.qs is None else self.qs[i]

    def slope_w(self, j: int) -> Fraction:
        return self.q if self.qps is None else self.qps[j]


def poch_h(a, n: int, h=0) -> Fraction:
    """(a)_{n,h} = a (a + h) ... (a + (n - 1) h); h = 1 is the rising factorial."""
    if n < 0:
        raise ValueError("negative length in shifted factorial")
    out = Fraction(1)
    for i in range(n):
        out *= a + i * h
    return out


def poch(a, n: int) -> Fraction:
    return poch_h(as_rational(a), n, 1)


def _nonzero(v: Fraction, what: str) -> Fraction:
    if v == 0:
        raise ZeroDivisionError(f"denominator factor {what} vanishes for these parameters")
    return v


def _pair(dx, dy, zeta: Fraction) -> Fraction:
    """(dx - zeta dy)(dx - zeta^{-1} dy)."""
    return (dx - zeta * dy) * (dx - dy / zeta)


def _weights(zeta: Fraction) -> tuple:
    """Prefactor pairs (first term, second term) for the 11, 12, 21 entries."""
    zi = 1 / zeta
    return ((1, 1), (zi * zi, zeta * zeta), (zeta * zeta, zi * zi))


def _combine(coef, plus: Fraction, minus: Fraction, zeta: Fraction) -> tuple:
    zi = 1 / zeta
    return tuple(coef * (a * zi * plus - b * zeta * minus) for a, b in _weights(zeta))


def _assemble(spec: BlockSpec, a_fn: Callable, b_fn: Callable) -> Matrix:
    """Lay out ``a_fn(i, j, k, l)`` and ``b_fn(i, l, k)`` triples (X11, X12, X21)."""
    extra = spec.S - spec.T
    rows: Matrix = []
    for i in range(spec.m):
        for k in range(spec.s[i]):
            boxes = [a_fn(i, j, k, l) for j in range(spec.n) for l in range(spec.t[j])]
            boxes += [b_fn(i, l, k) for l in range(extra)]
            rows.append([v for b in boxes for v in (b[0], b[1])])
            rows.append([v for b in boxes for v in (b[2], b[0])])
    return rows


def build_Mpp(spec: BlockSpec) -> Matrix:
    """The 2S x 2S matrix with rational-function entries in zeta, q and the coordinates."""
    zeta = spec.zeta
    zi = 1 / zeta

    def a_fn(i, j, k, l):
        u, v = spec.z[j] - spec.x[i], spec.w[j] - spec.y[i]
        n = k + l + 1
        dp = _nonzero(u - v * zeta, f"(u - zeta v) for E{i + 1}/W{j + 1}")
        dm = _nonzero(u - v * zi, f"(u - zeta^-1 v) for E{i + 1}/W{j + 1}")
        qi, qj = spec.slope_e(i), spec.slope_w(j)
        plus = (1 - qi * zeta) ** k * (1 - qj * zeta) ** l / dp**n
        minus = (1 - qi * zi) ** k * (1 - qj * zi) ** l / dm**n
        return _combine(comb(k + l, k), plus, minus, zeta)

    def b_fn(i, l, k):
        if k > l:
            return (Fraction(0),) * 3
        u, v = spec.x[i], spec.y[i]
        qi = spec.slope_e(i)
        plus = (1 - qi * zeta) ** k * (u - v * zeta) ** (l - k)
        minus = (1 - qi * zi) ** k * (u - v * zi) ** (l - k)
        return _combine(comb(l, k), plus, minus, zeta)

    return _assemble(spec, a_fn, b_fn)


def formula_Mpp(spec: BlockSpec) -> Fraction:
    """Closed product for det(build_Mpp(spec)); per-hole slopes enter one factor each."""
    zeta = spec.zeta
    val = (zeta**2 - zeta**-2) ** (2 * spec.S)
    for i, si in enumerate(spec.s):
        val *= _pair(spec.slope_e(i), 1, zeta) ** comb(si, 2)
    for j, tj in enumerate(spec.t):
        val *= _pair(spec.slope_w(j), 1, zeta) ** comb(tj, 2)
    val *= _pair_products(spec, lambda dx, dy, a, b: _pair(dx, dy, zeta) ** (a * b))
    return val


def _pair_products(spec: BlockSpec, factor: Callable) -> Fraction:
    """Multiply ``factor(dx, dy, a, b)`` over EE and WW pairs, divide by EW pairs."""
    val = Fraction(1)
    for i, j in combinations(range(spec.m), 2):
        val *= factor(spec.x[i] - spec.x[j], spec.y[i] - spec.y[j], spec.s[i], spec.s[j])
    for i, j in combinations(range(spec.n), 2):
        val *= factor(spec.z[i] - spec.z[j], spec.w[i] - spec.w[j], spec.t[i], spec.t[j])
    for i in range(spec.m):
        for j in range(spec.n):
            d = factor(spec.x[i] - spec.z[j], spec.y[i] - spec.w[j], spec.s[i], spec.t[j])
            val /= _nonzero(d, f"E{i + 1}/W{j + 1} distance factor")
    return val


# --- h-deformation at q = 0 -------------------------------------------------


def build_M0h(spec: BlockSpec) -> Matrix:
    """Entries with shifted factorials (.)_{n,h} in place of powers; h = 0 gives q = 0."""
    zeta, h = spec.zeta, spec.h
    zi = 1 / zeta

    def a_fn(i, j, k, l):
        u, v = spec.z[j] - spec.x[i], spec.w[j] - spec.y[i]
        n = k + l + 1
        plus = 1 / _nonzero(poch_h(u - v * zeta, n, h), f"shifted (u - zeta v) for E{i + 1}/W{j + 1}")
        minus = 1 / _nonzero(poch_h(u - v * zi, n, h), f"shifted (u - zeta^-1 v) for E{i + 1}/W{j + 1}")
        return _combine(comb(k + l, k), plus, minus, zeta)

    def b_fn(i, l, k):
        if k > l:
            return (Fraction(0),) * 3
        u, v = spec.x[i], spec.y[i]
        return _combine(comb(l, k), poch_h(u - v * zeta, l - k, h), poch_h(u - v * zi, l - k, h), zeta)

    return _assemble(spec, a_fn, b_fn)


def formula_M0h(spec: BlockSpec) -> Fraction:
    """(zeta^-2 - zeta^2)^{2S} times the shifted product over pairs and index offsets."""
    zeta, h = spec.zeta, spec.h
    val = (zeta**-2 - zeta**2) ** (2 * spec.S)

    def same(dx, dy, a, b, shift):
        out = Fraction(1)
        for k in range(a):
            for l in range(b):
                e = shift * (k - l) * h
                out *= (dx - zeta * dy - e) * (dx - dy / zeta - e)
        return out

    for i, j in combinations(range(spec.m), 2):
        val *= same(spec.x[i] - spec.x[j], spec.y[i] - spec.y[j], spec.s[i], spec.s[j], 1)
    # W coordinates enter the entries as z_j - x_i, so their shift runs the other way
    for i, j in combinations(range(spec.n), 2):
        val *= same(spec.z[i] - spec.z[j], spec.w[i] - spec.w[j], spec.t[i], spec.t[j], -1)
    for i in range(spec.m):
        for j in range(spec.n):
            dx, dy = spec.x[i] - spec.z[j], spec.y[i] - spec.w[j]
            for k in range(spec.s[i]):
                for l in range(spec.t[j]):
                    f = (dx - zeta * dy - (k + l) * h) * (dx - dy / zeta - (k + l) * h)
                    val /= _nonzero(f, f"shifted E{i + 1}/W{j + 1} factor")
    return val


def n1_count(a: int, s: int, t: int) -> int:
    """#{(k, l): k - l = a, 0 <= k < s, 0 <= l < t}."""
    return sum(1 for k in range(s) if 0 <= k - a < t)


def n2_count(a: int, s: int, t: int) -> int:
    """#{(k, l): k + l = a, 0 <= k < s, 0 <= l < t}."""
    return sum(1 for k in range(s) if 0 <= a - k < t)


def _ew_factors(spec: BlockSpec, i: int, j: int, sign: int) -> list:
    """[(x_i - z_j) - zeta^{sign}(y_i - w_j) - a h] for a = 0..s_i + t_j - 2."""
    zs = spec.zeta if sign > 0 else 1 / spec.zeta
    dx, dy = spec.x[i] - spec.z[j], spec.y[i] - spec.w[j]
    return [dx - zs * dy - a * spec.h for a in range(spec.s[i] + spec.t[j] - 1)]


def _prod(vals) -> Fraction:
    out = Fraction(1)
    for v in vals:
        out *= v
    return out


def d_factor(spec: BlockSpec) -> Fraction:
    """The polynomial prefactor d clearing every denominator of build_M0h."""
    return _prod(_prod(_ew_factors(spec, i, j, 1)) * _prod(_ew_factors(spec, i, j, -1))
                 for i in range(spec.m) for j in range(spec.n))


def build_dM0(spec: BlockSpec) -> Matrix:
    """d * build_M0h(spec), computed by cancellation so it stays finite where d = 0."""
    zeta = spec.zeta
    pair_d = {(i, j): _prod(_ew_factors(spec, i, j, 1)) * _prod(_ew_factors(spec, i, j, -1))
              for i in range(spec.m) for j in range(spec.n)}
    d_all = _prod(pair_d.values())

    def d_without(i, j):
        return _prod(v for key, v in pair_d.items() if key != (i, j))

    def a_fn(i, j, k, l):
        n = k + l + 1
        fp, fm = _ew_factors(spec, i, j, 1), _ew_factors(spec, i, j, -1)
        rest = d_without(i, j) * (-1) ** n
        # (u - zeta v)_{n,h} = (-1)^n prod_{b<n} F+_b with u = z_j - x_i
        plus = rest * _prod(fp[n:]) * _prod(fm)
        minus = rest * _prod(fp) * _prod(fm[n:])
        return _combine(comb(k + l, k), plus, minus, zeta)

    def b_fn(i, l, k):
        if k > l:
            return (Fraction(0),) * 3
        u, v = spec.x[i], spec.y[i]
        zi = 1 / zeta
        plus = d_all * poch_h(u - v * zeta, l - k, spec.h)
        minus = d_all * poch_h(u - v * zi, l - k, spec.h)
        return _combine(comb(l, k), plus, minus, zeta)

    return _assemble(spec, a_fn, b_fn)


# --- vanishing combinations -------------------------------------------------


def _row_offsets(spec: BlockSpec) -> list:
    out, acc = [], 0
    for si in spec.s:
        out.append(acc)
        acc += 2 * si
    return out


def _col_offsets(spec: BlockSpec) -> list:
    out, acc = [], 0
    for tj in spec.t:
        out.append(acc)
        acc += 2 * tj
    return out


def admissible(spec: BlockSpec, kind: str, i: int, j: int, a: int, sign: int = 1) -> BlockSpec:
    """Move x_i so that the constraint of ``kind`` holds with offset ``a``.

    rows-ee: x_i = x_j + zeta^{sign}(y_i - y_j) + a h   (E multiholes i != j)
    cols-*:  x_i = z_j + zeta^{sign}(y_i - w_j) + a h   (E multihole i, W multihole j)
    """
    zs = spec.zeta if sign > 0 else 1 / spec.zeta
    x = list(spec.x)
    if kind == ROW_PAIR:
        x[i] = spec.x[j] + zs * (spec.y[i] - spec.y[j]) + a * spec.h
    elif kind in (COL_PAIR, COL_SHIFT):
        x[i] = spec.z[j] + zs * (spec.y[i] - spec.w[j]) + a * spec.h
    else:
        raise ValueError(f"unknown vanishing kind {kind!r}")
    return replace(spec, x=tuple(x))


def _constraint_holds(spec: BlockSpec, kind: str, i: int, j: int, a: int, sign: int) -> bool:
    zs = spec.zeta if sign > 0 else 1 / spec.zeta
    if kind == ROW_PAIR:
        return spec.x[i] == spec.x[j] + zs * (spec.y[i] - spec.y[j]) + a * spec.h
    return spec.x[i] - spec.z[j] - zs * (spec.y[i] - spec.w[j]) - a * spec.h == 0


def _row_vector(spec: BlockSpec, k: int, size: int, sign: int) -> list:
    z2 = spec.zeta**2 if sign > 0 else spec.zeta**-2
    out = []
    for j in range(size):
        v = (-1) ** j * factorial(j) * comb(k, j) * spec.h**j
        out += [Fraction(v), -z2 * v]
    return out


def vanishing_combination(kind: str, spec: BlockSpec, i: int, j: int, *, k: int = 0, l: int = 0,
                          a: int = 0, sign: int = 1) -> tuple:
    """Coefficient vector annihilating d * M0 when the constraint of ``kind`` holds.

    Returns ``(axis, vector)`` with axis ``"row"`` or ``"col"``.

    rows-ee: E multiholes i < j, 0 <= k < s_i, 0 <= l < s_j, offset k - l.
    cols-ew: E multihole i, W multihole j, 0 <= a <= s_i + t_j - 2, bi-column l.
    cols-ew-shift: 0 <= a <= t_j - 2, 0 <= k <= t_j - 2 - a.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    S2 = 2 * spec.S
    if kind == ROW_PAIR:
        if not (0 <= i < j < spec.m and 0 <= k < spec.s[i] and 0 <= l < spec.s[j]):
            raise ValueError("need E indices i < j with 0 <= k < s_i and 0 <= l < s_j")
        if not _constraint_holds(spec, kind, i, j, k - l, sign):
            raise ValueError("constraint x_i = x_j + zeta(y_i - y_j) + (k - l) h does not hold")
        vec = [Fraction(0)] * S2
        off = _row_offsets(spec)
        for p, c in enumerate(_row_vector(spec, k, spec.s[i], sign)):
            vec[off[i] + p] -= c
        for p, c in enumerate(_row_vector(spec, l, spec.s[j], sign)):
            vec[off[j] + p] += c
        return "row", vec
    if not (0 <= i < spec.m and 0 <= j < spec.n):
        raise ValueError("need an E index i and a W index j")
    tj = spec.t[j]
    vec = [Fraction(0)] * S2
    base = _col_offsets(spec)[j]
    if kind == COL_PAIR:
        if not (0 <= a <= spec.s[i] + tj - 2 and 0 <= l < tj):
            raise ValueError("need 0 <= a <= s_i + t_j - 2 and 0 <= l < t_j")
        if not _constraint_holds(spec, kind, i, j, a, sign):
            raise ValueError("constraint (x_i - z_j) - zeta(y_i - w_j) - a h = 0 does not hold")
        vec[base + 2 * l] = Fraction(1)
        vec[base + 2 * l + 1] = -(spec.zeta**2 if sign > 0 else spec.zeta**-2)
        return "col", vec
    if kind == COL_SHIFT:
        if not (0 <= a <= tj - 2 and 0 <= k <= tj - 2 - a):
            raise ValueError("need 0 <= a <= t_j - 2 and 0 <= k <= t_j - 2 - a")
        if not _constraint_holds(spec, kind, i, j, a, sign):
            raise ValueError("constraint (x_i - z_j) - zeta(y_i - w_j) - a h = 0 does not hold")
        mh = -spec.h
        lead = Fraction((-1) ** k * factorial(tj - 1), factorial(k) * factorial(tj - 2 - a - k))
        for al in range(a + 1):
            vec[base + 2 * al + 1] = lead * mh**al / (factorial(a - al) * (a - al + 1 + k))
        vec[base + 2 * (a + 1 + k) + 1] = Fraction(factorial(tj - 1), factorial(tj - 2 - a - k)) * mh ** (1 + a + k)
        return "col", vec
    raise ValueError(f"unknown vanishing kind {kind!r}")


def apply_combination(matrix: Matrix, axis: str, vec: Sequence) -> list:
    """vec^T M for rows, M vec for columns."""
    if axis == "row":
        return [sum(c * matrix[r][col] for r, c in enumerate(vec) if c) for col in range(len(matrix[0]))]
    if axis == "col":
        return [sum(c * row[col] for col, c in enumerate(vec) if c) for row in matrix]
    raise ValueError("axis must be 'row' or 'col'")


# --- generalized Cauchy-Vandermonde determinant -----------------------------


def build_N(s: Sequence[int], t: Sequence[int], x: Sequence, z: Sequence) -> Matrix:
    """S x S matrix: binomial/power A-columns per W block, monomial B-columns."""
    s, t = [int(v) for v in s], [int(v) for v in t]
    x, z = [as_rational(v) for v in x], [as_rational(v) for v in z]
    S, T = sum(s), sum(t)
    if S < T:
        raise ValueError("need S >= T")
    if len(x) != len(s) or len(z) != len(t):
        raise ValueError("coordinate lists must match the block sizes")
    rows = []
    for i, si in enumerate(s):
        for r in range(si):
            row = []
            for j, tj in enumerate(t):
                den = _nonzero(-x[i] - z[j], f"(-x_{i + 1} - z_{j + 1})")
                row += [Fraction(comb(r + c, r)) / den ** (r + c + 1) for c in range(tj)]
            for p in range(S - T):
                if p < r:
                    row.append(Fraction(0))
                else:
                    row.append(comb(p, r) * x[i] ** (p - r) if p > r or x[i] else Fraction(comb(p, r)))
            rows.append(row)
    return rows


def formula_N(s: Sequence[int], t: Sequence[int], x: Sequence, z: Sequence) -> Fraction:
    """Product evaluation of det(build_N); the sign (-1)^{T(S-T)} comes from the column order."""
    x, z = [as_rational(v) for v in x], [as_rational(v) for v in z]
    S, T = sum(s), sum(t)
    val = Fraction((-1) ** (T * (S - T)))
    for i, j in combinations(range(len(s)), 2):
        val *= (x[j] - x[i]) ** (s[i] * s[j])
    for i, j in combinations(range(len(t)), 2):
        val *= (z[j] - z[i]) ** (t[i] * t[j])
    for i in range(len(s)):
        for j in range(len(t)):
            val /= _nonzero(-x[i] - z[j], f"(-x_{i + 1} - z_{j + 1})") ** (s[i] * t[j])
    return val


# --- hypergeometric identities ----------------------------------------------


def _is_nonpos_int(v: Fraction) -> bool:
    return v.denominator == 1 and v <= 0


def gauss_2f1_unit(a, b, c) -> Fraction:
    """Terminating 2F1(a, b; c; 1) summed exactly (a or b a nonpositive integer)."""
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    if _is_nonpos_int(a):
        n = -int(a)
    elif _is_nonpos_int(b):
        n = -int(b)
    else:
        raise ValueError("only terminating series are supported (a or b must be a nonpositive integer)")
    total, term = Fraction(0), Fraction(1)
    for k in range(n + 1):
        total += term
        if k == n:
            break
        den = (c + k) * (k + 1)
        if c + k == 0:
            raise ZeroDivisionError("lower parameter c hits a nonpositive integer inside the sum")
        term = term * (a + k) * (b + k) / den
    return total


def gauss_closed_form(a, b, c) -> Fraction:
    """(c - b)_n / (c)_n for a = -n (symmetric in a, b)."""
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    if not _is_nonpos_int(a):
        a, b = b, a
    if not _is_nonpos_int(a):
        raise ValueError("closed form implemented for terminating series only")
    n = -int(a)
    return poch(c - b, n) / _nonzero(poch(c, n), "(c)_n")


def saalschutz_lhs(n: int, x, y, z) -> Fraction:
    x, y, z = as_rational(x), as_rational(y), as_rational(z)
    e = 1 + x + y - z - n
    total = Fraction(0)
    for k in range(n + 1):
        total += poch(-n, k) * poch(x, k) * poch(y, k) / (
            factorial(k) * _nonzero(poch(z, k), "(z)_k") * _nonzero(poch(e, k), "(1+x+y-z-n)_k"))
    return total


def saalschutz_rhs(n: int, x, y, z) -> Fraction:
    x, y, z = as_rational(x), as_rational(y), as_rational(z)
    return poch(z - x, n) * poch(z - y, n) / _nonzero(poch(z, n) * poch(z - x - y, n), "(z)_n (z-x-y)_n")


def terminating_2f1_closed(k: int, r: int, c) -> Fraction:
    """Closed value of 2F1(-k, r + 1; c + r + 1; 1) for integer r."""
    c = as_rational(c)
    if r + 1 >= 0:
        return poch(c, r + 1) / _nonzero(poch(c + k, r + 1), "(c+k)_{r+1}")
    return poch(c + k + r + 1, -r - 1) / _nonzero(poch(c + r + 1, -r - 1), "(c+r+1)_{-r-1}")


def _rand_q(rng: random.Random, lo: int = -9, hi: int = 9, dmax: int = 6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, dmax))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _check_convolution(rng):
    k = rng.randint(0, 8)
    n = rng.randint(0, k)
    a, b = _rand_q(rng), _rand_q(rng)
    lhs = sum(comb(k, l) * comb(l, l - n) * poch(a, k - l) * poch(b, l) for l in range(n, k + 1))
    return lhs == comb(k, n) * poch(a + b + n, k - n) * poch(b, n)


def _check_difference_pochhammer(rng):
    n = rng.randint(0, 8)
    s = rng.randint(0, n)
    q = _rand_q(rng)
    lhs = sum(Fraction((-1) ** (n - j), factorial(n - j) * factorial(j)) * poch(q * j, s) * poch(j, n - s)
              for j in range(n + 1))
    return lhs == q**s


def _check_difference_power(rng):
    n = rng.randint(0, 8)
    t = rng.randint(0, n)
    lhs = sum(Fraction((-1) ** (n - j) * j**t, factorial(n - j) * factorial(j)) for j in range(n + 1))
    return lhs == (1 if t == n else 0)


def _check_terminating_2f1(rng):
    k = rng.randint(0, 8)
    r = rng.randint(-8, 8)
    while True:
        c = _rand_q(rng, -20, 20, 7)
        if c.denominator > 1:  # generic c avoids every pole
            break
    return gauss_2f1_unit(-k, r + 1, c + r + 1) == terminating_2f1_closed(k, r, c)


def _check_alternating_zero(rng):
    n = rng.randint(0, 8)
    a = _rand_q(rng)
    lhs = sum(Fraction((-1) ** j, factorial(n + 1 - j) * factorial(j)) * poch(a + 1 - j, n) for j in range(n + 2))
    return lhs == 0


def _check_pochhammer_shift(rng):
    k = rng.randint(0, 8)
    a = _rand_q(rng)
    for i in range(k + 1):
        lhs = factorial(k) * sum(Fraction((-1) ** j, factorial(j) * factorial(i - j)) * poch(a, k - j) / factorial(k - j)
                                 for j in range(i + 1))
        if lhs != poch(a - i, k) / factorial(i):
            return False
    return True


def _check_binomial_factorization(rng):
    n = rng.randint(1, 8)
    l = rng.randint(0, 8)
    x = _rand_q(rng)
    while x == 0:
        x = _rand_q(rng)
    lhs = [[comb(l + i + j, i) * x ** (i + j + 1) for j in range(n)] for i in range(n)]
    lo = [[comb(l + i, l + j) * x ** (i - j) if i >= j else Fraction(0) for j in range(n)] for i in range(n)]
    up = [[comb(j, i) * x ** (i + j + 1) for j in range(n)] for i in range(n)]
    return lhs == _mat_mul(lo, up)


def _check_gauss(rng):
    n = rng.randint(0, 8)
    b = _rand_q(rng)
    while True:
        c = _rand_q(rng, -20, 20, 7)
        if c.denominator > 1:
            break
    return gauss_2f1_unit(-n, b, c) == gauss_closed_form(-n, b, c)


def _check_saalschutz(rng):
    n = rng.randint(0, 8)
    while True:
        x, y, z = _rand_q(rng), _rand_q(rng), _rand_q(rng, -20, 20, 7)
        try:
            return saalschutz_lhs(n, x, y, z) == saalschutz_rhs(n, x, y, z)
        except ZeroDivisionError:
            continue


HYPERGEOMETRIC_CHECKS = {
    "binomial-pochhammer-convolution": _check_convolution,
    "difference-pochhammer": _check_difference_pochhammer,
    "difference-power": _check_difference_power,
    "terminating-2f1": _check_terminating_2f1,
    "alternating-pochhammer-zero": _check_alternating_zero,
    "pochhammer-shift": _check_pochhammer_shift,
    "binomial-matrix-factorization": _check_binomial_factorization,
    "gauss-terminating": _check_gauss,
    "pfaff-saalschutz": _check_saalschutz,
}


def hyperg_identity_suite(trials: int = 200, seed: int = 0) -> list[dict]:
    """One report {identity, trials, failures, seed} per hypergeometric identity."""
    reports = []
    for name, check in HYPERGEOMETRIC_CHECKS.items():
        rng = random.Random(f"{seed}:{name}")
        failures = sum(0 if check(rng) else 1 for _ in range(trials))
        reports.append({"identity": name, "trials": trials, "failures": failures, "seed": seed})
    return reports


# --- randomized determinant verification ------------------------------------


def _rand_zeta(rng: random.Random) -> Fraction:
    while True:
        z = Fraction(rng.choice([-1, 1]) * rng.randint(2, 11), rng.randint(1, 7))
        if z not in (0, 1, -1):
            return z


def _partition(rng: random.Random, total: int, parts_max: int) -> list:
    """Random composition of ``total`` into at most ``parts_max`` positive parts."""
    parts = []
    while total > 0:
        p = rng.randint(1, min(total, parts_max))
        parts.append(p)
        total -= p
    return parts


def random_spec(rng: random.Random, S_max: int = 6, *, slopes: str = "shared", h: bool = False,
                min_t: int = 0) -> BlockSpec:
    """Random admissible BlockSpec; slopes is 'shared', 'per-hole' or 'zero'."""
    while True:
        S = rng.randint(1, S_max)
        T = rng.randint(min(min_t, S), S)
        s = _partition(rng, S, 3)
        t = _partition(rng, T, 3) if T else []
        if min_t and (not t or max(t) < min_t):
            continue
        zeta = _rand_zeta(rng)
        kw = dict(
            s=s, t=t,
            x=[_rand_q(rng) for _ in s], y=[_rand_q(rng) for _ in s],
            z=[_rand_q(rng) for _ in t], w=[_rand_q(rng) for _ in t],
            zeta=zeta,
            q=_rand_q(rng) if slopes == "shared" else 0,
            h=_rand_q(rng, -5, 5, 4) if h else 0,
        )
        if slopes == "per-hole":
            kw["qs"] = [_rand_q(rng) for _ in s]
            kw["qps"] = [_rand_q(rng) for _ in t]
        spec = BlockSpec(**kw)
        try:
            formula_M0h(spec) if h else formula_Mpp(spec)
            (build_M0h if h else build_Mpp)(spec)
        except ZeroDivisionError:
            continue
        if formula_Mpp(spec) == 0 or (h and formula_M0h(spec) == 0):
            continue  # coincident coordinates; resample
        return spec


def _random_n_case(rng: random.Random, S_max: int = 7, shape: str = "any") -> tuple:
    while True:
        if shape == "cauchy":
            m = rng.randint(1, min(S_max, 4))
            s, t = [1] * m, [1] * m
        elif shape == "vandermonde":
            s, t = [1] * rng.randint(1, S_max), []
        else:
            S = rng.randint(1, S_max)
            s = _partition(rng, S, 3)
            t = _partition(rng, rng.randint(0, S), 3) if S else []
            t = [v for v in t if v]
        x = [_rand_q(rng) for _ in s]
        z = [_rand_q(rng) for _ in t]
        try:
            formula_N(s, t, x, z)
            build_N(s, t, x, z)
        except ZeroDivisionError:
            continue
        if any(v == 0 for v in x) or formula_N(s, t, x, z) == 0:
            continue
        return s, t, x, z


def verify_mpp(trials: int = 50, seed: int = 0, S_max: int = 6, slopes: str = "shared") -> dict:
    rng = random.Random(f"{seed}:mpp:{slopes}")
    fails = 0
    for _ in range(trials):
        spec = random_spec(rng, S_max, slopes=slopes)
        fails += rational_det(build_Mpp(spec)) != formula_Mpp(spec)
    name = "mpp-product" if slopes == "shared" else "mpp-product-per-hole-slopes"
    return {"identity": name, "trials": trials, "failures": int(fails), "seed": seed}


def verify_n(trials: int = 100, seed: int = 0, S_max: int = 7) -> list[dict]:
    reports = []
    for shape in ("any", "cauchy", "vandermonde"):
        rng = random.Random(f"{seed}:n:{shape}")
        fails = 0
        for _ in range(trials):
            s, t, x, z = _random_n_case(rng, S_max, shape)
            fails += rational_det(build_N(s, t, x, z)) != formula_N(s, t, x, z)
        reports.append({"identity": f"cauchy-vandermonde-{shape}", "trials": trials,
                        "failures": int(fails), "seed": seed})
    return reports


def verify_m0h(trials: int = 20, seed: int = 0, S_max: int = 5) -> dict:
    rng = random.Random(f"{seed}:m0h")
    fails = 0
    for _ in range(trials):
        spec = random_spec(rng, S_max, slopes="zero", h=True)
        fails += rational_det(build_M0h(spec)) != formula_M0h(spec)
    return {"identity": "m0h-product", "trials": trials, "failures": int(fails), "seed": seed}


def _random_vanishing_case(rng: random.Random, kind: str, S_max: int = 5):
    """Draw a spec and indices for ``kind``, then impose the constraint."""
    while True:
        min_t = 2 if kind == COL_SHIFT else (1 if kind == COL_PAIR else 0)
        spec = random_spec(rng, S_max, slopes="zero", h=True, min_t=min_t)
        sign = rng.choice([1, -1])
        if kind == ROW_PAIR:
            if spec.m < 2:
                continue
            i, j = sorted(rng.sample(range(spec.m), 2))
            k, l = rng.randrange(spec.s[i]), rng.randrange(spec.s[j])
            spec = admissible(spec, kind, i, j, k - l, sign)
            return spec, dict(i=i, j=j, k=k, l=l, sign=sign)
        i = rng.randrange(spec.m)
        js = [j for j in range(spec.n) if spec.t[j] >= min_t]
        if not js:
            continue
        j = rng.choice(js)
        if kind == COL_PAIR:
            a = rng.randint(0, spec.s[i] + spec.t[j] - 2)
            l = rng.randrange(spec.t[j])
            return admissible(spec, kind, i, j, a, sign), dict(i=i, j=j, a=a, l=l, sign=sign)
        a = rng.randint(0, spec.t[j] - 2)
        k = rng.randint(0, spec.t[j] - 2 - a)
        return admissible(spec, kind, i, j, a, sign), dict(i=i, j=j, a=a, k=k, sign=sign)


def verify_vanishing(kind: str, trials: int = 20, seed: int = 0, S_max: int = 5) -> dict:
    rng = random.Random(f"{seed}:{kind}")
    fails = 0
    for _ in range(trials):
        while True:
            spec, idx = _random_vanishing_case(rng, kind, S_max)
            try:
                mat = build_dM0(spec)
            except ZeroDivisionError:
                continue
            break
        i, j = idx.pop("i"), idx.pop("j")
        axis, vec = vanishing_combination(kind, spec, i, j, **idx)
        fails += any(apply_combination(mat, axis, vec))
    return {"identity": f"vanishing-{kind}", "trials": trials, "failures": int(fails), "seed": seed}


def verify_counters(s_max: int = 6) -> dict:
    fails = 0
    cases = 0
    for s in range(1, s_max + 1):
        for t in range(1, s_max + 1):
            cases += 1
            t1 = sum(n1_count(a, s, t) for a in range(-(t - 1), s))
            t2 = sum(n2_count(a, s, t) for a in range(s + t - 1))
            fails += not (t1 == t2 == s * t)
    return {"identity": "multiplicity-counters", "trials": cases, "failures": int(fails), "seed": None}


SUITES = ("mpp", "mpp-slopes", "cauchy-vandermonde", "m0h", "vanishing", "hypergeometric", "counters")


def run_suite(name: str, trials: Optional[int] = None, seed: int = 0) -> list[dict]:
    """Named verification batch; ``all`` runs every suite with default trial counts."""
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, trials, seed)]
    if name == "mpp":
        return [verify_mpp(trials or 50, seed)]
    if name == "mpp-slopes":
        return [verify_mpp(trials or 50, seed, slopes="per-hole")]
    if name == "cauchy-vandermonde":
        return verify_n(trials or 100, seed)
    if name == "m0h":
        return [verify_m0h(trials or 20, seed)]
    if name == "vanishing":
        return [verify_vanishing(k, trials or 20, seed) for k in VANISHING_KINDS]
    if name == "hypergeometric":
        return hyperg_identity_suite(trials or 200, seed)
    if name == "counters":
        return [verify_counters()]
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
