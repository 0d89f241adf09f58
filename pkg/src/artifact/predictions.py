"""Closed-form asymptotic predictions for hole correlations and their convergence experiments.

The predictors follow the usual estimator shape: parameters go to ``__init__``,
``fit`` validates and stores the multihole layout, ``predict`` maps scales R to
predicted correlations, and ``score`` compares against the exact determinant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import mpmath

from .correlation import omega_hat
from .exactnum import RingT, as_rational, ring_eval_float
from .holes import E, W, MultiholeSpec, config_from_multiholes, dist2

HALF_T = RingT.t_multiple(Fraction(1, 2))  # sqrt(3)/(2 pi)


def divisible_by_3(r) -> bool:
    """A rational a/b in lowest terms is divisible by 3 when 3 | a."""
    return as_rational(r).numerator % 3 == 0


def check_slope(q) -> Fraction:
    q = as_rational(q)
    if not divisible_by_3(1 - q):
        raise ValueError(
            f"slope q={q} violates 3 | (1 - q); the closed forms are proved only for such slopes"
        )
    return q


def closed_form_single(orientation: str, q, positions: Sequence[int]) -> RingT:
    """(sqrt3/2pi)^(2s) (1+q+q^2)^C(s,2) prod_{i<j} (a_i - a_j)^2, exactly."""
    if orientation not in (E, W):
        raise ValueError(f"orientation must be 'E' or 'W', got {orientation!r}")
    q = check_slope(q)
    MultiholeSpec(orientation, q, tuple(sorted(positions)))  # validates q a_i integral
    s = len(positions)
    c = (1 + q + q * q) ** comb(s, 2)
    for a, b in combinations(positions, 2):
        c *= (a - b) ** 2
    return HALF_T ** (2 * s) * c


@dataclass(frozen=True)
class ParallelExponents:
    """Exponent bookkeeping of the multihole superposition formula."""

    half_t: int  # power of sqrt(3)/(2 pi)
    q_power: int  # power of (1 + q + q^2)
    r_power: int  # power of R (twice the pair-charge sum / 4)


def parallel_exponents(s: Sequence[int], t: Sequence[int]) -> ParallelExponents:
    S, T = sum(s), sum(t)
    ee = sum(a * b for a, b in combinations(s, 2))
    ww = sum(a * b for a, b in combinations(t, 2))
    ew = sum(a * b for a in s for b in t)
    return ParallelExponents(
        half_t=S + T + abs(S - T),
        q_power=sum(comb(a, 2) for a in s) + sum(comb(b, 2) for b in t),
        r_power=2 * (ee + ww - ew),
    )


def _validate_offsets(specs: Sequence[MultiholeSpec]) -> None:
    offs = [sp.offset for sp in specs]
    if any(o[0] % 3 or o[1] % 3 for o in offs):
        raise ValueError("offsets must be integer multiples of 3")
    if len(set(offs)) != len(offs):
        raise ValueError("offsets must be pairwise distinct")


def _split(specs: Sequence[MultiholeSpec]) -> tuple[list, list]:
    return [s for s in specs if s.orientation == E], [s for s in specs if s.orientation == W]


def predict_parallel(specs: Sequence[MultiholeSpec], R: int, precision: int = 53):
    """Leading term of the parallel-multihole formula at scale R (float, mpmath)."""
    specs = list(specs)
    if not specs:
        raise ValueError("need at least one multihole")
    qs = {sp.q for sp in specs}
    if len(qs) != 1:
        raise ValueError("all multiholes must share one slope; use predict_general_slopes")
    q = check_slope(qs.pop())
    _validate_offsets(specs)
    east, west = _split(specs)
    ex = parallel_exponents([e.size for e in east], [w.size for w in west])
    const = HALF_T ** ex.half_t * (1 + q + q * q) ** ex.q_power
    for sp in specs:
        for a, b in combinations(sp.positions, 2):
            const = const * (a - b) ** 2
    # pair terms, exact rationals
    num, den = Fraction(1), Fraction(1)
    for a, b in combinations(east, 2):
        num *= Fraction(_d2(a, b)) ** (a.size * b.size)
    for a, b in combinations(west, 2):
        num *= Fraction(_d2(a, b)) ** (a.size * b.size)
    for a in east:
        for b in west:
            den *= Fraction(_d2(a, b)) ** (a.size * b.size)
    with mpmath.workprec(precision + 30):
        val = ring_eval_float(const, precision + 30) * mpmath.mpf(num.numerator) / num.denominator
        val = val * mpmath.mpf(den.denominator) / den.numerator
        val = val * mpmath.mpf(R) ** ex.r_power
    with mpmath.workprec(precision):
        return +val


def _d2(a: MultiholeSpec, b: MultiholeSpec) -> int:
    return dist2(a.offset[0] - b.offset[0], a.offset[1] - b.offset[1])


def superposition(specs: Sequence[MultiholeSpec], R: int, precision: int = 53):
    """(sqrt3/2pi)^(-(sum|ch| - |sum ch|)/2) prod omega(L_i) prod d_ij^(ch_i ch_j / 2).

    Each multihole keeps its own slope, so this also covers mixed slopes.
    """
    specs = list(specs)
    if not specs:
        raise ValueError("need at least one multihole")
    for sp in specs:
        check_slope(sp.q)
    _validate_offsets(specs)
    chs = [sp.charge for sp in specs]
    k = -(sum(abs(c) for c in chs) - abs(sum(chs))) // 2
    with mpmath.workprec(precision + 30):
        val = ring_eval_float(HALF_T, precision + 30) ** k
        for sp in specs:
            val *= ring_eval_float(closed_form_single(sp.orientation, sp.q, sp.positions), precision + 30)
        for (a, ca), (b, cb) in combinations(zip(specs, chs), 2):
            d = mpmath.mpf(R) * mpmath.sqrt(_d2(a, b))
            val *= d ** (Fraction(ca * cb, 2))
    with mpmath.workprec(precision):
        return +val


@dataclass(frozen=True)
class EvenTriangle:
    """Triangular hole of even side placed at R * offset + anchor-relative expansion."""

    orientation: str
    side: int
    offset: tuple

    def as_multihole(self) -> MultiholeSpec:
        if self.side <= 0 or self.side % 2:
            raise ValueError(f"triangle side must be positive and even, got {self.side}")
        return MultiholeSpec(self.orientation, 1, tuple(range(self.side // 2)), self.offset)


def predict_triangles(triangles: Sequence[EvenTriangle], R: int, precision: int = 53):
    """Even-side triangles: each becomes a slope-1 string of side-2 holes."""
    return superposition([t.as_multihole() for t in triangles], R, precision)


def predict_general_slopes(specs: Sequence[MultiholeSpec], R: int, precision: int = 53):
    """Multiholes with individual slopes q_i (each with 3 | 1 - q_i)."""
    return superposition(specs, R, precision)


def boltzmann_ratio(d1, d2, charges: Sequence[int], x: float = 1.0) -> float:
    """exp(-(x^2/2) sum q_i q_j (-ln d_ij)) over exp(same with d'), pairs i < j.

    ``d1`` and ``d2`` are square distance matrices (or dicts keyed by (i, j));
    self-terms i = j appear identically in both configurations and cancel.
    """
    if x < 0:
        raise ValueError("refinement x must be nonnegative")
    n = len(charges)
    log_ratio = 0.0
    for i, j in combinations(range(n), 2):
        a, b = _dist(d1, i, j), _dist(d2, i, j)
        if a <= 0 or b <= 0:
            raise ValueError("distances must be positive")
        log_ratio += 0.5 * x * x * charges[i] * charges[j] * (math.log(a) - math.log(b))
    return math.exp(log_ratio)


def _dist(d, i, j) -> float:
    if isinstance(d, dict):
        return float(d[(i, j)] if (i, j) in d else d[(j, i)])
    return float(d[i][j])


class SuperpositionPredictor:
    """Estimator-style wrapper: fit a multihole layout, predict over scales R.

    ``method`` is ``"parallel"`` (parallel formula with explicit exponents) or
    ``"superposition"`` (product of single-multihole correlations and
    distance powers, valid for mixed slopes).
    """

    def __init__(self, method: str = "parallel", precision: int = 53):
        self.method = method
        self.precision = precision

    def get_params(self, deep: bool = True) -> dict:
        return {"method": self.method, "precision": self.precision}

    def set_params(self, **params) -> "SuperpositionPredictor":
        for k, v in params.items():
            if k not in self.get_params():
                raise ValueError(f"unknown parameter {k!r}")
            setattr(self, k, v)
        return self

    def fit(self, specs: Sequence[MultiholeSpec], y=None) -> "SuperpositionPredictor":
        specs = list(specs)
        if self.method not in ("parallel", "superposition"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.precision < 53:
            raise ValueError("precision must be at least 53 bits")
        for sp in specs:
            if not isinstance(sp, MultiholeSpec):
                raise TypeError("fit expects MultiholeSpec instances")
            check_slope(sp.q)
        _validate_offsets(specs)
        config_from_multiholes(specs)  # disjointness at R = 1
        self.specs_ = specs
        return self

    def _check_fitted(self):
        if not hasattr(self, "specs_"):
            raise RuntimeError("predictor is not fitted; call fit first")

    def predict(self, Rs: Iterable[int]) -> list:
        self._check_fitted()
        f = predict_parallel if self.method == "parallel" else superposition
        return [f(self.specs_, int(R), self.precision) for R in Rs]

    def exact(self, Rs: Iterable[int]) -> list:
        self._check_fitted()
        return [omega_hat(config_from_multiholes(self.specs_, int(R)), self.precision)[1] for R in Rs]

    def score(self, Rs: Iterable[int]) -> list:
        """Ratio exact / predicted for each R."""
        Rs = list(Rs)
        return [e / p for e, p in zip(self.exact(Rs), self.predict(Rs))]


def ratio_experiment(specs: Sequence[MultiholeSpec], Rs: Iterable[int], method: str = "parallel",
                     precision: int = 53) -> list[dict]:
    """Rows {R, exact, predicted, ratio, abs_err} comparing exact correlation and prediction."""
    model = SuperpositionPredictor(method, precision).fit(specs)
    Rs = [int(R) for R in Rs]
    if any(R < 1 for R in Rs):
        raise ValueError("R values must be positive integers")
    rows = []
    for R, ex, pr in zip(Rs, model.exact(Rs), model.predict(Rs)):
        ratio = ex / pr
        rows.append({"R": R, "exact": ex, "predicted": pr, "ratio": ratio, "abs_err": abs(ratio - 1)})
    return rows
