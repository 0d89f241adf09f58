"""Exact correlation of side-2 triangular holes as a determinant over Q[T]."""
from __future__ import annotations

from typing import Sequence

from .coupling import p_exact
from .exactnum import RingT, ring_det, ring_eval_float
from .holes import HoleConfig, MonomerCoord, charge, mirror
from .ucoef import u_coef

RingMatrix = list  # list of rows of RingT


def a_block(x: int, y: int) -> list[list[RingT]]:
    return [
        [p_exact(x - 1, y - 1), p_exact(x - 2, y)],
        [p_exact(x, y - 2), p_exact(x - 1, y - 1)],
    ]


def b_block(s: int, x: int, y: int) -> list[list[RingT]]:
    return [
        [u_coef(s, x, y), u_coef(s, x - 1, y + 1)],
        [u_coef(s, x + 1, y - 1), u_coef(s, x, y)],
    ]


def build_M(config: HoleConfig) -> RingMatrix:
    """Block matrix with A(a_i - c_j, b_i - d_j) columns, then B_0..B_{m-n-1}(a_i, b_i)."""
    east, west = config.east, config.west
    m, n = len(east), len(west)
    if n > m:
        raise ValueError("more W than E holes; apply holes.mirror first")
    rows: RingMatrix = []
    for e in east:
        blocks = [a_block(e.x - w.x, e.y - w.y) for w in west]
        blocks += [b_block(s, e.x, e.y) for s in range(m - n)]
        for r in range(2):
            rows.append([entry for blk in blocks for entry in blk[r]])
    return rows


def normalize(config: HoleConfig) -> HoleConfig:
    """Mirror configurations of negative charge so that #E >= #W."""
    return mirror(config) if charge(config) < 0 else config


def _abs_exact(v: RingT, precision: int = 64) -> RingT:
    return -v if ring_eval_float(v, precision) < 0 else v


def omega_hat(config: HoleConfig, precision: int = 53) -> tuple[RingT, float]:
    """Exact |det M| as a polynomial in T, together with its float value."""
    cfg = normalize(config)
    val = _abs_exact(ring_det(build_M(cfg)))
    return val, ring_eval_float(val, precision)


def balanced_det(lefts: Sequence, rights: Sequence) -> RingT:
    """Exact det(P(r_i - l_j, r'_i - l'_j)) for equally many lefts and rights."""
    if len(lefts) != len(rights):
        raise ValueError("need as many right-monomers as left-monomers (total charge zero)")
    ls = [_xy(p) for p in lefts]
    rs = [_xy(p) for p in rights]
    mat = [[p_exact(r[0] - l[0], r[1] - l[1]) for l in ls] for r in rs]
    return ring_det(mat)


def omega1_balanced(lefts: Sequence, rights: Sequence, precision: int = 53) -> float:
    return abs(ring_eval_float(balanced_det(lefts, rights), precision))


def _xy(p) -> tuple[int, int]:
    if isinstance(p, MonomerCoord):
        return p.x, p.y
    x, y = p
    return int(x), int(y)


def reduced_monomers(config: HoleConfig) -> tuple[list, list]:
    """Left and right monomers left after removing the forced central lozenges."""
    lefts = [l for w in config.west for l in w.reduced_lefts()]
    rights = [r for e in config.east for r in e.reduced_rights()]
    return lefts, rights
