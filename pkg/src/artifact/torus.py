"""Exact lozenge-tiling counts on N x N honeycomb tori with removed unit triangles.

A tiling is a perfect matching between left- and right-monomers. Left (x, y)
touches the rights (x, y), (x-1, y), (x, y-1), coordinates taken mod N.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .exactnum import rational_det
from .holes import HoleConfig

STENCIL = ((0, 0), (-1, 0), (0, -1))
DEFAULT_PERMANENT_LIMIT = 26
_BLOCK_BITS = 14


@dataclass(frozen=True)
class TorusRegion:
    N: int
    removed_left: frozenset = field(default_factory=frozenset)
    removed_right: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        n = self.N
        object.__setattr__(self, "removed_left", frozenset((x % n, y % n) for x, y in self.removed_left))
        object.__setattr__(self, "removed_right", frozenset((x % n, y % n) for x, y in self.removed_right))

    @classmethod
    def from_config(cls, N: int, config: HoleConfig, extra_left=(), extra_right=()) -> "TorusRegion":
        lefts = list(config.lefts()) + list(extra_left)
        rights = list(config.rights()) + list(extra_right)
        reg = cls(N, frozenset(lefts), frozenset(rights))
        if len(reg.removed_left) != len(lefts) or len(reg.removed_right) != len(rights):
            raise ValueError(f"configuration does not fit on the N={N} torus")
        return reg

    def lefts(self) -> list[tuple[int, int]]:
        return [(x, y) for y in range(self.N) for x in range(self.N) if (x, y) not in self.removed_left]

    def rights(self) -> list[tuple[int, int]]:
        return [(x, y) for y in range(self.N) for x in range(self.N) if (x, y) not in self.removed_right]


def build_torus(N: int) -> dict:
    """Bipartite multigraph of the full torus: ``{left: [right, right, right]}``."""
    if N < 1:
        raise ValueError("N must be positive")
    return {
        (x, y): [((x + dx) % N, (y + dy) % N) for dx, dy in STENCIL]
        for y in range(N)
        for x in range(N)
    }


def biadjacency(region: TorusRegion) -> np.ndarray:
    """Integer matrix with rows = remaining lefts, columns = remaining rights (edge multiplicities)."""
    lefts, rights = region.lefts(), region.rights()
    col = {r: j for j, r in enumerate(rights)}
    mat = np.zeros((len(lefts), len(rights)), dtype=np.int64)
    n = region.N
    for i, (x, y) in enumerate(lefts):
        for dx, dy in STENCIL:
            r = ((x + dx) % n, (y + dy) % n)
            if r in col:
                mat[i, col[r]] += 1
    return mat


def ryser_permanent(mat: np.ndarray, limit: int = DEFAULT_PERMANENT_LIMIT) -> int:
    """Exact permanent by Ryser inclusion-exclusion.

    High column subsets are walked in Gray-code order (one column added or
    dropped per step); the low ``_BLOCK_BITS`` columns are handled as one
    vectorized block of precomputed row sums.
    """
    a = np.asarray(mat, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("permanent needs a square matrix")
    if n > limit:
        raise ValueError(f"matrix size {n} exceeds the permanent limit {limit}; use Kasteleyn mode")
    if n == 0:
        return 1
    k = min(n, _BLOCK_BITS)
    # row sums and signs for every subset of the low k columns
    low = np.zeros((1 << k, n), dtype=np.int64)
    lsign = np.ones(1 << k, dtype=np.int64)
    for j in range(k):
        half = 1 << j
        low[half : 2 * half] = low[:half] + a[:, j]
        lsign[half : 2 * half] = -lsign[:half]
    high_cols = a[:, k:]
    h = n - k
    run = np.zeros(n, dtype=np.int64)
    hsign = 1
    total = 0
    in_set = [False] * h
    for g in range(1 << h):
        if g:
            j = (g & -g).bit_length() - 1  # Gray code: flip the lowest set bit of g
            if in_set[j]:
                run -= high_cols[:, j]
            else:
                run += high_cols[:, j]
            in_set[j] = not in_set[j]
            hsign = -hsign
        prods = np.prod(low + run, axis=1)
        total += hsign * int(np.dot(lsign, prods))
    return total if n % 2 == 0 else -total


def ryser_permanent_scalar(mat: Sequence[Sequence[int]]) -> int:
    """Plain Gray-code Ryser on Python integers; small matrices only."""
    n = len(mat)
    if n == 0:
        return 1
    rows = [list(map(int, r)) for r in mat]
    sums = [0] * n
    in_set = [False] * n
    total = 0
    sign = 1
    for g in range(1, 1 << n):
        j = (g & -g).bit_length() - 1
        d = -1 if in_set[j] else 1
        in_set[j] = not in_set[j]
        for i in range(n):
            sums[i] += d * rows[i][j]
        sign = -sign
        p = 1
        for s in sums:
            p *= s
            if p == 0:
                break
        total += sign * p
    return total if n % 2 == 0 else -total


def naive_matchings(region: TorusRegion) -> int:
    """Recursive perfect-matching enumeration; used as an oracle on tiny regions."""
    lefts, rights = region.lefts(), region.rights()
    if len(lefts) != len(rights):
        return 0
    n = region.N
    avail = set(rights)

    def rec(i: int) -> int:
        if i == len(lefts):
            return 1
        x, y = lefts[i]
        total = 0
        for dx, dy in STENCIL:
            r = ((x + dx) % n, (y + dy) % n)
            if r in avail:
                avail.remove(r)
                total += rec(i + 1)
                avail.add(r)
        return total

    return rec(0)


def frontier_count(region: TorusRegion) -> int:
    """Transfer-matrix style count: DP over lefts in row-major order.

    The state is the set of already-used rights that some later left could
    still reach, so the state space stays about 2^(2N).
    """
    lefts, rights = region.lefts(), region.rights()
    if len(lefts) != len(rights):
        return 0
    n = region.N
    rset = set(rights)
    nbrs = [
        [r for r in (((x + dx) % n, (y + dy) % n) for dx, dy in STENCIL) if r in rset]
        for x, y in lefts
    ]
    last_use: dict = {}
    for i, rs in enumerate(nbrs):
        for r in rs:
            last_use[r] = i
    states: dict = {frozenset(): 1}
    for i, rs in enumerate(nbrs):
        nxt: dict = {}
        for used, cnt in states.items():
            for r in rs:
                # multi-edges (N = 1, 2) count separately
                if r in used:
                    continue
                new = used | {r}
                new = frozenset(u for u in new if last_use[u] > i)
                nxt[new] = nxt.get(new, 0) + cnt
        states = nxt
    return sum(states.values())


def count_tilings(region: TorusRegion, limit: int = DEFAULT_PERMANENT_LIMIT) -> int:
    """Exact number of lozenge tilings (Ryser permanent of the biadjacency matrix)."""
    if len(region.removed_left) != len(region.removed_right):
        return 0
    return ryser_permanent(biadjacency(region), limit)


# Hexagonal faces: F(p) holds lefts p, p+(0,1), p+(-1,1) and rights p, p+(-1,1), p+(-1,0).
# Edges are named (left, stencil offset) so multi-edges stay distinct.
# dual steps F(p) -> F(p + step), crossing the edge (p + left shift, offset)
_DUAL_STEPS = (
    ((-1, 0), (-1, 1), (0, -1)),
    ((-1, 1), (-1, 1), (0, 0)),
    ((0, -1), (0, 0), (-1, 0)),
    ((0, 1), (0, 1), (-1, 0)),
    ((1, -1), (0, 0), (0, 0)),
    ((1, 0), (0, 1), (0, -1)),
)


def _string(u: tuple[int, int], v: tuple[int, int], N: int) -> list:
    """Edges crossed by a dual path from F(u) to F(v) that stays inside the fundamental domain."""
    prev: dict = {u: None}
    queue = deque([u])
    while queue:
        f = queue.popleft()
        if f == v:
            break
        for (dx, dy), (ex, ey), off in _DUAL_STEPS:
            g = (f[0] + dx, f[1] + dy)
            if 0 <= g[0] < N and 0 <= g[1] < N and g not in prev:
                prev[g] = (f, ((f[0] + ex) % N, (f[1] + ey) % N), off)
                queue.append(g)
    edges = []
    f = v
    while prev[f] is not None:
        f, left, off = prev[f]
        edges.append((left, off))
    return edges


def kasteleyn_dets(region: TorusRegion) -> dict:
    """det K_ab for the four boundary twists (a, b) in {0, 1}^2, as exact integers.

    Each removed left is paired with a removed right and the edge signs along
    a dual path (string) between them are flipped, so that alternating cycles
    around a single defect keep the Kasteleyn sign.
    """
    lefts, rights = region.lefts(), region.rights()
    col = {r: j for j, r in enumerate(rights)}
    n = region.N
    flip: dict = {}
    for u, v in zip(sorted(region.removed_left), sorted(region.removed_right)):
        for e in _string(u, v, n):
            flip[e] = -flip.get(e, 1)
    out = {}
    for a, b in product((0, 1), repeat=2):
        mat = [[0] * len(rights) for _ in lefts]
        for i, (x, y) in enumerate(lefts):
            for dx, dy in STENCIL:
                r = ((x + dx) % n, (y + dy) % n)
                if r not in col:
                    continue
                w = flip.get(((x, y), (dx, dy)), 1)
                if x + dx < 0:
                    w *= (-1) ** a
                if y + dy < 0:
                    w *= (-1) ** b
                mat[i][col[r]] += w
        out[(a, b)] = int(rational_det(mat))
    return out


# sign patterns eps_ab, keyed by N mod 2, with count = |sum eps_ab det K_ab| / 2
_KASTELEYN_SIGNS: dict = {}


def _calibration_regions() -> list[TorusRegion]:
    regs = []
    for N in range(1, 5):
        regs.append(TorusRegion(N))
        for x in range(N):
            for y in range(N):
                regs.append(TorusRegion(N, frozenset({(0, 0)}), frozenset({(x, y)})))
    return regs


def _sign_candidates(dets: dict, count: int) -> set:
    keys = sorted(dets)
    good = set()
    for eps in product((1, -1), repeat=4):
        if abs(sum(e * dets[k] for e, k in zip(eps, keys))) == 2 * count:
            good.add(eps)
    return good


def calibrate_kasteleyn() -> dict:
    """Fix one sign pattern per parity of N from exact Ryser counts on small tori.

    Every hole-free torus and every single left/right removal with N <= 4 must
    agree with the chosen pattern; otherwise this raises. The result is cached.
    """
    if _KASTELEYN_SIGNS:
        return dict(_KASTELEYN_SIGNS)
    cands: dict = {0: None, 1: None}
    for reg in _calibration_regions():
        ok = _sign_candidates(kasteleyn_dets(reg), count_tilings(reg))
        # a global sign flip is absorbed by the absolute value
        ok |= {tuple(-e for e in eps) for eps in ok}
        p = reg.N % 2
        cands[p] = ok if cands[p] is None else cands[p] & ok
        if not cands[p]:
            raise RuntimeError(f"Kasteleyn calibration failed at N={reg.N}")
    for p, c in cands.items():
        _KASTELEYN_SIGNS[p] = max(c)
    return dict(_KASTELEYN_SIGNS)


def count_tilings_kasteleyn(region: TorusRegion) -> int:
    """Count via four twisted Kasteleyn determinants with calibrated signs."""
    if len(region.removed_left) != len(region.removed_right):
        return 0
    eps = calibrate_kasteleyn()[region.N % 2]
    dets = kasteleyn_dets(region)
    val = sum(e * dets[k] for e, k in zip(eps, sorted(dets)))
    if val % 2:
        raise RuntimeError("Kasteleyn combination is odd; sign calibration does not apply")
    return abs(val) // 2


def omega1_estimate(
    config: HoleConfig,
    Ns: Iterable[int],
    method: str = "ryser",
    extra_left=(),
    extra_right=(),
) -> list[tuple[int, int, int, Fraction]]:
    """Rows (N, count_with_holes, count_free, ratio) for each torus size N."""
    counters = {
        "ryser": count_tilings,
        "kasteleyn": count_tilings_kasteleyn,
        "frontier": frontier_count,
    }
    if method not in counters:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(counters)}")
    counter = counters[method]
    pts = config.lefts() | config.rights() | set(extra_left) | set(extra_right)
    out = []
    for N in Ns:
        reg = TorusRegion.from_config(N, config, extra_left, extra_right)
        if len(reg.removed_left) != len(reg.removed_right):
            raise ValueError("configuration must have total charge zero")
        if _span(pts) + 2 > N:
            raise ValueError(f"configuration too large for N={N} (needs margin 2)")
        with_holes = counter(reg)
        free = counter(TorusRegion(N))
        out.append((N, with_holes, free, Fraction(with_holes, free)))
    return out


def _span(pts: set) -> int:
    if not pts:
        return 0
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return max(max(xs) - min(xs), max(ys) - min(ys)) + 1
