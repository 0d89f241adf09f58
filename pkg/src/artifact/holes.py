"""Monomer coordinates, side-2 triangular holes, charge, distance, and even-triangle expansion.

Coordinates use axes at polar angles -pi/3 (x) and +pi/3 (y). A pair (x, y)
names both a left- and a right-monomer, which share a vertical side. The left
(x, y) touches the rights (x, y), (x-1, y), (x, y-1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import as_rational

E = "E"
W = "W"


@dataclass(frozen=True, order=True)
class MonomerCoord:
    x: int
    y: int

    def __add__(self, other: "MonomerCoord") -> "MonomerCoord":
        return MonomerCoord(self.x + other.x, self.y + other.y)


@dataclass(frozen=True, order=True)
class Side2Hole:
    """Side-2 triangle pointing east (E) or west (W), named by its central monomer."""

    orientation: str
    x: int
    y: int

    def __post_init__(self):
        if self.orientation not in (E, W):
            raise ValueError(f"orientation must be 'E' or 'W', got {self.orientation!r}")
        object.__setattr__(self, "x", int(self.x))
        object.__setattr__(self, "y", int(self.y))

    @property
    def center(self) -> MonomerCoord:
        return MonomerCoord(self.x, self.y)

    @property
    def charge(self) -> int:
        return 2 if self.orientation == E else -2

    def lefts(self) -> set[tuple[int, int]]:
        x, y = self.x, self.y
        if self.orientation == E:
            return {(x, y)}
        return {(x, y), (x, y + 1), (x + 1, y)}

    def rights(self) -> set[tuple[int, int]]:
        x, y = self.x, self.y
        if self.orientation == E:
            return {(x, y), (x - 1, y), (x, y - 1)}
        return {(x, y)}

    def reduced_rights(self) -> list[tuple[int, int]]:
        """Monomers left after discarding the forced central lozenge (E only)."""
        return [(self.x - 1, self.y), (self.x, self.y - 1)] if self.orientation == E else []

    def reduced_lefts(self) -> list[tuple[int, int]]:
        return [(self.x, self.y + 1), (self.x + 1, self.y)] if self.orientation == W else []

    def translated(self, dx: int, dy: int) -> "Side2Hole":
        return Side2Hole(self.orientation, self.x + dx, self.y + dy)


@dataclass(frozen=True)
class HoleConfig:
    holes: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "holes", tuple(self.holes))
        seen_l: set = set()
        seen_r: set = set()
        for h in self.holes:
            if not isinstance(h, Side2Hole):
                raise TypeError("HoleConfig holds Side2Hole instances")
            if seen_l & h.lefts() or seen_r & h.rights():
                raise ValueError(f"hole {h} overlaps another hole")
            seen_l |= h.lefts()
            seen_r |= h.rights()

    @property
    def east(self) -> list[Side2Hole]:
        return [h for h in self.holes if h.orientation == E]

    @property
    def west(self) -> list[Side2Hole]:
        return [h for h in self.holes if h.orientation == W]

    @property
    def m(self) -> int:
        return len(self.east)

    @property
    def n(self) -> int:
        return len(self.west)

    def lefts(self) -> set[tuple[int, int]]:
        return set().union(*(h.lefts() for h in self.holes))

    def rights(self) -> set[tuple[int, int]]:
        return set().union(*(h.rights() for h in self.holes))

    def translated(self, dx: int, dy: int) -> "HoleConfig":
        return HoleConfig(h.translated(dx, dy) for h in self.holes)

    def to_json(self) -> dict:
        return {"holes": [{"kind": h.orientation, "x": h.x, "y": h.y} for h in self.holes]}

    @classmethod
    def from_json(cls, data) -> "HoleConfig":
        """Parse ``{"holes": [...]}`` with side-2 entries or even-side triangle entries."""
        if not isinstance(data, dict) or not isinstance(data.get("holes"), list):
            raise ValueError('config must be an object with a "holes" list')
        holes: list[Side2Hole] = []
        for idx, item in enumerate(data["holes"]):
            where = f"holes[{idx}]"
            if not isinstance(item, dict) or "kind" not in item:
                raise ValueError(f"{where}: expected an object with a 'kind' field")
            kind = item["kind"]
            try:
                if kind in (E, W):
                    holes.append(Side2Hole(kind, _as_int(item["x"]), _as_int(item["y"])))
                elif kind == "triangle":
                    anchor = item["anchor"]
                    if not isinstance(anchor, (list, tuple)) or len(anchor) != 2:
                        raise ValueError("anchor must be a pair [x, y]")
                    holes.extend(expand_even_triangle(
                        item["orientation"], _as_int(item["side"]), (_as_int(anchor[0]), _as_int(anchor[1]))))
                else:
                    raise ValueError(f"unknown kind {kind!r} (expected 'E', 'W' or 'triangle')")
            except KeyError as exc:
                raise ValueError(f"{where}: missing field {exc.args[0]!r}") from None
            except (TypeError, ValueError) as exc:
                raise ValueError(f"{where}: {exc}") from None
        return cls(holes)


def _as_int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise TypeError(f"expected an integer, got {v!r}")
    return v


def charge(config: HoleConfig) -> int:
    return sum(h.charge for h in config.holes)


def euclid_dist(p: MonomerCoord, q: MonomerCoord) -> float:
    du, dv = p.x - q.x, p.y - q.y
    return math.sqrt(du * du + du * dv + dv * dv)


def dist2(du, dv):
    """Squared distance u^2 + uv + v^2 for a coordinate difference (exact for rationals)."""
    return du * du + du * dv + dv * dv


def expand_even_triangle(orientation: str, side: int, anchor) -> list[Side2Hole]:
    """Side-2s triangle as s side-2 holes centred at anchor + k(1, 1), k < s.

    Adjacent holes force the remaining lozenges, so the union plus forced
    tiles is exactly the big triangle.
    """
    if orientation not in (E, W):
        raise ValueError(f"orientation must be 'E' or 'W', got {orientation!r}")
    side = int(side)
    if side <= 0 or side % 2:
        raise ValueError(
            f"triangle side must be positive and even, got {side}; odd-side triangles carry odd"
            " charge and fall outside the supported model"
        )
    ax, ay = (anchor.x, anchor.y) if isinstance(anchor, MonomerCoord) else anchor
    return [Side2Hole(orientation, ax + k, ay + k) for k in range(side // 2)]


def triangle_cells(orientation: str, side: int, anchor) -> tuple[set, set]:
    """Left and right unit triangles of the side-2s triangle that expand_even_triangle names."""
    holes = expand_even_triangle(orientation, side, anchor)
    s = side // 2
    if orientation == E:
        ax, ay = holes[0].x, holes[0].y
        lefts = {(ax + u, ay + v) for u in range(-s, s) for v in range(-s, s) if u + v >= 0}
        rights = {(ax + u, ay + v) for u in range(-s - 1, s) for v in range(-s - 1, s) if u + v >= -1}
        return lefts, rights
    # a W triangle is the mirror image of an E triangle anchored at the mirrored east end
    east_end = holes[-1]
    el, er = triangle_cells(E, side, (-east_end.y, -east_end.x))
    return {(-y, -x) for x, y in er}, {(-y, -x) for x, y in el}


def mirror(config: HoleConfig) -> HoleConfig:
    """Reflect across the vertical line through the origin: (x, y) -> (-y, -x), E <-> W."""
    return HoleConfig(Side2Hole(W if h.orientation == E else E, -h.y, -h.x) for h in config.holes)


@dataclass(frozen=True)
class MultiholeSpec:
    """Collinear side-2 holes at offset + (a_i, q a_i)."""

    orientation: str
    q: Fraction
    positions: tuple
    offset: tuple = (0, 0)

    def __post_init__(self):
        if self.orientation not in (E, W):
            raise ValueError(f"orientation must be 'E' or 'W', got {self.orientation!r}")
        q = as_rational(self.q)
        pos = tuple(int(a) for a in self.positions)
        if not pos:
            raise ValueError("a multihole needs at least one position")
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise ValueError("positions must be strictly increasing")
        if any((q * a).denominator != 1 for a in pos):
            raise ValueError("q * a_i must be an integer for every position")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "offset", (int(self.offset[0]), int(self.offset[1])))

    @property
    def size(self) -> int:
        return len(self.positions)

    @property
    def charge(self) -> int:
        return 2 * self.size if self.orientation == E else -2 * self.size

    def holes(self, scale: int = 1) -> list[Side2Hole]:
        ox, oy = self.offset
        return [
            Side2Hole(self.orientation, scale * ox + a, scale * oy + int(self.q * a))
            for a in self.positions
        ]


def config_from_multiholes(specs: Iterable[MultiholeSpec], scale: int = 1) -> HoleConfig:
    holes: list[Side2Hole] = []
    for s in specs:
        holes.extend(s.holes(scale))
    return HoleConfig(holes)
