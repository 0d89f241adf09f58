import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.correlation import reduced_monomers
from artifact.holes import (E, W, HoleConfig, MonomerCoord, MultiholeSpec, Side2Hole, charge, config_from_multiholes,
                            euclid_dist, expand_even_triangle, mirror, triangle_cells)
from artifact.torus import TorusRegion, count_tilings, count_tilings_kasteleyn


def test_charge_examples():
    assert charge(HoleConfig([Side2Hole(E, 0, 0)])) == 2
    assert charge(HoleConfig([Side2Hole(E, 0, 0), Side2Hole(W, 5, 0)])) == 0
    three_one = [Side2Hole(E, 0, 0), Side2Hole(E, 4, 0), Side2Hole(E, 8, 0), Side2Hole(W, 0, 6)]
    assert charge(HoleConfig(three_one)) == 4


def test_distance_examples():
    assert euclid_dist(MonomerCoord(0, 0), MonomerCoord(3, 0)) == 3
    assert abs(euclid_dist(MonomerCoord(0, 0), MonomerCoord(3, 3)) - math.sqrt(27)) < 1e-12
    assert euclid_dist(MonomerCoord(1, 2), MonomerCoord(1, 2)) == 0


def test_hole_cells():
    e = Side2Hole(E, 2, 3)
    assert e.lefts() == {(2, 3)} and e.rights() == {(2, 3), (1, 3), (2, 2)}
    w = Side2Hole(W, 2, 3)
    assert w.rights() == {(2, 3)} and w.lefts() == {(2, 3), (2, 4), (3, 3)}
    with pytest.raises(ValueError):
        Side2Hole("N", 0, 0)


def test_overlap_rejected():
    with pytest.raises(ValueError, match="overlaps"):
        HoleConfig([Side2Hole(E, 0, 0), Side2Hole(E, 1, 0)])


def test_triangle_expansion():
    assert expand_even_triangle(E, 2, (4, 1)) == [Side2Hole(E, 4, 1)]
    assert expand_even_triangle(E, 6, (0, 0)) == [Side2Hole(E, k, k) for k in range(3)]
    assert expand_even_triangle(W, 4, (3, 0)) == [Side2Hole(W, 3, 0), Side2Hole(W, 4, 1)]
    with pytest.raises(ValueError, match="odd"):
        expand_even_triangle(E, 3, (0, 0))
    with pytest.raises(ValueError):
        expand_even_triangle(E, 0, (0, 0))


@given(st.sampled_from([E, W]), st.integers(1, 5), st.integers(-9, 9), st.integers(-9, 9))
def test_triangle_holes_disjoint_collinear(orient, s, ax, ay):
    holes = expand_even_triangle(orient, 2 * s, (ax, ay))
    HoleConfig(holes)  # raises on overlap
    assert all(b.x - a.x == 1 and b.y - a.y == 1 for a, b in zip(holes, holes[1:]))
    lefts, rights = triangle_cells(orient, 2 * s, (ax, ay))
    cfg = HoleConfig(holes)
    assert cfg.lefts() <= lefts and cfg.rights() <= rights
    assert len(rights) - len(lefts) == (2 * s if orient == E else -2 * s)
    assert len(lefts) + len(rights) == (2 * s) ** 2


def test_triangle_union_plus_forced_tiles_is_triangle():
    cfg = HoleConfig(expand_even_triangle(E, 4, (0, 0)) + expand_even_triangle(W, 4, (4, 1)))
    el, er = triangle_cells(E, 4, (0, 0))
    wl, wr = triangle_cells(W, 4, (4, 1))
    whole = TorusRegion(8, frozenset(el | wl), frozenset(er | wr))
    assert count_tilings_kasteleyn(TorusRegion.from_config(8, cfg)) == count_tilings_kasteleyn(whole)


def test_side2_membership_against_torus():
    # removing whole holes equals removing only the reduced monomers (forced central lozenges)
    cfg = HoleConfig([Side2Hole(E, 1, 1), Side2Hole(W, 3, 2)])
    lefts, rights = reduced_monomers(cfg)
    for N in (4, 5):
        full = count_tilings(TorusRegion.from_config(N, cfg))
        red = count_tilings(TorusRegion(N, frozenset(lefts), frozenset(rights)))
        assert full == red > 0


@given(st.lists(st.tuples(st.sampled_from([E, W]), st.integers(-20, 20), st.integers(-20, 20)), max_size=4))
def test_mirror_properties(items):
    try:
        cfg = HoleConfig(Side2Hole(*it) for it in items)
    except ValueError:
        return
    assert mirror(mirror(cfg)) == cfg
    assert charge(mirror(cfg)) == -charge(cfg)


def test_mirror_single():
    m = mirror(HoleConfig([Side2Hole(E, 0, 0)]))
    assert m.holes == (Side2Hole(W, 0, 0),)
    assert charge(m) == -2


def test_json_round_trip():
    cfg = HoleConfig([Side2Hole(E, 0, 0), Side2Hole(W, 4, -3)])
    assert HoleConfig.from_json(cfg.to_json()) == cfg


def test_json_triangle_and_errors():
    cfg = HoleConfig.from_json({"holes": [{"kind": "triangle", "orientation": "E", "side": 6, "anchor": [0, 0]}]})
    assert len(cfg.holes) == 3
    with pytest.raises(ValueError, match=r"holes\[0\]"):
        HoleConfig.from_json({"holes": [{"kind": "triangle", "orientation": "E", "side": 3, "anchor": [0, 0]}]})
    with pytest.raises(ValueError, match=r"holes\[1\].*'y'"):
        HoleConfig.from_json({"holes": [{"kind": "E", "x": 0, "y": 0}, {"kind": "W", "x": 3}]})
    with pytest.raises(ValueError):
        HoleConfig.from_json({"holes": [{"kind": "E", "x": 0.5, "y": 0}]})
    with pytest.raises(ValueError):
        HoleConfig.from_json([])


def test_multihole_spec():
    sp = MultiholeSpec(E, 4, (0, 3), (3, 0))
    assert sp.size == 2 and sp.charge == 4
    assert sp.holes(2) == [Side2Hole(E, 6, 0), Side2Hole(E, 9, 12)]
    assert len(config_from_multiholes([sp]).holes) == 2
    with pytest.raises(ValueError):
        MultiholeSpec(E, 1, (2, 1))
    with pytest.raises(ValueError):
        MultiholeSpec(E, "1/2", (1,))
    with pytest.raises(ValueError):
        MultiholeSpec(E, 1, ())
