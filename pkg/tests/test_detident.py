import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact import detident as di
from artifact.diffops import finite_diff_pow
from artifact.exactnum import rational_det

F = Fraction
seeds = st.integers(0, 10**6)


def spec(**kw):
    base = dict(s=[1], t=[1], x=[F(1, 2)], y=[F(-1, 3)], z=[F(2)], w=[F(5, 4)], zeta=F(3, 2))
    base.update(kw)
    return di.BlockSpec(**base)


def test_spec_validation():
    with pytest.raises(ValueError):
        spec(zeta=1)
    with pytest.raises(ValueError):
        spec(s=[1], t=[2])
    with pytest.raises(ValueError):
        spec(s=[0])
    with pytest.raises(ValueError):
        spec(x=[1, 2])
    with pytest.raises(ValueError):
        spec(qs=[1])
    sp = spec(s=[2, 1], t=[1], x=[0, 1], y=[0, 2])
    assert (sp.m, sp.n, sp.S, sp.T) == (2, 1, 3, 1)


def test_two_by_two_pair():
    sp = spec(q=F(7, 3))
    m = di.build_Mpp(sp)
    assert len(m) == 2 and m[0][0] == m[1][1]
    dx, dy, z = sp.x[0] - sp.z[0], sp.y[0] - sp.w[0], sp.zeta
    expect = (z**2 - z**-2) ** 2 / ((dx - z * dy) * (dx - dy / z))
    assert rational_det(m) == expect == di.formula_Mpp(sp)


def test_b_block_k0():
    z = F(5, 3)
    sp = spec(t=[], z=[], w=[], zeta=z)
    m = di.build_Mpp(sp)
    # X21 = zeta^2 zeta^-1 - zeta^-2 zeta
    assert m == [[1 / z - z, z**-3 - z**3], [z - 1 / z, 1 / z - z]]


def test_per_hole_slope_entry():
    sp = spec(s=[2], t=[2], qs=[F(2)], qps=[F(-3, 5)])
    m = di.build_Mpp(sp)
    z = sp.zeta
    u, v = sp.z[0] - sp.x[0], sp.w[0] - sp.y[0]
    plus = (1 - 2 * z) * (1 - F(-3, 5) * z) / (u - v * z) ** 3
    minus = (1 - 2 / z) * (1 - F(-3, 5) / z) / (u - v / z) ** 3
    assert m[2][2] == comb(2, 1) * (plus / z - z * minus)
    assert rational_det(m) == di.formula_Mpp(sp)


def test_singular_parameters_name_factor():
    with pytest.raises(ZeroDivisionError, match="zeta"):
        di.build_Mpp(spec(z=[F(1, 2)], w=[F(-1, 3)]))
    with pytest.raises(ZeroDivisionError, match="E1/W1"):
        di.formula_Mpp(spec(z=[F(1, 2)], w=[F(-1, 3)]))


@given(seeds)
def test_mpp_product(seed):
    sp = di.random_spec(random.Random(seed), 4)
    assert rational_det(di.build_Mpp(sp)) == di.formula_Mpp(sp)


@given(seeds)
def test_mpp_product_per_hole(seed):
    sp = di.random_spec(random.Random(seed), 4, slopes="per-hole")
    assert rational_det(di.build_Mpp(sp)) == di.formula_Mpp(sp)


def test_q_degree():
    rng = random.Random(11)
    for _ in range(4):
        sp = di.random_spec(rng, 4)
        # each (q - zeta)(q - zeta^-1) factor has q-degree 2
        deg = 2 * (sum(comb(a, 2) for a in sp.s) + sum(comb(b, 2) for b in sp.t))

        def det_at(q):
            return rational_det(di.build_Mpp(di.replace(sp, q=F(q, 7) + F(1, 13))))

        assert finite_diff_pow(det_at, deg + 1, 0) == 0
        assert finite_diff_pow(det_at, deg, 0) != 0


def test_no_q_dependence_for_unit_sizes():
    sp = spec(s=[1, 1], t=[1, 1], x=[0, 3], y=[1, 2], z=[F(1, 2), 5], w=[2, F(-1, 4)])
    vals = {rational_det(di.build_Mpp(di.replace(sp, q=F(q)))) for q in (-3, 0, 2, 9)}
    assert len(vals) == 1


@given(seeds)
def test_zeta_inversion_negates_entries(seed):
    sp = di.random_spec(random.Random(seed), 4)
    flipped = di.replace(sp, zeta=1 / sp.zeta)
    a, b = di.build_Mpp(sp), di.build_Mpp(flipped)
    assert all(x == -y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def test_n_examples():
    x, z = F(2, 3), F(5)
    assert di.build_N([1], [1], [x], [z]) == [[1 / (-x - z)]]
    assert di.formula_N([1], [1], [x], [z]) == 1 / (-x - z)
    xs, zs = [F(1), F(3, 2)], [F(2), F(-7, 3)]
    cauchy = [[1 / (-a - b) for b in zs] for a in xs]
    assert di.build_N([1, 1], [1, 1], xs, zs) == cauchy
    classical = (xs[1] - xs[0]) * (zs[1] - zs[0]) / ((-xs[0] - zs[0]) * (-xs[0] - zs[1]) * (-xs[1] - zs[0]) * (-xs[1] - zs[1]))
    assert rational_det(cauchy) == classical == di.formula_N([1, 1], [1, 1], xs, zs)
    vs = [F(1), F(2), F(-3), F(1, 2)]
    vand = 1
    for i in range(4):
        for j in range(i + 1, 4):
            vand *= vs[j] - vs[i]
    assert rational_det(di.build_N([1] * 4, [], vs, [])) == vand == di.formula_N([1] * 4, [], vs, [])


@given(seeds, st.sampled_from(["any", "cauchy", "vandermonde"]))
def test_n_product(seed, shape):
    s, t, x, z = di._random_n_case(random.Random(seed), 6, shape)
    assert rational_det(di.build_N(s, t, x, z)) == di.formula_N(s, t, x, z)


def test_n_errors():
    with pytest.raises(ValueError):
        di.build_N([1], [2], [1], [1])
    with pytest.raises(ZeroDivisionError):
        di.build_N([1], [1], [2], [-2])


def test_m0h_reduces_at_h0():
    rng = random.Random(5)
    for _ in range(5):
        sp = di.random_spec(rng, 4, slopes="zero")
        assert di.build_M0h(sp) == di.build_Mpp(sp)
        assert di.formula_M0h(sp) == di.formula_Mpp(sp)


def test_m0h_two_by_two():
    for h in (F(0), F(1), F(-7, 2)):
        sp = spec(h=h)
        dx, dy, z = sp.x[0] - sp.z[0], sp.y[0] - sp.w[0], sp.zeta
        expect = (z**-2 - z**2) ** 2 / ((dx - z * dy) * (dx - dy / z))
        assert rational_det(di.build_M0h(sp)) == expect


@given(seeds)
def test_m0h_product(seed):
    sp = di.random_spec(random.Random(seed), 4, slopes="zero", h=True)
    assert rational_det(di.build_M0h(sp)) == di.formula_M0h(sp)


def test_dm0_is_d_times_m0():
    rng = random.Random(2)
    for _ in range(5):
        sp = di.random_spec(rng, 4, slopes="zero", h=True)
        d = di.d_factor(sp)
        assert di.build_dM0(sp) == [[d * e for e in row] for row in di.build_M0h(sp)]


def test_row_pair_k0_pattern():
    sp = spec(s=[1, 1], t=[], x=[0, 1], y=[2, 5], z=[], w=[], h=F(1, 2))
    sp = di.admissible(sp, di.ROW_PAIR, 0, 1, 0)
    axis, vec = di.vanishing_combination(di.ROW_PAIR, sp, 0, 1)
    z2 = sp.zeta**2
    assert axis == "row" and vec == [-1, z2, 1, -z2]
    assert not any(di.apply_combination(di.build_dM0(sp), axis, vec))


def test_col_pair_l0_pattern():
    sp = di.admissible(spec(h=F(1, 3)), di.COL_PAIR, 0, 0, 0, sign=-1)
    axis, vec = di.vanishing_combination(di.COL_PAIR, sp, 0, 0, sign=-1)
    assert axis == "col" and vec == [1, -sp.zeta**-2]
    assert not any(di.apply_combination(di.build_dM0(sp), axis, vec))


def test_vanishing_constraint_errors():
    sp = spec(s=[1, 1], t=[1], x=[0, 1], y=[2, 5], h=F(1, 2))
    with pytest.raises(ValueError, match="does not hold"):
        di.vanishing_combination(di.ROW_PAIR, sp, 0, 1)
    with pytest.raises(ValueError, match="does not hold"):
        di.vanishing_combination(di.COL_PAIR, sp, 0, 0)
    with pytest.raises(ValueError):
        di.vanishing_combination("other", sp, 0, 0)
    with pytest.raises(ValueError):
        di.vanishing_combination(di.COL_SHIFT, sp, 0, 0)  # needs t_j >= 2
    with pytest.raises(ValueError):
        di.vanishing_combination(di.ROW_PAIR, sp, 0, 1, sign=2)
    with pytest.raises(ValueError):
        di.apply_combination([[1]], "diag", [1])


@pytest.mark.parametrize("kind", di.VANISHING_KINDS)
def test_vanishing_random(kind):
    rep = di.verify_vanishing(kind, trials=8, seed=3)
    assert rep["failures"] == 0


def test_counters():
    assert di.n1_count(0, 3, 2) == 2
    assert di.n2_count(1, 3, 2) == 2
    assert di.verify_counters()["failures"] == 0


def test_pochhammer():
    assert di.poch(3, 2) == 12
    assert di.poch_h(F(1, 2), 3, 2) == F(1, 2) * F(5, 2) * F(9, 2)
    assert di.poch_h(5, 3) == 125
    with pytest.raises(ValueError):
        di.poch_h(1, -1)


def test_gauss_examples():
    assert di.gauss_2f1_unit(0, F(7, 3), F(1, 2)) == 1
    assert di.gauss_2f1_unit(-2, 1, 3) == F(1, 2) == di.gauss_closed_form(-2, 1, 3)
    assert di.terminating_2f1_closed(2, 0, 2) == F(1, 2)
    with pytest.raises(ValueError):
        di.gauss_2f1_unit(F(1, 2), F(1, 3), 1)


def test_saalschutz_example():
    assert di.saalschutz_lhs(3, F(1, 2), F(2, 3), F(5, 7)) == di.saalschutz_rhs(3, F(1, 2), F(2, 3), F(5, 7))


def test_hypergeometric_suite():
    reports = di.hyperg_identity_suite(trials=40, seed=9)
    assert {r["identity"] for r in reports} == set(di.HYPERGEOMETRIC_CHECKS)
    assert all(r["failures"] == 0 and r["trials"] == 40 for r in reports)


def test_run_suite():
    for name in di.SUITES:
        for rep in di.run_suite(name, trials=3, seed=1):
            assert rep["failures"] == 0
            assert set(rep) == {"identity", "trials", "failures", "seed"}
    with pytest.raises(ValueError):
        di.run_suite("nope")


def test_suites_deterministic():
    assert di.run_suite("mpp", 5, 4) == di.run_suite("mpp", 5, 4)
