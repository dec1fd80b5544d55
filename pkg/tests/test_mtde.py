import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcadirent import (Direction, LocalRule, mtde_case_theorem, mtde_circle_curve,
                       mtde_uniform, normalize, parse_rule, scale, tde_curve)
from lcadirent.mtde import integer_direction_entropy, sector_boundaries
from lcadirent.rule import arccot

ln = math.log


def on_circle(t):
    return Direction.from_angle(t)


# -- basic values ----------------------------------------------------------------

def test_horizontal_is_shift_entropy(rules):
    for r in rules.values():
        assert mtde_uniform(r, (1, 0)) == pytest.approx(ln(r.m), abs=1e-12)


def test_mod23_vertical(rules):
    f = rules["m23"]
    assert Direction(0, 1).z(f) == (-2, 3)
    assert mtde_uniform(f, (0, 1)) == pytest.approx(5 * ln(23), abs=1e-12)
    assert mtde_case_theorem(f, (0, 1)).case == 3


def test_zero_direction_rejected(rules):
    with pytest.raises(ValueError):
        mtde_uniform(rules["m23"], (0, 0))
    with pytest.raises(ValueError):
        scale((1, 2), 0)


def test_scale(rules):
    f = rules["m11"]
    assert mtde_uniform(f, scale((0, 1), 2)) == pytest.approx(2 * mtde_uniform(f, (0, 1)))
    v = Direction(3, 4)
    assert mtde_uniform(f, scale(v, 0.2)) == pytest.approx(mtde_uniform(f, v) / 5)
    assert integer_direction_entropy(f, 0, 2) == pytest.approx(10 * ln(11))


# -- the three worked examples ---------------------------------------------------------

def test_mod23_curve(rules):
    f = rules["m23"]
    a, b = arccot(2), arccot(-3)
    for t in np.linspace(0, math.pi, 301):
        s, c = math.sin(t), math.cos(t)
        if t <= a:
            want = abs(c + 3 * s) * ln(23)
        elif t < b:
            want = 5 * abs(s) * ln(23)
        else:
            want = abs(c - 2 * s) * ln(23)
        assert mtde_uniform(f, on_circle(t)) == pytest.approx(want, abs=1e-12)
    bps = sector_boundaries(f)
    assert any(abs(x - 0.4636) < 1e-3 for x in bps)
    assert any(abs(x - b) < 1e-12 for x in bps)


def test_mod23_printed_upper_endpoint_is_not_a_root(rules):
    # the printed endpoint 2.67795 is pi - arccot 2; z_r vanishes at arccot(-3)
    f = rules["m23"]
    assert arccot(-3) == pytest.approx(2.81984, abs=1e-5)
    assert math.pi - arccot(2) == pytest.approx(2.67795, abs=1e-5)
    t = 2.75
    s, c = math.sin(t), math.cos(t)
    assert mtde_uniform(f, on_circle(t)) == pytest.approx(5 * s * ln(23))
    assert abs(mtde_uniform(f, on_circle(t)) - abs(c - 2 * s) * ln(23)) > 0.1


def test_mod19_case_two(rules):
    f = rules["m19"]
    hits = 0
    for t in np.linspace(0, 2 * math.pi, 721):
        cv = mtde_case_theorem(f, on_circle(t))
        if cv.case == 2:
            hits += 1
            want = abs(math.cos(t) - 3 * math.sin(t)) * ln(19)
            assert cv.value == pytest.approx(want, abs=1e-12)
            assert mtde_uniform(f, on_circle(t)) == pytest.approx(want, abs=1e-12)
    assert hits > 300


def test_mod19_differs_outside_case_two(rules):
    f = rules["m19"]
    t = 0.1  # z_l, z_r both positive with z_r larger
    assert mtde_case_theorem(f, on_circle(t)).case is None
    assert mtde_uniform(f, on_circle(t)) == pytest.approx(math.cos(t) * ln(19))


@pytest.mark.parametrize("reading, r", [("positions", 5), ("printed", 7)])
def test_mod11_readings(rules, reading, r):
    f = rules["m11"]
    ts = np.linspace(0, math.pi / 2, 91)
    case_vals = [mtde_case_theorem(f, on_circle(t)) for t in ts]
    assert all(cv.case == 1 for cv in case_vals)
    formula = [abs(math.cos(t) + r * math.sin(t)) * ln(11) for t in ts]
    diff = max(abs(cv.value - w) for cv, w in zip(case_vals, formula))
    if reading == "positions":
        assert diff <= 1e-12
    else:
        # 7 is the coefficient of x_5, not its index
        assert diff == pytest.approx(2 * ln(11), abs=1e-9)


def test_non_permutative_has_no_case():
    assert mtde_case_theorem("2x[0]+2x[1] % 4", (0, 1)) == (None, None)


# -- circle curve -------------------------------------------------------------------------

def test_circle_curve_period_pi(rules):
    for name in ("m11", "m19", "m23"):
        s = mtde_circle_curve(rules[name], 721)
        ts, hs = s[:, 0], s[:, 1]
        assert ts[0] == 0 and ts[-1] == pytest.approx(2 * math.pi)
        for t, h in zip(ts[:50], hs[:50]):
            assert mtde_uniform(rules[name], on_circle(t + math.pi)) == pytest.approx(h, abs=1e-12)


def test_circle_curve_includes_boundaries(rules):
    s = mtde_circle_curve(rules["m23"])
    for b in sector_boundaries(rules["m23"]):
        assert np.sum(s[:, 0] == b) == 1
    assert len(s) == 721 + 4


def test_circle_curve_rejects_tiny():
    with pytest.raises(ValueError):
        mtde_circle_curve("1x[0] % 2", 1)


# -- properties --------------------------------------------------------------------------

rules_st = st.builds(
    lambda m, l, c: normalize(LocalRule(m, l, tuple(c))),
    st.integers(2, 30), st.integers(-3, 2),
    st.lists(st.integers(1, 10**4), min_size=1, max_size=5))

vec = st.tuples(st.floats(-5, 5), st.floats(-5, 5)).filter(lambda v: v != (0, 0))


@settings(max_examples=200, deadline=None)
@given(rules_st, vec, st.sampled_from([-3, -2, -1, 1, 2, 3]))
def test_homogeneity(rule, v, alpha):
    h = mtde_uniform(rule, v)
    assert mtde_uniform(rule, scale(v, alpha)) == pytest.approx(abs(alpha) * h, rel=1e-12, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(rules_st, vec)
def test_antipodal_and_case_consistency(rule, v):
    h = mtde_uniform(rule, v)
    assert mtde_uniform(rule, -Direction(*v)) == pytest.approx(h, rel=1e-12, abs=1e-12)
    cv = mtde_case_theorem(rule, v)
    if cv.case is not None:
        assert abs(cv.value - h) <= 1e-12 * max(1, h)


@st.composite
def unit_end_rules(draw):
    p = draw(st.sampled_from([2, 3, 5, 7, 11, 13, 23]))
    l = draw(st.integers(-3, 0))
    r = draw(st.integers(0, 3))
    inner = draw(st.lists(st.integers(0, p - 1), min_size=r - l + 1, max_size=r - l + 1))
    inner[0] = draw(st.integers(1, p - 1))
    inner[-1] = draw(st.integers(1, p - 1))
    return LocalRule(p, l, tuple(inner))


@settings(max_examples=200, deadline=None)
@given(unit_end_rules(), st.floats(0, math.pi))
def test_mtde_equals_tde(rule, t):
    assert abs(mtde_uniform(rule, on_circle(t)) - tde_curve(rule)(t)) <= 1e-12


def test_mtde_equals_tde_examples(rules):
    for name in ("m5", "m23"):
        ts = np.linspace(0, math.pi, 500)
        tde = tde_curve(rules[name])(ts)
        mt = [mtde_uniform(rules[name], on_circle(t)) for t in ts]
        assert np.max(np.abs(tde - mt)) <= 1e-12
