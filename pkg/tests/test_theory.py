"""Defect constant, cosine bump, min-average identity, bound evaluators."""
import math

import numpy as np
import pytest

from charmimic import (
    BoundValue,
    MinAverageParams,
    cosine_bump,
    cosine_bump_mean,
    cosine_bump_mean_numeric,
    major_arc_bound,
    mean_value_bound,
    min_average_closed,
    min_average_direct,
    min_average_floor,
    minor_arc_bound,
    root_approx_defect,
    smooth_expsum_bound,
)


def defect_by_integration(g, points=1_000_000):
    # independent route: midpoint-rule average over the rotation of the
    # nearest-root shortfall min_j (1 - cos(2 pi (j/g + w)))
    w = (np.arange(points) + 0.5) / points
    shortfall = np.min(
        [1.0 - np.cos(2 * np.pi * (j / g + w)) for j in range(g)], axis=0
    )
    return float(np.mean(shortfall))


def test_defect_reference_value():
    assert root_approx_defect(3) == pytest.approx(0.17300665686731198, abs=1e-15)
    assert round(root_approx_defect(3), 3) == 0.173


def test_defect_matches_integration():
    for g in (3, 5, 9):
        assert root_approx_defect(g) == pytest.approx(
            defect_by_integration(g), abs=1e-8
        )


def test_defect_decreases_to_zero():
    vals = [root_approx_defect(g) for g in range(3, 100, 2)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 2e-4
    assert vals[-1] > 0


def test_defect_validation():
    for bad in (1, 2, 4, 10):
        with pytest.raises(ValueError):
            root_approx_defect(bad)


def test_bump_endpoint_values():
    for n in (6, 10, 30):
        assert cosine_bump(n, 0.0) == pytest.approx(1.0, abs=1e-15)
        assert cosine_bump(n, 1.0) == pytest.approx(1.0, abs=1e-12)
        assert cosine_bump(n, 0.5) * math.cos(math.pi / n) == pytest.approx(
            1.0, abs=1e-12
        )


def test_bump_symmetry():
    for n in (6, 10, 30):
        for w in np.linspace(0.0, 0.5, 101):
            assert cosine_bump(n, w) == pytest.approx(
                cosine_bump(n, 1.0 - w), abs=1e-12
            )


def test_bump_concavity():
    for n in (6, 10, 30):
        grid = np.linspace(0.0, 1.0, 1000, endpoint=False)
        vals = np.array([cosine_bump(n, w) for w in grid])
        second = vals[:-2] - 2 * vals[1:-1] + vals[2:]
        assert np.max(second) <= 1e-12


def test_bump_mean_closed_vs_numeric():
    for n in (6, 10, 30):
        closed = cosine_bump_mean(n)
        assert closed == pytest.approx((n / math.pi) * math.tan(math.pi / n), abs=1e-15)
        assert cosine_bump_mean_numeric(n) == pytest.approx(closed, abs=1e-6)


def test_bump_periodicity_and_validation():
    assert cosine_bump(6, 2.3) == pytest.approx(cosine_bump(6, 0.3), abs=1e-12)
    with pytest.raises(ValueError):
        cosine_bump(5, 0.1)
    with pytest.raises(ValueError):
        cosine_bump_mean(4)


def test_min_average_hand_case():
    p = MinAverageParams(g=3, k=2, theta=0.0)
    assert min_average_closed(p) == pytest.approx(0.25, abs=1e-12)
    assert min_average_direct(p) == pytest.approx(0.25, abs=1e-12)


def test_min_average_identity_sample():
    for g in (3, 5, 9):
        for k in (2, 6, 8, 24):
            for theta in (-0.49, -1 / 3, 0.0, 0.2, 0.5):
                p = MinAverageParams(g=g, k=k, theta=theta)
                d = min_average_direct(p)
                c = min_average_closed(p)
                assert d == pytest.approx(c, abs=1e-12), (g, k, theta)


def test_min_average_derived_params():
    p = MinAverageParams(g=9, k=6, theta=0.0)
    assert p.d == 3
    assert p.k_star == 2
    q = MinAverageParams(g=3, k=8, theta=0.0)
    assert q.d == 1
    assert q.k_star == 8


def test_min_average_range_and_floor():
    for g in (3, 7, 15):
        for k in (2, 12):
            for theta in (-0.3, 0.0, 0.41):
                p = MinAverageParams(g=g, k=k, theta=theta)
                v = min_average_closed(p)
                assert 0.0 <= v <= 2.0
                assert min_average_floor(p) <= v + 1e-15


def test_min_average_zero_candidate_never_wins():
    for g in (3, 5, 9):
        for theta in (-0.2, 0.0, 0.37):
            p = MinAverageParams(g=g, k=4, theta=theta)
            with_zero = min_average_direct(p, include_zero=True)
            without = min_average_direct(p, include_zero=False)
            assert with_zero == pytest.approx(without, abs=1e-15)


def test_min_average_depends_on_fractional_phase():
    # shifting theta by one rotation class permutes the average's terms
    a = min_average_direct(MinAverageParams(g=3, k=2, theta=0.3))
    b = min_average_direct(MinAverageParams(g=3, k=2, theta=-0.2))
    assert a == pytest.approx(b, abs=1e-12)
    ca = min_average_closed(MinAverageParams(g=3, k=2, theta=0.3))
    cb = min_average_closed(MinAverageParams(g=3, k=2, theta=-0.2))
    assert ca == pytest.approx(cb, abs=1e-12)


def test_min_average_params_validation():
    with pytest.raises(ValueError):
        MinAverageParams(g=4, k=2, theta=0.0)
    with pytest.raises(ValueError):
        MinAverageParams(g=3, k=3, theta=0.0)
    with pytest.raises(ValueError):
        MinAverageParams(g=3, k=2, theta=0.75)
    with pytest.raises(ValueError):
        MinAverageParams(g=3, k=2, theta=-0.5)


def test_mean_value_bound_plugin():
    bv = mean_value_bound(100.0, 25.0, 0.0)
    assert bv.value == pytest.approx(math.log(100) + 0.2, abs=1e-12)
    assert set(bv.terms) == {"mimicry_decay", "window_floor"}
    assert bv.assumptions == {"constant": 1.0}
    rec = bv.to_json()
    assert set(rec) == {"value", "terms", "assumptions"}


def test_minor_arc_bound_plugin():
    bv = minor_arc_bound(2, 16.0)
    lr, ly = math.log(2), math.log(16)
    want = lr + lr**2.5 / math.sqrt(2) * ly + math.log(ly)
    assert bv.value == pytest.approx(want, abs=1e-12)
    assert set(bv.terms) == {"log_r", "bilinear", "loglog_y"}
    with pytest.raises(ValueError):
        minor_arc_bound(1, 16.0)
    with pytest.raises(ValueError):
        minor_arc_bound(2, 8.0)


def test_major_arc_exceptional_term_needs_divisibility():
    y = math.exp(10)
    with_main = major_arc_bound(4, 4, y, 0.5)
    without = major_arc_bound(3, 4, y, 0.5)
    assert with_main.terms["exceptional_main"] > 0
    assert without.terms["exceptional_main"] == 0
    assert with_main.assumptions["exceptional_divides"] is True
    assert without.assumptions["exceptional_divides"] is False
    # m = 4 divides r = 8: main term is sqrt(4)/phi(4) * ln y * e^{-1/2}
    want = 2.0 / 2.0 * 10.0 * math.exp(-0.5)
    assert with_main.terms["exceptional_main"] != pytest.approx(0.0)
    eight = major_arc_bound(8, 4, y, 0.5)
    assert eight.terms["exceptional_main"] == pytest.approx(want, abs=1e-12)


def test_major_arc_validation():
    with pytest.raises(ValueError):
        major_arc_bound(20, 4, math.exp(10), 0.0)  # r beyond log y
    with pytest.raises(ValueError):
        major_arc_bound(2, 4, 8.0, 0.0)


def test_smooth_expsum_bound_shape():
    bv = smooth_expsum_bound(math.exp(9), 2.0)
    ly = 9.0
    assert bv.terms["mimicry_decay"] == pytest.approx(ly * math.exp(-2.0), abs=1e-12)
    assert bv.terms["power_of_log"] == pytest.approx(ly ** (2.0 / 3.0), abs=1e-12)
    assert bv.assumptions["exponent"] == pytest.approx(2.0 / 3.0)
    assert bv.value == pytest.approx(sum(bv.terms.values()), abs=1e-12)
    with pytest.raises(ValueError):
        smooth_expsum_bound(8.0, 1.0)


def test_bound_value_is_sum_of_terms():
    bv = BoundValue(value=3.0, terms={"a": 1.0, "b": 2.0}, assumptions={})
    assert bv.to_json()["terms"] == {"a": 1.0, "b": 2.0}
