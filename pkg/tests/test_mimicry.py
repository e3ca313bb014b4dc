"""Prime-weighted distances, nearest-twist minimization, mimic search."""
import math

import numpy as np
import pytest

from charmimic import (
    character,
    chi_minus4,
    distance_ratio_scan,
    distance_sq,
    equidistribution_diagnostic,
    from_character,
    legendre,
    mul,
    nearest_primitive,
    nearest_twist_distance,
    one,
    principal,
    random_unimodular,
    root_approx_defect,
    twist,
)


def test_distance_to_self(rng):
    # unimodular functions sit at distance zero from themselves; a character
    # adapter keeps the 1/q term where it vanishes at its own modulus
    f = random_unimodular(1000, rng)
    assert distance_sq(f, f, 1000.0) == pytest.approx(0.0, abs=1e-12)
    g = from_character(legendre(7))
    assert distance_sq(g, g, 1000.0) == pytest.approx(1 / 7, abs=1e-12)


def test_distance_symmetry(rng):
    f = random_unimodular(1000, rng)
    g = from_character(chi_minus4())
    assert distance_sq(f, g, 1000.0) == pytest.approx(
        distance_sq(g, f, 1000.0), abs=1e-13
    )


def test_distance_hand_value():
    # distance from chi mod 4 to the constant 1: primes 3 mod 4 flip sign,
    # contributing 2/p, and p = 2 contributes 1/2
    f = from_character(chi_minus4())
    got = distance_sq(f, one(), 10.0)
    want = 1 / 2 + 2 / 3 + 0 / 5 + 2 / 7
    assert got == pytest.approx(want, abs=1e-12)


def test_nearest_twist_frozen_dense_grid_oracle():
    # frozen against an independent sieve + dense-grid + ternary-refine run:
    # minimum 1.836548300800 attained at |t| = 66.355168361
    rep = nearest_twist_distance(from_character(chi_minus4()), 1e4, 100.0)
    assert rep.distance_sq == pytest.approx(1.836548300800, abs=1e-6)
    assert abs(rep.minimizing_t) == pytest.approx(66.355168361, abs=1e-3)


def test_nearest_twist_self_product_floor():
    # |chi|^2 equals 1 off the modulus, so only p = 2 keeps the distance up
    h = mul(from_character(chi_minus4()), from_character(chi_minus4()), True)
    rep = nearest_twist_distance(h, 10.0, 10.0)
    assert rep.distance_sq == pytest.approx(0.5, abs=1e-12)
    assert abs(rep.minimizing_t) < 1e-6


def test_nearest_twist_window_zero_short_circuits():
    f = from_character(legendre(5))
    rep = nearest_twist_distance(f, 500.0, 0.0)
    assert rep.minimizing_t == 0.0
    assert rep.grid_points == 1
    assert rep.distance_sq == distance_sq(f, one(), 500.0)


def test_nearest_twist_deterministic(rng):
    f = random_unimodular(2000, rng)
    a = nearest_twist_distance(f, 2000.0, 5.0)
    b = nearest_twist_distance(f, 2000.0, 5.0)
    assert a.distance_sq == b.distance_sq
    assert a.minimizing_t == b.minimizing_t


def test_nearest_twist_window_widening_monotone():
    f = twist(one(), 7.0)
    narrow = nearest_twist_distance(f, 1000.0, 2.0)
    wide = nearest_twist_distance(f, 1000.0, 10.0)
    assert wide.distance_sq <= narrow.distance_sq + 1e-12
    # the wide window reaches the twist and cancels it exactly
    assert wide.minimizing_t == pytest.approx(7.0, abs=1e-6)
    assert wide.distance_sq == pytest.approx(0.0, abs=1e-9)
    assert narrow.distance_sq > 0.1


def test_nearest_twist_recovers_negative_twist():
    f = twist(one(), -3.0)
    rep = nearest_twist_distance(f, 1000.0, 10.0)
    assert rep.minimizing_t == pytest.approx(-3.0, abs=1e-6)
    assert rep.distance_sq == pytest.approx(0.0, abs=1e-9)


def test_nearest_twist_validation_and_json():
    with pytest.raises(ValueError):
        nearest_twist_distance(one(), 100.0, -1.0)
    rep = nearest_twist_distance(one(), 100.0, 1.0)
    rec = rep.to_json()
    assert set(rec) == {
        "distance_sq",
        "minimizing_t",
        "prime_cutoff",
        "twist_window",
        "grid_step",
        "grid_points",
        "refine_tol",
    }
    assert rec["twist_window"] == 1.0


def test_nearest_primitive_identifies_twisted_character():
    f = twist(from_character(chi_minus4()), 0.5)
    res = nearest_primitive(f, 200.0, 8)
    assert res.character == chi_minus4()
    assert res.conductor == 4
    assert res.report.minimizing_t == pytest.approx(0.5, abs=1e-4)
    assert res.report.distance_sq == pytest.approx(0.5, abs=1e-6)
    assert res.runner_up_report.distance_sq >= res.report.distance_sq
    rec = res.to_json()
    assert set(rec) == {"character", "conductor", "report", "runner_up"}


def test_nearest_primitive_validation():
    with pytest.raises(ValueError):
        nearest_primitive(one(), 100.0, 0)


def test_scan_table_fields(tmp_path):
    chi = character(7, 2)
    assert chi.order == 3 and chi.parity == 1
    betas = np.linspace(-2.0, 2.0, 41)
    table = distance_ratio_scan(chi, chi_minus4(), 1000.0, betas)
    assert table.reference == pytest.approx(root_approx_defect(3))
    assert table.min_ratio == pytest.approx(float(np.min(table.ratios)))
    assert table.min_beta in betas
    assert table.slack == pytest.approx(table.min_ratio - table.reference)
    rec = table.to_json()
    assert set(rec) == {"y", "reference", "min_ratio", "min_beta", "slack", "rows"}
    assert len(rec["rows"]) == 41
    out = tmp_path / "scan.csv"
    table.write_csv(out)
    lines = out.read_text().splitlines()
    assert lines[0] == "beta,distance_sq,ratio"
    assert len(lines) == 42


def test_scan_validation():
    betas = np.linspace(-1, 1, 5)
    with pytest.raises(ValueError):
        distance_ratio_scan(chi_minus4(), chi_minus4(), 100.0, betas)  # chi odd
    with pytest.raises(ValueError):
        distance_ratio_scan(legendre(5), chi_minus4(), 100.0, betas)  # order 2
    with pytest.raises(ValueError):
        distance_ratio_scan(character(7, 2), legendre(5), 100.0, betas)  # xi even
    with pytest.raises(ValueError):
        distance_ratio_scan(character(7, 2), chi_minus4(), 2.0, betas)  # y <= e


def test_equidistribution_chi_minus4():
    table = equidistribution_diagnostic(chi_minus4(), 1e6)
    assert table.order == 2
    assert len(table.class_sums) == 2
    assert table.max_deviation < 0.1
    assert sum(table.ratios()) == pytest.approx(1.0, abs=1e-12)
    rec = table.to_json()
    assert set(rec) == {"order", "class_sums", "total", "ratios", "max_deviation"}


def test_equidistribution_rejects_principal():
    with pytest.raises(ValueError):
        equidistribution_diagnostic(principal(12), 1000.0)
