"""Rational approximation and arc classification."""
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from charmimic import (
    RationalApprox,
    approx_window,
    classify_arc,
    continued_fraction,
    dirichlet_approx,
    effective_length,
)
from charmimic.dioph import M_CAP


GOLDEN = (1 + math.sqrt(5)) / 2


def test_pi_convergents():
    convs = continued_fraction(math.pi, 4)
    assert convs[:4] == [
        Fraction(3, 1),
        Fraction(22, 7),
        Fraction(333, 106),
        Fraction(355, 113),
    ]


def test_golden_ratio_fibonacci_convergents():
    convs = continued_fraction(GOLDEN, 10)
    fib = [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]
    want = [Fraction(fib[i + 1], fib[i]) for i in range(10)]
    assert convs == want


def test_dyadic_expansion_terminates():
    convs = continued_fraction(0.25, 50)
    assert convs == [Fraction(0, 1), Fraction(1, 4)]
    with pytest.raises(ValueError):
        continued_fraction(0.5, 0)


def test_convergent_denominators_nondecreasing():
    convs = continued_fraction(math.e, 12)
    dens = [c.denominator for c in convs]
    assert dens == sorted(dens)


def test_dirichlet_pi_window_100():
    a = dirichlet_approx(math.pi, 100.0)
    assert (a.b, a.r) == (22, 7)
    assert a.quality == pytest.approx(abs(math.pi - 22 / 7), abs=1e-15)


def test_dirichlet_exact_rational_targets():
    a = dirichlet_approx(0.25, 10.0)
    assert (a.b, a.r, a.quality) == (1, 4, 0.0)
    b = dirichlet_approx(1 / 3, 10.0)
    assert (b.b, b.r) == (1, 3)
    assert b.quality < 1e-15  # only the dyadic representation error remains


def test_dirichlet_seeded_invariants(rng):
    for _ in range(200):
        alpha = float(rng.uniform(-10, 10))
        M = float(rng.uniform(2, 10**6))
        a = dirichlet_approx(alpha, M)
        t = Fraction(alpha)
        assert a.r <= M
        assert math.gcd(a.b, a.r) == 1
        # the defining window inequality, checked in exact arithmetic
        assert abs(t - Fraction(a.b, a.r)) <= 1 / (a.r * Fraction(M))
        # a strictly better denominator-limited candidate may only exist
        # when it fails the window
        best = t.limit_denominator(int(M))
        if abs(t - best) < abs(t - Fraction(a.b, a.r)):
            assert abs(t - best) > 1 / (best.denominator * Fraction(M))


@settings(max_examples=60, deadline=None)
@given(
    alpha=st.floats(min_value=-50, max_value=50, allow_nan=False),
    M=st.floats(min_value=2, max_value=1e9, allow_nan=False),
)
def test_dirichlet_window_property(alpha, M):
    a = dirichlet_approx(alpha, M)
    t = Fraction(alpha)
    assert a.r <= M
    assert abs(t - Fraction(a.b, a.r)) <= 1 / (a.r * Fraction(M))


def test_dirichlet_validation():
    with pytest.raises(ValueError):
        dirichlet_approx(0.5, 1.5)


def test_approx_window_branches():
    # small y: the doubly exponential expression overflows, so the cap rules
    assert approx_window(16.0) == float(M_CAP)
    y = 1e100
    inner = math.log(math.log(y)) / math.log(math.log(math.log(y)))
    assert approx_window(y) == pytest.approx(math.exp(math.exp(inner)))
    assert approx_window(y) < M_CAP
    with pytest.raises(ValueError):
        approx_window(15.9)


def test_classify_integer_phase():
    arc = classify_arc(0.0, math.exp(10), 4)
    assert arc.tag == "major-nonexceptional"
    assert (arc.approx.b, arc.approx.r) == (0, 1)
    assert arc.threshold == pytest.approx(10.0)
    assert arc.margin == pytest.approx(9.0)


def test_classify_quarter_phase_exceptional():
    arc = classify_arc(0.25, math.exp(10), 4)
    assert arc.tag == "major-exceptional"
    assert (arc.approx.b, arc.approx.r) == (1, 4)


def test_classify_golden_minor():
    arc = classify_arc(GOLDEN, math.exp(10), 4)
    assert arc.tag == "minor"
    assert arc.approx.r > 10


def test_classify_window_override():
    arc = classify_arc(0.5, math.exp(10), 3, M=10.0)
    assert (arc.approx.b, arc.approx.r) == (1, 2)
    assert arc.approx.M == 10.0
    assert arc.tag == "major-nonexceptional"


def test_classify_validation():
    with pytest.raises(ValueError):
        classify_arc(0.1, 10.0, 4)
    with pytest.raises(ValueError):
        classify_arc(0.1, 100.0, 0)


def test_arc_json_shape():
    arc = classify_arc(0.25, math.exp(10), 4)
    rec = arc.to_json()
    assert set(rec) == {
        "b",
        "r",
        "quality",
        "M",
        "arc_tag",
        "margin",
        "threshold",
        "exceptional_modulus",
    }
    rec2 = arc.to_json(alpha=0.25)
    assert rec2["alpha"] == 0.25


def test_effective_length():
    exact = RationalApprox(b=1, r=4, quality=0.0, M=10.0)
    assert effective_length(100.0, 0.25, exact) == 100.0
    pi_appr = RationalApprox(b=22, r=7, quality=abs(math.pi - 22 / 7), M=100.0)
    denom = abs(7 * Fraction(math.pi) - 22)
    assert effective_length(1000.0, math.pi, pi_appr) == pytest.approx(
        float(1 / denom)
    )
    assert effective_length(50.0, math.pi, pi_appr) == 50.0


def test_rational_approx_validation():
    with pytest.raises(ValueError):
        RationalApprox(b=1, r=0, quality=0.0, M=10.0)
    with pytest.raises(ValueError):
        RationalApprox(b=2, r=4, quality=0.0, M=10.0)
