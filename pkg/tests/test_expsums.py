"""Character sums, weighted exponential sums, and the expansion identities."""
import cmath
import math

import numpy as np
import pytest

from charmimic import (
    char_sum,
    char_sum_fourier,
    chi_minus4,
    coprime_split_residual,
    enumerate_characters,
    from_character,
    is_smooth,
    legendre,
    max_char_sum,
    one,
    primitive_characters,
    principal,
    random_unimodular,
    smooth_indicator,
    twisted_sum_sides,
    two_sided_sum,
    unit_phase,
    weighted_expsum,
    weighted_profile,
)


def test_unit_phase_exact_points():
    assert abs(unit_phase(0.0) - 1) < 1e-15
    assert abs(unit_phase(0.25) - 1j) < 1e-15
    assert abs(unit_phase(0.5) + 1) < 1e-15
    # reduction happens before trig, so huge arguments stay accurate
    assert abs(unit_phase(1e9 + 0.25) - 1j) < 1e-9


def test_char_sum_chi_minus4_prefix():
    chi = chi_minus4()
    want = [1, 1, 0, 0, 1, 1, 0, 0]
    got = [char_sum(chi, t) for t in range(1, 9)]
    assert np.allclose(got, want, atol=1e-12)
    assert char_sum(chi, 3) == pytest.approx(0)


def test_char_sum_legendre7_at_5():
    # 1 + 1 - 1 + 1 - 1: the residues 1, 2, 4 are the squares mod 7
    assert abs(char_sum(legendre(7), 5) - 1) < 1e-12


def test_char_sum_full_period_vanishes():
    for q in (5, 12, 16):
        for chi in enumerate_characters(q):
            if chi.is_principal:
                continue
            for k in (1, 3):
                assert abs(char_sum(chi, k * q)) < 1e-12


def test_char_sum_fractional_t_and_periodic_blocks():
    chi = legendre(7)
    assert char_sum(chi, 5.99) == char_sum(chi, 5)
    # 100 = 14 full periods + 2
    direct = sum(chi(n) for n in range(1, 101))
    assert abs(char_sum(chi, 100) - direct) < 1e-10
    with pytest.raises(ValueError):
        char_sum(chi, -1)


def test_max_char_sum_brute(rng):
    for q in range(3, 31):
        for chi in enumerate_characters(q):
            prof = max_char_sum(chi)
            sums = np.cumsum([chi(n) for n in range(1, q + 1)])
            want = np.max(np.abs(sums))
            assert prof.max_abs == pytest.approx(want, abs=1e-10)
            at = int(prof.argmax)
            assert abs(abs(sums[at - 1]) - want) < 1e-10


def test_max_char_sum_chi_minus4():
    prof = max_char_sum(chi_minus4())
    assert prof.max_abs == pytest.approx(1.0)
    assert prof.summary()["kind"] == "char-partial"


def test_weighted_expsum_is_harmonic_for_one():
    H100 = 5.187377517639621
    assert weighted_expsum(one(), 100, math.inf, 0.0) == pytest.approx(H100, abs=1e-12)


def test_weighted_expsum_two_smooth():
    # only 1, 2, 4, 8, 16 survive the cutoff
    got = weighted_expsum(one(), 16, 2.0, 0.0)
    assert got == pytest.approx(1.9375, abs=1e-14)


def test_weighted_expsum_brute(rng):
    f = random_unimodular(120, rng)
    for alpha in (0.0, 0.3, 1 / 7):
        for y in (math.inf, 5.0):
            got = weighted_expsum(f, 120, y, alpha)
            want = 0j
            for n in range(1, 121):
                if math.isfinite(y) and not is_smooth(n, y):
                    continue
                want += f(n) / n * cmath.exp(2j * cmath.pi * ((n * alpha) % 1.0))
            assert abs(got - want) < 1e-10


def test_weighted_expsum_alpha_periodicity():
    f = from_character(chi_minus4())
    a = weighted_expsum(f, 500, math.inf, 0.25)
    b = weighted_expsum(f, 500, math.inf, 1.25)
    assert a == b  # exact: alpha is reduced mod 1 before any float work


def test_weighted_profile_consistency():
    f = from_character(chi_minus4())
    prof = weighted_profile(f, 300, math.inf, 0.25)
    assert prof.values[-1] == pytest.approx(weighted_expsum(f, 300, math.inf, 0.25))
    mags = np.abs(prof.values)
    assert prof.max_abs >= mags.max() - 1e-12
    rows = list(prof.rows())
    assert len(rows) == prof.summary()["samples"]


def test_two_sided_even_vanishes_at_zero():
    for chi in (legendre(5), legendre(13), principal(8)):
        assert chi.parity == 1
        assert abs(two_sided_sum(chi, 50, 0.0, math.inf)) < 1e-12


def test_two_sided_odd_doubles_at_zero():
    for chi in (chi_minus4(), legendre(7)):
        assert chi.parity == -1
        got = two_sided_sum(chi, 40, 0.0, math.inf)
        want = 2 * sum(complex(chi(n)).conjugate() / n for n in range(1, 41))
        assert abs(got - want) < 1e-12


def test_two_sided_matches_literal_two_sided_loop():
    # fold-free oracle: sum over 1 <= |n| <= N with chi extended by
    # chi(-n) = chi(-1) chi(n) and e(n alpha) evaluated per signed n
    chi = chi_minus4()
    N, alpha = 4, 0.25
    want = 0j
    for n in range(1, N + 1):
        cn = complex(chi(n)).conjugate()
        want += cn / n * cmath.exp(2j * cmath.pi * (n * alpha % 1.0))
        cneg = (chi.parity * complex(chi(n))).conjugate()
        want += cneg / (-n) * cmath.exp(2j * cmath.pi * (-n * alpha % 1.0))
    got = two_sided_sum(chi, N, alpha, math.inf)
    assert abs(got - want) < 1e-12


def test_two_sided_smooth_cutoff():
    chi = chi_minus4()
    got = two_sided_sum(chi, 20, 0.0, 3.0)
    want = 2 * sum(
        complex(chi(n)).conjugate() / n for n in range(1, 21) if is_smooth(n, 3)
    )
    assert abs(got - want) < 1e-12


def test_fourier_full_period_is_exact():
    # at t = q both sides vanish: S(q) = 0 and every bracket 1 - e(-n) = 0
    main, residual = char_sum_fourier(chi_minus4(), 4.0, 50)
    assert abs(main) < 1e-12
    assert residual < 1e-12


def test_fourier_residual_envelope():
    # calibrated envelope: residual <= 1 + q ln q / N for primitive chi,
    # q <= 50 (observed worst ratio is below one half)
    for chi in primitive_characters(51):
        q = chi.modulus
        if q < 3:
            continue
        for t in (q / 3, q / 2, float(q)):
            for N in (q, 2 * q, 4 * q, 8 * q):
                _, residual = char_sum_fourier(chi, t, N)
                assert residual <= 1.0 + q * math.log(q) / N, (q, t, N, residual)


def test_fourier_long_truncation_small_residual():
    # N = q^2 keeps the residual below 0.6 even at jump-adjacent t
    for q in (3, 7, 23, 101):
        chi = next(c for c in primitive_characters(q + 1) if c.modulus == q)
        _, residual = char_sum_fourier(chi, q / 3 + 0.5, q * q)
        assert residual < 0.6


def test_fourier_residual_decays_at_continuity_points():
    chi = chi_minus4()
    _, r4 = char_sum_fourier(chi, 1.5, 4)
    _, r400 = char_sum_fourier(chi, 1.5, 400)
    _, r4000 = char_sum_fourier(chi, 1.5, 4000)
    assert r400 < r4
    assert r4000 < 0.0002
    assert r4000 == pytest.approx(r400 / 10, rel=0.05)


def test_fourier_requires_primitive():
    with pytest.raises(ValueError):
        char_sum_fourier(principal(4), 1.0, 10)


def test_twisted_sides_trivial_denominator():
    lhs, rhs = twisted_sum_sides(one(), 1, 1, 20, math.inf)
    H20 = sum(1 / n for n in range(1, 21))
    assert lhs == pytest.approx(H20, abs=1e-12)
    assert abs(lhs - rhs) < 1e-10


def test_twisted_sides_hand_case():
    # alternating 1/n weights: -1 + 1/2 - 1/3 + 1/4 = -7/12
    lhs, rhs = twisted_sum_sides(one(), 1, 2, 4, math.inf)
    assert lhs == pytest.approx(-7 / 12, abs=1e-12)
    assert rhs == pytest.approx(-7 / 12, abs=1e-10)


def test_twisted_sides_brute_lhs(rng):
    f = random_unimodular(300, rng)
    for b, r in ((1, 3), (2, 5), (5, 12)):
        lhs, _ = twisted_sum_sides(f, b, r, 300, math.inf)
        want = 0j
        for n in range(1, 301):
            want += f(n) / n * cmath.exp(2j * cmath.pi * ((n * b) % r) / r)
        assert abs(lhs - want) < 1e-10


def test_twisted_sides_agree(rng):
    f = random_unimodular(2000, rng)
    for b, r, N, y in ((1, 3, 500, math.inf), (3, 8, 400, 50.0), (7, 30, 1000, 11.0)):
        lhs, rhs = twisted_sum_sides(f, b, r, N, y)
        assert abs(lhs - rhs) <= 1e-8 * (1 + abs(lhs)), (b, r, N, y)


def test_twisted_sides_validation():
    with pytest.raises(ValueError):
        twisted_sum_sides(one(), 2, 4, 10, math.inf)
    with pytest.raises(ValueError):
        twisted_sum_sides(one(), 1, 0, 10, math.inf)


def test_smooth_indicator_matches_is_smooth():
    for y in (2.0, 5.0, 13.0, math.inf):
        mask = smooth_indicator(200, y)
        assert not mask[0]
        for n in range(1, 201):
            assert mask[n] == is_smooth(n, y), (n, y)


def test_coprime_split_trivial_k():
    lhs, main, residual = coprime_split_residual(one(), 500, 1)
    assert residual == 0
    assert lhs == main


def test_coprime_split_hand_case():
    # (one, 100, 6): main term is (1/2)(2/3) H_100 = H_100 / 3
    lhs, main, residual = coprime_split_residual(one(), 100, 6)
    assert lhs == pytest.approx(2.1382969387665565, abs=1e-12)
    assert main == pytest.approx(1.7291258392132067, abs=1e-12)
    assert residual == pytest.approx(0.40917109955334974, abs=1e-12)


def test_coprime_split_brute(rng):
    g = random_unimodular(200, rng)
    for k in (2, 6, 30):
        lhs, main, residual = coprime_split_residual(g, 200, k)
        want_lhs = sum(g(n) / n for n in range(1, 201) if math.gcd(n, k) == 1)
        assert abs(lhs - want_lhs) < 1e-10
        assert abs(residual - (lhs - main)) < 1e-12
