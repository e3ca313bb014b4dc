"""Character sums and exponential sums over multiplicative coefficients.

Covers: partial character sums S(t) = sum of chi(n) for n <= t and their
maxima, additively twisted harmonic sums over smooth integers, the truncated
Fourier approximation of S(t) for primitive characters, the divisor-and-
character expansion identity for twisted sums, two-sided variants, and the
coprimality-splitting residual for harmonic sums.

Conventions shared by every sum here: e(x) means exp(2*pi*i*frac(x)) so that
large arguments never hit big-angle trig error, rational phases b*n/r are
reduced modulo r in integer arithmetic before exponentiation, and all final
accumulations are compensated (accum module).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .accum import csum_array
from .arith import (
    SUM_TERM_CAP,
    ResourceCapError,
    divisors,
    factor,
    is_smooth,
    prime_array,
    totient,
)
from .characters import DirichletCharacter, enumerate_characters, gauss_sum
from .ioutil import open_text_sink
from .multfun import CMFunction, evaluate, smooth_restrict, values_up_to

_PROFILE_POINTS = 2048


def unit_phase(x: float) -> complex:
    """e(x) = exp(2*pi*i*x), computed from the fractional part of x."""
    f = x - math.floor(x)
    return complex(math.cos(2 * math.pi * f), math.sin(2 * math.pi * f))


def unit_phases(x: np.ndarray) -> np.ndarray:
    return np.exp(2j * np.pi * np.mod(x, 1.0))


@dataclass
class SumProfile:
    """Sampled trajectory of a partial-sum family, with its exact extremum."""

    kind: str
    params: dict
    ts: np.ndarray
    values: np.ndarray  # complex partial sums at the sampled ts
    max_abs: float
    argmax: float

    def summary(self) -> dict:
        return {
            "kind": self.kind,
            "params": self.params,
            "max_abs": self.max_abs,
            "argmax": self.argmax,
            "samples": int(len(self.ts)),
        }

    def rows(self):
        for t, v in zip(self.ts.tolist(), self.values.tolist()):
            yield t, v.real, v.imag, abs(v)

    def write_csv(self, sink) -> None:
        with open_text_sink(sink) as fh:
            fh.write("t_or_n,re,im,abs\n")
            for t, re, im, ab in self.rows():
                fh.write("%.17g,%.17g,%.17g,%.17g\n" % (t, re, im, ab))


def _sample_indices(n: int, cap: int = _PROFILE_POINTS) -> np.ndarray:
    if n <= cap:
        return np.arange(1, n + 1)
    return np.unique(np.linspace(1, n, cap).astype(np.int64))


def _period_values(chi: DirichletCharacter) -> np.ndarray:
    """chi(1), chi(2), ..., chi(q) as one period of the value sequence."""
    vals = chi.values_array()
    return np.concatenate([vals[1:], vals[:1]])


def char_sum(chi: DirichletCharacter, t: float) -> complex:
    """S(t) = sum of chi(n) for 1 <= n <= t, using q-periodicity."""
    if t < 0:
        raise ValueError("char_sum needs t >= 0")
    m = int(math.floor(t))
    q = chi.modulus
    if min(m, q) > SUM_TERM_CAP:
        raise ResourceCapError("char_sum length %d exceeds cap %d" % (m, SUM_TERM_CAP))
    if m == 0:
        return 0j
    period = _period_values(chi)
    full = csum_array(period)
    rem = m % q
    partial = csum_array(period[:rem]) if rem else 0j
    return (m // q) * full + partial


def max_char_sum(chi: DirichletCharacter) -> SumProfile:
    """Exact maximum of |S(t)| over integer t <= q, with a sampled profile."""
    q = chi.modulus
    if q > SUM_TERM_CAP:
        raise ResourceCapError("modulus %d exceeds cap %d" % (q, SUM_TERM_CAP))
    sums = np.cumsum(_period_values(chi))
    mags = np.abs(sums)
    best = int(np.argmax(mags))
    idx = _sample_indices(q)
    return SumProfile(
        kind="char-partial",
        params={"char": chi.to_json()},
        ts=idx.astype(np.float64),
        values=sums[idx - 1],
        max_abs=float(mags[best]),
        argmax=float(best + 1),
    )


def weighted_expsum(f: CMFunction, x: float, y: float, alpha: float) -> complex:
    """Sum of f(n)/n * e(n*alpha) over n <= x with all prime factors <= y."""
    if not x >= 1:
        raise ValueError("weighted_expsum needs x >= 1")
    m = int(math.floor(x))
    if m > SUM_TERM_CAP:
        raise ResourceCapError("sum length %d exceeds cap %d" % (m, SUM_TERM_CAP))
    g = smooth_restrict(f, y) if math.isfinite(y) else f
    vals = values_up_to(g, m)[1:]
    n = np.arange(1, m + 1, dtype=np.float64)
    a = alpha - math.floor(alpha)  # e is 1-periodic; reduce once, exactly
    return csum_array(vals / n * unit_phases(n * a))


def weighted_profile(f: CMFunction, x: float, y: float, alpha: float) -> SumProfile:
    """Partial-sum trajectory of weighted_expsum, sampled along n."""
    m = int(math.floor(x))
    if not x >= 1:
        raise ValueError("weighted_profile needs x >= 1")
    if m > SUM_TERM_CAP:
        raise ResourceCapError("sum length %d exceeds cap %d" % (m, SUM_TERM_CAP))
    g = smooth_restrict(f, y) if math.isfinite(y) else f
    vals = values_up_to(g, m)[1:]
    n = np.arange(1, m + 1, dtype=np.float64)
    a = alpha - math.floor(alpha)
    terms = vals / n * unit_phases(n * a)
    sums = np.cumsum(terms)
    mags = np.abs(sums)
    best = int(np.argmax(mags))
    idx = _sample_indices(m)
    return SumProfile(
        kind="weighted-partial",
        params={
            "f": f.describe(),
            "x": x,
            "y": None if math.isinf(y) else y,
            "alpha": alpha,
        },
        ts=idx.astype(np.float64),
        values=sums[idx - 1],
        max_abs=float(mags[best]),
        argmax=float(best + 1),
    )


def char_sum_fourier(chi: DirichletCharacter, t: float, N: int) -> tuple[complex, float]:
    """Truncated Fourier main term for S(t) of a primitive character.

    Returns (approximation, residual) where the approximation is
    tau(chi)/(2*pi*i) times the sum over 1 <= |n| <= N of
    conj(chi)(n)/n * (1 - e(-n*t/q)), and residual = |approximation - S(t)|.
    """
    if not chi.is_primitive:
        raise ValueError("the Fourier main term requires a primitive character")
    if N < 1:
        raise ValueError("truncation length must be >= 1")
    if N > SUM_TERM_CAP:
        raise ResourceCapError("truncation length %d exceeds cap %d" % (N, SUM_TERM_CAP))
    q = chi.modulus
    tau = gauss_sum(chi)
    cvals = np.conj(chi.values_array())
    n = np.arange(1, N + 1)
    cn = cvals[n % q]
    ratio = t / q
    pos = cn / n * (1.0 - unit_phases(-n * ratio))
    neg = -chi.parity * cn / n * (1.0 - unit_phases(n * ratio))
    main = tau / (2j * math.pi) * (csum_array(pos) + csum_array(neg))
    residual = abs(main - char_sum(chi, t))
    return main, residual


def twisted_sum_sides(
    f: CMFunction, b: int, r: int, N: float, y: float
) -> tuple[complex, complex]:
    """Both sides of the divisor-and-character expansion of a twisted sum.

    lhs: sum over y-smooth n <= N of f(n)/n * e(b*n/r), evaluated directly
    with the phase reduced mod r in integer arithmetic.
    rhs: sum over smooth divisors d of r of f(d)/d * (1/phi(r/d)) times the
    full character-group expansion with Gauss-sum coefficients.
    """
    if r < 1:
        raise ValueError("denominator r must be positive")
    if math.gcd(b, r) != 1:
        raise ValueError("b = %d and r = %d share a factor" % (b, r))
    if not N >= 1:
        raise ValueError("twisted_sum_sides needs N >= 1")
    m = int(math.floor(N))
    if m > SUM_TERM_CAP:
        raise ResourceCapError("sum length %d exceeds cap %d" % (m, SUM_TERM_CAP))
    g = smooth_restrict(f, y) if math.isfinite(y) else f

    vals = values_up_to(g, m)[1:]
    n = np.arange(1, m + 1)
    roots_r = np.exp(2j * np.pi * np.arange(r) / r)
    lhs = csum_array(vals / n * roots_r[(n * b) % r])

    rhs_terms = []
    for d in divisors(r):
        if math.isfinite(y) and not is_smooth(d, y):
            continue
        fd = evaluate(g, d)
        if fd == 0:
            continue
        rd = r // d
        md = int(math.floor(N / d))
        inner_vals = values_up_to(g, md)[1:] if md >= 1 else np.empty(0, complex)
        nd = np.arange(1, md + 1)
        psi_total = 0j
        for psi in enumerate_characters(rd):
            tau = gauss_sum(psi)
            conj_at_b = complex(psi(b)).conjugate()
            if md >= 1:
                cpsi = np.conj(psi.values_array())[nd % rd]
                inner = csum_array(inner_vals * cpsi / nd)
            else:
                inner = 0j
            psi_total += tau * conj_at_b * inner
        rhs_terms.append(fd / d / totient(rd) * psi_total)
    rhs = csum_array(np.array(rhs_terms)) if rhs_terms else 0j
    return lhs, rhs


def smooth_indicator(x: int, y: float) -> np.ndarray:
    """Boolean array over 0..x marking integers with no prime factor above y."""
    mask = np.ones(x + 1, dtype=bool)
    mask[0] = False
    if math.isfinite(y) and x >= 2:
        for p in prime_array(x).tolist():
            if p > y:
                mask[p::p] = False
    return mask


def two_sided_sum(chi: DirichletCharacter, N: float, alpha: float, y: float) -> complex:
    """Sum of conj(chi)(n)/n * e(n*alpha) over 1 <= |n| <= N, |n| smooth.

    Folded onto positive n: each term contributes
    conj(chi)(n)/n * (e(n*alpha) - chi(-1)*e(-n*alpha)), which vanishes
    termwise for even characters at alpha = 0.
    """
    if not N >= 1:
        raise ValueError("two_sided_sum needs N >= 1")
    m = int(math.floor(N))
    if m > SUM_TERM_CAP:
        raise ResourceCapError("sum length %d exceeds cap %d" % (m, SUM_TERM_CAP))
    q = chi.modulus
    cvals = np.conj(chi.values_array())
    n = np.arange(1, m + 1)
    cn = cvals[n % q] * smooth_indicator(m, y)[1:]
    a = alpha - math.floor(alpha)
    bracket = unit_phases(n * a) - chi.parity * unit_phases(-n * a)
    return csum_array(cn / n * bracket)


def coprime_split_residual(
    g: CMFunction, x: float, k: int
) -> tuple[complex, complex, complex]:
    """Residual of splitting a harmonic sum at the primes dividing k.

    lhs  = sum over n <= x coprime to k of g(n)/n
    main = product over p | k of (1 - g(p)/p), times the unrestricted sum
    Returns (lhs, main, lhs - main); for k = 1 the residual is exactly zero.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if not x >= 1:
        raise ValueError("coprime_split_residual needs x >= 1")
    m = int(math.floor(x))
    if m > SUM_TERM_CAP:
        raise ResourceCapError("sum length %d exceeds cap %d" % (m, SUM_TERM_CAP))
    vals = values_up_to(g, m)[1:]
    n = np.arange(1, m + 1)
    terms = vals / n
    coprime = np.gcd(n, k) == 1
    lhs = csum_array(terms[coprime])
    full = csum_array(terms)
    prefactor = 1 + 0j
    for p, _ in factor(k).factors:
        prefactor *= 1 - evaluate(g, p) / p
    main = prefactor * full
    return lhs, main, lhs - main
