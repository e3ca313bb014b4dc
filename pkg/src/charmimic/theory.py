"""Closed-form constants, the min-average identity, and bound evaluators.

Three groups of things live here.  First, the defect constant measuring how
far the best g-th root of unity sits from a uniformly random direction, and
the tilted-cosine bump that appears in averaged minima over rotated root
sets.  Second, the min-average identity: a brute-force enumeration of
(1/k) * sum over residues l mod k of the minimum of 1 - Re(z * e(theta - l/k))
over z in the g-th roots of unity (optionally with 0), against its closed
form; the two must agree to near machine precision and the test grid treats
that as a hard identity.  Third, numeric evaluators for the right-hand
sides of the main upper bounds, with every unspecified constant and o(1)
exponent surfaced as an explicit, echoed parameter: these are for shape
comparison against measured sums, never certification.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .accum import fsum_real

TWO_PI = 2.0 * math.pi


def root_approx_defect(g: int) -> float:
    """1 - (g/pi) sin(pi/g): mean shortfall of the best g-th root direction."""
    if g < 3 or g % 2 == 0:
        raise ValueError("defect is defined for odd g >= 3, got %r" % (g,))
    return 1.0 - (g / math.pi) * math.sin(math.pi / g)


def cosine_bump(n: int, omega: float) -> float:
    """Tilted cosine wave in the fractional part of omega, period 1.

    Equals cos(2*pi*{omega}/n) + tan(pi/n) * sin(2*pi*{omega}/n); takes the
    value 1 at integers and peaks at 1/cos(pi/n) at half-integers.
    """
    if n < 6:
        raise ValueError("bump parameter must be >= 6, got %r" % (n,))
    frac = omega - math.floor(omega)
    return math.cos(TWO_PI * frac / n) + math.tan(math.pi / n) * math.sin(
        TWO_PI * frac / n
    )


def cosine_bump_mean(n: int) -> float:
    """Exact mean of the bump over one period: (n/pi) tan(pi/n)."""
    if n < 6:
        raise ValueError("bump parameter must be >= 6, got %r" % (n,))
    return (n / math.pi) * math.tan(math.pi / n)


def cosine_bump_mean_numeric(n: int, panels: int = 10_000) -> float:
    """Composite-Simpson mean of the bump over [0, 1), for cross-checks."""
    if panels % 2:
        panels += 1
    h = 1.0 / panels
    total = [cosine_bump(n, 0.0) + cosine_bump(n, 1.0 - 1e-15)]
    for i in range(1, panels):
        total.append((4.0 if i % 2 else 2.0) * cosine_bump(n, i * h))
    return fsum_real(total) * h / 3.0


@dataclass(frozen=True)
class MinAverageParams:
    """Parameters of the averaged-minimum identity.

    g: odd order of the root set, k: even number of rotation classes,
    theta: offset in (-1/2, 1/2].  d and k_star are derived.
    """

    g: int
    k: int
    theta: float

    def __post_init__(self):
        if self.g < 3 or self.g % 2 == 0:
            raise ValueError("g must be odd and >= 3, got %r" % (self.g,))
        if self.k < 2 or self.k % 2 == 1:
            raise ValueError("k must be even and >= 2, got %r" % (self.k,))
        if not (-0.5 < self.theta <= 0.5):
            raise ValueError("theta must lie in (-1/2, 1/2], got %r" % (self.theta,))

    @property
    def d(self) -> int:
        return math.gcd(self.g, self.k)

    @property
    def k_star(self) -> int:
        return self.k // self.d


def min_average_direct(params: MinAverageParams, include_zero: bool = True) -> float:
    """Brute-force average of min over z of 1 - Re(z * e(theta - l/k)).

    z ranges over the g-th roots of unity, plus 0 when include_zero is set;
    for odd g the zero candidate never wins, so both settings agree.
    """
    g, k, theta = params.g, params.k, params.theta
    terms = []
    for ell in range(k):
        phase = theta - Fraction(ell, k)
        best = 1.0 if include_zero else math.inf
        for j in range(g):
            angle = TWO_PI * (float(Fraction(j, g)) + float(phase))
            best = min(best, 1.0 - math.cos(angle))
        terms.append(best)
    return fsum_real(terms) / k


def min_average_closed(params: MinAverageParams) -> float:
    """Closed form: 1 - sin(pi/g) / (k* tan(pi/(g k*))) * bump(-g k* theta)."""
    g, ks = params.g, params.k_star
    n = g * ks
    return 1.0 - math.sin(math.pi / g) / (ks * math.tan(math.pi / n)) * cosine_bump(
        n, -n * params.theta
    )


def min_average_floor(params: MinAverageParams) -> float:
    """Lower envelope 1 - sin(pi/g) / (k* sin(pi/(g k*))) of the closed form."""
    g, ks = params.g, params.k_star
    return 1.0 - math.sin(math.pi / g) / (ks * math.sin(math.pi / (g * ks)))


@dataclass
class BoundValue:
    """Evaluated right-hand side of a displayed bound, with its fine print.

    terms: the named addends making up the value.  assumptions: the values
    substituted for implicit constants and o(1) exponents; a consumer that
    ignores these is misreading the number.
    """

    value: float
    terms: dict
    assumptions: dict

    def to_json(self) -> dict:
        return {"value": self.value, "terms": self.terms, "assumptions": self.assumptions}


def _bound(terms: dict, assumptions: dict) -> BoundValue:
    return BoundValue(value=fsum_real(terms.values()), terms=terms, assumptions=assumptions)


def smooth_expsum_bound(
    y: float,
    nearest_m: float,
    exponent: float = 2.0 / 3.0,
    o1: float = 0.0,
    constant: float = 1.0,
) -> BoundValue:
    """Shape of the exceptional-case bound for twisted smooth harmonic sums.

    constant * [ (log y) e^(-nearest_m) + (log y)^(exponent + o1) ], where
    nearest_m is the nearest-twist distance of f times the conjugate of its
    exceptional character.
    """
    if y < 16:
        raise ValueError("the bound shape assumes y >= 16")
    ly = math.log(y)
    terms = {
        "mimicry_decay": constant * ly * math.exp(-nearest_m),
        "power_of_log": constant * ly ** (exponent + o1),
    }
    return _bound(terms, {"constant": constant, "exponent": exponent, "o1": o1})


def minor_arc_bound(r: int, y: float, constant: float = 1.0) -> BoundValue:
    """log r + (log r)^(5/2)/sqrt(r) * log y + log log y, scaled by constant."""
    if r < 2:
        raise ValueError("minor-arc shape needs denominator r >= 2")
    if y < 16:
        raise ValueError("the bound shape assumes y >= 16")
    lr, ly = math.log(r), math.log(y)
    terms = {
        "log_r": constant * lr,
        "bilinear": constant * lr ** 2.5 / math.sqrt(r) * ly,
        "loglog_y": constant * math.log(ly),
    }
    return _bound(terms, {"constant": constant})


def major_arc_bound(
    r: int,
    m: int,
    y: float,
    nearest_m: float,
    exponent: float = 2.0 / 3.0,
    o1: float = 0.0,
    growth_constant: float = 1.0,
    constant: float = 1.0,
) -> BoundValue:
    """Bound shape at a rational point b/r with exceptional modulus m.

    constant * [ (log y)^(exponent+o1)/sqrt(r) + sqrt(r) e^(growth_constant *
    sqrt(log log y)) + main ], where main is (sqrt(m)/phi(m)) (log y)
    e^(-nearest_m) when m divides r and zero otherwise.
    """
    from .arith import totient

    if r < 1:
        raise ValueError("denominator r must be >= 1")
    if y < 16:
        raise ValueError("the bound shape assumes y >= 16")
    if r > math.log(y):
        raise ValueError("major-arc shape needs r <= log y")
    ly = math.log(y)
    main = 0.0
    if r % m == 0:
        main = constant * math.sqrt(m) / totient(m) * ly * math.exp(-nearest_m)
    terms = {
        "oscillation": constant * ly ** (exponent + o1) / math.sqrt(r),
        "character_noise": constant * math.sqrt(r) * math.exp(
            growth_constant * math.sqrt(math.log(ly))
        ),
        "exceptional_main": main,
    }
    return _bound(
        terms,
        {
            "constant": constant,
            "exponent": exponent,
            "o1": o1,
            "growth_constant": growth_constant,
            "exceptional_divides": r % m == 0,
        },
    )


def mean_value_bound(
    x: float, T: float, nearest_m: float, constant: float = 1.0
) -> BoundValue:
    """(log x) e^(-nearest_m) + 1/sqrt(T), scaled by constant."""
    if x < 2:
        raise ValueError("the bound shape assumes x >= 2")
    if T < 1:
        raise ValueError("the bound shape assumes T >= 1")
    terms = {
        "mimicry_decay": constant * math.log(x) * math.exp(-nearest_m),
        "window_floor": constant / math.sqrt(T),
    }
    return _bound(terms, {"constant": constant})
