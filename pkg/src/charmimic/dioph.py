"""Rational approximation of phases and the arc classification of a twist.

All comparisons against the approximation window run in exact rational
arithmetic: the input phase (a float) is converted to the dyadic rational
it exactly represents, continued-fraction convergents of that rational are
integer pairs, and the defining inequality |alpha - b/r| <= 1/(r*M) is a
Fraction comparison with no rounding.  Double precision limits how well the
caller's real alpha is represented in the first place; classification near
the r = log y boundary therefore carries the margin |r - log y| so a
consumer can see when the tag is fragile.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

M_CAP = 10 ** 12


@dataclass(frozen=True)
class RationalApprox:
    """Reduced fraction b/r approximating a phase within window M."""

    b: int
    r: int
    quality: float
    M: float

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("denominator must be positive")
        if math.gcd(self.b, self.r) != 1:
            raise ValueError("approximation %d/%d is not reduced" % (self.b, self.r))

    def to_json(self) -> dict:
        return {"b": self.b, "r": self.r, "quality": self.quality, "M": self.M}


def continued_fraction(alpha: float, depth: int) -> list[Fraction]:
    """Convergents of the dyadic rational exactly represented by alpha.

    Terminates early when the expansion is exhausted (alpha is rational, so
    it always is eventually); denominators never decrease.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    x = Fraction(alpha)
    terms = []
    for _ in range(depth):
        a = math.floor(x)
        terms.append(a)
        frac = x - a
        if frac == 0:
            break
        x = 1 / frac
    convergents = []
    h_prev, h = 1, terms[0]
    k_prev, k = 0, 1
    convergents.append(Fraction(h, k))
    for a in terms[1:]:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        convergents.append(Fraction(h, k))
    return convergents


def _expansion(alpha_exact: Fraction):
    """Full continued-fraction term list of an exact rational."""
    terms = []
    x = alpha_exact
    while True:
        a = math.floor(x)
        terms.append(a)
        frac = x - a
        if frac == 0:
            return terms
        x = 1 / frac


def dirichlet_approx(alpha: float, M: float) -> RationalApprox:
    """Best rational b/r with r <= M and |alpha - b/r| <= 1/(r*M).

    Walks the convergents of alpha until the denominator would pass M; the
    last one in range always satisfies the window inequality.  A single
    semiconvergent between that one and the first out-of-range convergent
    can approximate better while still fitting the window, so it is checked
    and preferred when it qualifies.
    """
    if not M >= 2:
        raise ValueError("window M must be >= 2")
    target = Fraction(alpha)
    M_exact = Fraction(M)
    h_prev, k_prev = 1, 0
    h, k = math.floor(target), 1
    terms = _expansion(target)
    for a in terms[1:]:
        h_next = a * h + h_prev
        k_next = a * k + k_prev
        if k_next > M:
            # largest semiconvergent denominator fitting under M
            cap = math.floor((M_exact - k_prev) / k)
            if 1 <= cap < a:
                sh, sk = cap * h + h_prev, cap * k + k_prev
                if abs(target - Fraction(sh, sk)) <= 1 / (sk * M_exact) and abs(
                    target - Fraction(sh, sk)
                ) < abs(target - Fraction(h, k)):
                    h, k = sh, sk
            break
        h_prev, k_prev = h, k
        h, k = h_next, k_next
    err = abs(target - Fraction(h, k))
    assert k <= M and err <= 1 / (k * M_exact)
    return RationalApprox(b=h, r=k, quality=float(err), M=M)


def approx_window(y: float) -> float:
    """The classification window exp(exp(loglog y / logloglog y)), capped.

    Near its small end the doubly exponential value overflows doubles; the
    returned window is clipped to M_CAP, which only matters when the true
    window is astronomically larger than any representable denominator.
    """
    if not y >= 16:
        raise ValueError("window needs y >= 16")
    inner = math.log(math.log(y)) / math.log(math.log(math.log(y)))
    if inner > 700 or math.exp(inner) > 700:
        return float(M_CAP)
    return min(math.exp(math.exp(inner)), float(M_CAP))


MINOR = "minor"
MAJOR_EXCEPTIONAL = "major-exceptional"
MAJOR_NONEXCEPTIONAL = "major-nonexceptional"


@dataclass(frozen=True)
class ArcClass:
    """Which estimate regime a phase falls in, relative to smoothness y."""

    tag: str
    approx: RationalApprox
    threshold: float  # log y
    exceptional_modulus: int
    margin: float  # |r - log y|, small means the tag is fragile

    def to_json(self, alpha: float | None = None) -> dict:
        out = {
            "b": self.approx.b,
            "r": self.approx.r,
            "quality": self.approx.quality,
            "M": self.approx.M,
            "arc_tag": self.tag,
            "margin": self.margin,
            "threshold": self.threshold,
            "exceptional_modulus": self.exceptional_modulus,
        }
        if alpha is not None:
            out["alpha"] = alpha
        return out


def classify_arc(
    alpha: float, y: float, m: int, M: float | None = None
) -> ArcClass:
    """Sort a phase into minor / major arcs relative to smoothness level y.

    The approximation window defaults to the capped doubly exponential one
    (approx_window); denominators above log y are minor, the rest are major
    and split by whether the exceptional modulus m divides the denominator.
    """
    if not y >= 16:
        raise ValueError("classification needs y >= 16")
    if m < 1:
        raise ValueError("exceptional modulus must be >= 1")
    window = approx_window(y) if M is None else M
    approx = dirichlet_approx(alpha, window)
    threshold = math.log(y)
    if approx.r > threshold:
        tag = MINOR
    elif approx.r % m == 0:
        tag = MAJOR_EXCEPTIONAL
    else:
        tag = MAJOR_NONEXCEPTIONAL
    return ArcClass(
        tag=tag,
        approx=approx,
        threshold=threshold,
        exceptional_modulus=m,
        margin=abs(approx.r - threshold),
    )


def effective_length(x: float, alpha: float, approx: RationalApprox) -> float:
    """min(x, 1/|r*alpha - b|): the sum length a rational reduction keeps.

    Exposed for diagnostics; downstream estimates are insensitive to its
    exact value.
    """
    denom = abs(approx.r * Fraction(alpha) - approx.b)
    if denom == 0:
        return float(x)
    return float(min(Fraction(x), 1 / denom))
