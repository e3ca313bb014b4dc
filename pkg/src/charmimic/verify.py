"""Verification suites: identity and closed-form checks with case reports.

Each suite runs a family of exact or high-precision checks and returns a
SuiteReport of per-case results.  Suites are deterministic: randomized
cases draw from a generator seeded by the run config, and reports sort by
case name, so a repeated run with the same config emits byte-identical
CSV.  Suite names form a CLI contract: gauss, gs-identity, summin, coset,
triangle, vanishing.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .characters import (
    coset_count,
    enumerate_characters,
    gauss_sum,
    primitive_characters,
)
from .config import RunConfig
from .expsums import twisted_sum_sides, two_sided_sum
from .ioutil import open_text_sink
from .mimicry import distance_sq
from .multfun import (
    from_character,
    mul,
    one,
    random_disc,
    random_unimodular,
    twist,
)
from .theory import MinAverageParams, min_average_closed, min_average_direct
from .arith import totient


@dataclass
class CaseResult:
    name: str
    passed: bool
    error: float
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "error": self.error,
            "detail": self.detail,
        }


@dataclass
class SuiteReport:
    suite: str
    cases: list = field(default_factory=list)
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def failures(self) -> list:
        return [c for c in self.cases if not c.passed]

    def sorted_cases(self) -> list:
        return sorted(self.cases, key=lambda c: c.name)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "case_count": len(self.cases),
            "failure_count": len(self.failures),
            "duration_seconds": self.duration,
            "cases": [c.to_json() for c in self.sorted_cases()],
        }

    def write_csv(self, sink) -> None:
        with open_text_sink(sink) as fh:
            fh.write("name,passed,error,detail\n")
            for c in self.sorted_cases():
                fh.write(
                    '%s,%s,%.17g,"%s"\n'
                    % (c.name, "pass" if c.passed else "FAIL", c.error, c.detail)
                )


def _timed(fn):
    def run(config: RunConfig) -> SuiteReport:
        t0 = time.perf_counter()
        report = fn(config)
        report.duration = time.perf_counter() - t0
        return report

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


@_timed
def suite_gauss(config: RunConfig) -> SuiteReport:
    """|gauss_sum| = sqrt(q) for every primitive character with q <= 200."""
    report = SuiteReport("gauss")
    by_q: dict[int, float] = {}
    counts: dict[int, int] = {}
    for chi in primitive_characters(201):
        dev = abs(abs(gauss_sum(chi)) - math.sqrt(chi.modulus))
        by_q[chi.modulus] = max(by_q.get(chi.modulus, 0.0), dev)
        counts[chi.modulus] = counts.get(chi.modulus, 0) + 1
    for q in sorted(by_q):
        report.cases.append(
            CaseResult(
                name="gauss-magnitude-q%03d" % q,
                passed=by_q[q] <= config.gauss_tol,
                error=by_q[q],
                detail="%d primitive characters" % counts[q],
            )
        )
    return report


def _identity_cases(config: RunConfig):
    rng = np.random.default_rng(config.seed)
    yield "hand-case", one(), 1, 2, 4.0, math.inf
    produced = 0
    while produced < 100:
        r = int(rng.integers(1, 31))
        b = int(rng.integers(0, max(r, 1)))
        if math.gcd(b, r) != 1:
            continue
        N = float(rng.integers(2, 2001))
        y = [10.0, 50.0, math.inf][int(rng.integers(0, 3))]
        kind = int(rng.integers(0, 3))
        if kind == 0:
            f = random_unimodular(2000, rng)
        elif kind == 1:
            f = random_disc(2000, rng)
        else:
            chars = enumerate_characters(int(rng.integers(3, 13)))
            f = from_character(chars[int(rng.integers(0, len(chars)))])
        produced += 1
        yield "random-%03d" % produced, f, b, r, N, y


@_timed
def suite_gs_identity(config: RunConfig) -> SuiteReport:
    """Direct twisted sums equal their divisor-and-character expansion."""
    report = SuiteReport("gs-identity")
    for name, f, b, r, N, y in _identity_cases(config):
        lhs, rhs = twisted_sum_sides(f, b, r, N, y)
        err = abs(lhs - rhs)
        tol = config.identity_rel_tol * (1 + abs(lhs))
        detail = "b=%d r=%d N=%g y=%s" % (b, r, N, y)
        if name == "hand-case":
            hand_err = abs(lhs - (-7.0 / 12.0))
            report.cases.append(
                CaseResult(
                    name="hand-value",
                    passed=hand_err <= config.exact_tol,
                    error=hand_err,
                    detail="expected -7/12",
                )
            )
        report.cases.append(
            CaseResult(name=name, passed=err <= tol, error=err, detail=detail)
        )
    return report


@_timed
def suite_summin(config: RunConfig) -> SuiteReport:
    """Brute-force min-average equals its closed form across the grid."""
    report = SuiteReport("summin")
    thetas = [-0.5 + i / 101.0 for i in range(1, 102)]
    for g in (3, 5, 7, 9, 15):
        for k in range(2, 25, 2):
            worst = 0.0
            for theta in thetas:
                params = MinAverageParams(g, k, theta)
                worst = max(
                    worst,
                    abs(min_average_direct(params) - min_average_closed(params)),
                )
            report.cases.append(
                CaseResult(
                    name="grid-g%02d-k%02d" % (g, k),
                    passed=worst <= config.exact_tol,
                    error=worst,
                    detail="101 theta points",
                )
            )
    hand = abs(min_average_direct(MinAverageParams(3, 2, 0.0)) - 0.25)
    report.cases.append(
        CaseResult(
            name="hand-g03-k02-theta0",
            passed=hand <= config.exact_tol,
            error=hand,
            detail="expected 1/4",
        )
    )
    return report


@_timed
def suite_coset(config: RunConfig) -> SuiteReport:
    """Every value class of a nonprincipal character has phi(m)/k members."""
    report = SuiteReport("coset")
    for m in range(3, 201):
        phi = totient(m)
        bad = 0
        checked = 0
        for xi in enumerate_characters(m):
            if xi.is_principal:
                continue
            k = xi.order
            expect = phi // k
            for ell in range(k):
                checked += 1
                if coset_count(xi, ell) != expect:
                    bad += 1
        report.cases.append(
            CaseResult(
                name="coset-m%03d" % m,
                passed=bad == 0,
                error=float(bad),
                detail="%d class counts" % checked,
            )
        )
    return report


@_timed
def suite_triangle(config: RunConfig) -> SuiteReport:
    """Pseudometric triangle inequality over seeded random quadruples."""
    report = SuiteReport("triangle")
    rng = np.random.default_rng(config.seed + 1)
    X = 10_000.0

    def pick():
        kind = int(rng.integers(0, 3))
        if kind == 0:
            return random_unimodular(X, rng)
        if kind == 1:
            chars = enumerate_characters(int(rng.integers(3, 17)))
            return from_character(chars[int(rng.integers(0, len(chars)))])
        return twist(random_unimodular(X, rng), float(rng.uniform(-3, 3)))

    block_worst: dict[int, float] = {}
    for i in range(500):
        f1, g1, f2, g2 = pick(), pick(), pick(), pick()
        lhs = math.sqrt(max(distance_sq(f1, g1, X), 0.0)) + math.sqrt(
            max(distance_sq(f2, g2, X), 0.0)
        )
        rhs = math.sqrt(max(distance_sq(mul(f1, f2), mul(g1, g2), X), 0.0))
        margin = lhs - rhs
        blk = i // 50
        block_worst[blk] = min(block_worst.get(blk, math.inf), margin)
    for blk in sorted(block_worst):
        worst = block_worst[blk]
        report.cases.append(
            CaseResult(
                name="quadruples-%02d" % blk,
                passed=worst >= -1e-10,
                error=max(0.0, -worst),
                detail="50 quadruples, min margin %.3g" % worst,
            )
        )
    return report


@_timed
def suite_vanishing(config: RunConfig) -> SuiteReport:
    """Two-sided twisted sums vanish identically for even characters at 0."""
    report = SuiteReport("vanishing")
    for q in range(1, 101):
        worst = 0.0
        count = 0
        for chi in enumerate_characters(q):
            if chi.parity != 1:
                continue
            count += 1
            worst = max(worst, abs(two_sided_sum(chi, 500.0, 0.0, math.inf)))
        if count:
            report.cases.append(
                CaseResult(
                    name="vanishing-q%03d" % q,
                    passed=worst <= config.exact_tol,
                    error=worst,
                    detail="%d even characters" % count,
                )
            )
    return report


SUITES = {
    "gauss": suite_gauss,
    "gs-identity": suite_gs_identity,
    "summin": suite_summin,
    "coset": suite_coset,
    "triangle": suite_triangle,
    "vanishing": suite_vanishing,
}


def run_suite(name: str, config: RunConfig) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(
            "unknown suite %r; choose from %s" % (name, ", ".join(sorted(SUITES)))
        )
    return SUITES[name](config)
