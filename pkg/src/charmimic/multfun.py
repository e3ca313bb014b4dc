"""Completely multiplicative functions with values in the closed unit disc.

A function is determined by its values on primes; composites follow by
complete multiplicativity.  Three extra knobs cover everything the sums
downstream need: an archimedean twist t (multiply each n by n^{it}), a
smoothness cutoff y (values vanish on any n with a prime factor above y),
and an explicit support bound P beyond which prime values are undefined.

Prime values come either from a finite dict (serializable) or from a backing
callable such as a Dirichlet character (unbounded support).  Bulk evaluation
over 1..x is done with a multiplicative sieve: one slice-multiply per prime
power, which keeps million-term sums cheap.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .arith import ResourceCapError, SUM_TERM_CAP, factor, prime_array
from .characters import DirichletCharacter

_UNIT_DISC_TOL = 1e-12


class SupportError(ValueError):
    """A prime value was requested beyond the declared support bound."""


@dataclass(frozen=True, eq=False)
class CMFunction:
    prime_values: Mapping[int, complex] = field(default_factory=dict)
    support: float = math.inf
    twist: float = 0.0
    smooth_cutoff: float = math.inf
    value_fn: Callable[[int], complex] | None = None
    name: str = "f"

    def __post_init__(self) -> None:
        for p, v in self.prime_values.items():
            if abs(v) > 1 + _UNIT_DISC_TOL:
                raise ValueError("value %r at prime %d lies outside the unit disc" % (v, p))
        if self.smooth_cutoff < 2 and not math.isinf(self.smooth_cutoff):
            raise ValueError("smoothness cutoff must be >= 2")

    def prime_value(self, p: int) -> complex:
        """Base value at a prime (twist not applied)."""
        if p > self.support:
            raise SupportError(
                "prime %d beyond support bound %g of %s" % (p, self.support, self.name)
            )
        if p in self.prime_values:
            return self.prime_values[p]
        if self.value_fn is not None:
            return self.value_fn(p)
        raise SupportError("no value stored for prime %d in %s" % (p, self.name))

    def __call__(self, n: int) -> complex:
        return evaluate(self, n)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "support": self.support,
            "twist": self.twist,
            "smooth_cutoff": None if math.isinf(self.smooth_cutoff) else self.smooth_cutoff,
        }

    def to_json(self) -> dict:
        if self.value_fn is not None and not self.prime_values:
            raise TypeError("only dict-backed functions serialize; materialize first")
        rec = self.describe()
        rec["primes"] = {str(p): [v.real, v.imag] for p, v in sorted(self.prime_values.items())}
        return rec

    @staticmethod
    def from_json(rec: dict) -> "CMFunction":
        primes = {int(p): complex(re, im) for p, (re, im) in rec["primes"].items()}
        cutoff = rec.get("smooth_cutoff")
        return CMFunction(
            prime_values=primes,
            support=rec.get("support", math.inf),
            twist=rec.get("twist", 0.0),
            smooth_cutoff=math.inf if cutoff is None else cutoff,
            name=rec.get("name", "f"),
        )


def evaluate(f: CMFunction, n: int) -> complex:
    """f(n) via the factorization of n; errors beyond the support bound."""
    if n < 1:
        raise ValueError("evaluate requires n >= 1, got %d" % n)
    out = 1 + 0j
    for p, e in factor(n).factors:
        if p > f.smooth_cutoff:
            return 0j
        out *= f.prime_value(p) ** e
    if f.twist:
        out *= complex(math.cos(f.twist * math.log(n)), math.sin(f.twist * math.log(n)))
    return out


def values_up_to(f: CMFunction, x: int) -> np.ndarray:
    """Array [f(0)=0, f(1), ..., f(x)] via a multiplicative sieve."""
    if x > SUM_TERM_CAP:
        raise ResourceCapError("bulk evaluation length %d exceeds cap %d" % (x, SUM_TERM_CAP))
    arr = np.ones(x + 1, dtype=np.complex128)
    arr[0] = 0.0
    if x >= 2:
        for p in prime_array(x).tolist():
            if p > f.smooth_cutoff:
                arr[p::p] = 0.0
                continue
            v = f.prime_value(p)
            pk = p
            while pk <= x:
                arr[pk::pk] *= v
                pk *= p
    if f.twist:
        n = np.arange(1, x + 1, dtype=np.float64)
        arr[1:] *= np.exp(1j * f.twist * np.log(n))
    return arr


def twist(f: CMFunction, t: float) -> CMFunction:
    """Multiply f by n^{it}; twists compose additively."""
    return CMFunction(
        prime_values=f.prime_values,
        support=f.support,
        twist=f.twist + t,
        smooth_cutoff=f.smooth_cutoff,
        value_fn=f.value_fn,
        name="%s*n^(%gi)" % (f.name, t),
    )


def smooth_restrict(f: CMFunction, y: float) -> CMFunction:
    """Zero out every n with a prime factor above y."""
    if not y >= 2:
        raise ValueError("smooth cutoff must be >= 2, got %r" % (y,))
    return CMFunction(
        prime_values=f.prime_values,
        support=f.support,
        twist=f.twist,
        smooth_cutoff=min(f.smooth_cutoff, y),
        value_fn=f.value_fn,
        name="%s|%g-smooth" % (f.name, y),
    )


def mul(f: CMFunction, g: CMFunction, conjugate_g: bool = False) -> CMFunction:
    """Pointwise product f*g (or f*conj(g)), again completely multiplicative."""
    sign = -1.0 if conjugate_g else 1.0

    def fn(p: int) -> complex:
        gv = g.prime_value(p)
        if conjugate_g:
            gv = gv.conjugate()
        return f.prime_value(p) * gv

    return CMFunction(
        prime_values={},
        support=min(f.support, g.support),
        twist=f.twist + sign * g.twist,
        smooth_cutoff=min(f.smooth_cutoff, g.smooth_cutoff),
        value_fn=fn,
        name="%s*%s%s" % (f.name, "conj " if conjugate_g else "", g.name),
    )


def one() -> CMFunction:
    return CMFunction(value_fn=lambda p: 1 + 0j, name="one")


def from_character(chi: DirichletCharacter) -> CMFunction:
    """Adapter: the completely multiplicative function p -> chi(p)."""
    return CMFunction(value_fn=chi.__call__, name="chi[%s]" % chi.label)


def from_prime_pattern(values: Mapping[int, complex], support: float | None = None) -> CMFunction:
    """Explicit prime table; support defaults to the largest listed prime."""
    vals = {int(p): complex(v) for p, v in values.items()}
    if support is None:
        support = max(vals) if vals else 2
    return CMFunction(prime_values=vals, support=support, name="pattern")


def random_unimodular(bound: float, rng: np.random.Generator) -> CMFunction:
    """Independent uniform phases on every prime up to bound."""
    primes = prime_array(bound).tolist()
    phases = rng.uniform(0.0, 1.0, size=len(primes))
    vals = {p: complex(np.exp(2j * np.pi * t)) for p, t in zip(primes, phases)}
    return CMFunction(prime_values=vals, support=float(bound), name="random-unimodular")


def random_disc(bound: float, rng: np.random.Generator) -> CMFunction:
    """Uniform radius-and-phase draws from the closed unit disc."""
    primes = prime_array(bound).tolist()
    phases = rng.uniform(0.0, 1.0, size=len(primes))
    radii = np.sqrt(rng.uniform(0.0, 1.0, size=len(primes)))
    vals = {
        p: complex(r * np.exp(2j * np.pi * t))
        for p, t, r in zip(primes, phases, radii)
    }
    return CMFunction(prime_values=vals, support=float(bound), name="random-disc")
