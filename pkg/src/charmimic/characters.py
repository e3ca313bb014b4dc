"""Dirichlet characters mod q as exponent vectors over a unit-group basis.

A character is stored as its exponent vector against the fixed generator
basis of (Z/qZ)^* from arith.unit_group: the character sending generator g_i
(of order s_i) to exp(2*pi*i * a_i / s_i).  Values are tracked exactly as
integers t modulo L (L = group exponent), meaning the value exp(2*pi*i*t/L);
complex numbers only appear at the final step.  This keeps value agreement,
orthogonality, order, conductor, and coset counts exact.

The canonical index of a character is the mixed-radix rank of its exponent
vector (first generator most significant), so enumeration order and CLI
addressing are stable across runs.  The trivial character mod 1 is included
and counts as primitive; it is the inducing character of every principal one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator

import numpy as np

from .accum import csum_array
from .arith import (
    GAUSS_Q_CAP,
    ResourceCapError,
    crt,
    factor,
    moebius,
    unit_group,
)


@lru_cache(maxsize=512)
def _roots_of_unity(L: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(L) / L)


def _v(p: int, a: int) -> int:
    """p-adic valuation of a > 0."""
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        group = unit_group(self.modulus)
        if len(self.exponents) != len(group.orders):
            raise ValueError(
                "expected %d exponents for modulus %d, got %d"
                % (len(group.orders), self.modulus, len(self.exponents))
            )
        for a, s in zip(self.exponents, group.orders):
            if not 0 <= a < s:
                raise ValueError("exponent %d out of range for order %d" % (a, s))

    # -- exact value machinery -------------------------------------------

    @property
    def group(self):
        return unit_group(self.modulus)

    @property
    def value_order(self) -> int:
        """L such that every value is a power of exp(2*pi*i/L)."""
        return self.group.exponent

    @property
    def _weights(self) -> tuple[int, ...]:
        w = self.__dict__.get("_weights_cache")
        if w is None:
            L = self.value_order
            w = tuple(
                a * (L // s) % L for a, s in zip(self.exponents, self.group.orders)
            )
            self.__dict__["_weights_cache"] = w
        return w

    def eval_exact(self, n: int) -> int | None:
        """t with chi(n) = exp(2*pi*i*t/L), or None when gcd(n, q) > 1."""
        q = self.modulus
        if q == 1:
            return 0
        n %= q
        if math.gcd(n, q) != 1:
            return None
        vec = self.group.dlog(n)
        L = self.value_order
        return sum(w * x for w, x in zip(self._weights, vec)) % L

    def __call__(self, n: int) -> complex:
        t = self.eval_exact(n)
        if t is None:
            return 0j
        return complex(_roots_of_unity(self.value_order)[t])

    # -- basic attributes ------------------------------------------------

    @property
    def is_principal(self) -> bool:
        return all(a == 0 for a in self.exponents)

    @property
    def order(self) -> int:
        out = 1
        for a, s in zip(self.exponents, self.group.orders):
            out = math.lcm(out, s // math.gcd(s, a))
        return out

    @property
    def parity(self) -> int:
        """chi(-1): +1 for even characters, -1 for odd ones."""
        if self.modulus <= 2:
            return 1
        t = self.eval_exact(self.modulus - 1)
        return 1 if t == 0 else -1

    @property
    def index(self) -> int:
        idx = 0
        for a, s in zip(self.exponents, self.group.orders):
            idx = idx * s + a
        return idx

    @property
    def label(self) -> str:
        return "q=%d,index=%d" % (self.modulus, self.index)

    # -- conductor and the inducing primitive character ------------------

    @property
    def conductor(self) -> int:
        """Smallest d | q such that the character is periodic mod d on units."""
        cond = 1
        exps = self.exponents
        for entry in self.group.layout:
            kind = entry[0]
            if kind == "odd":
                _, p, e, slot = entry
                a = exps[slot]
                if a:
                    cond *= p ** max(1, e - _v(p, a))
            elif kind == "four":
                if exps[entry[1]]:
                    cond *= 4
            else:
                _, slot_sign, slot_five, e = entry
                a5 = exps[slot_five]
                if a5:
                    cond *= 1 << (e - _v(2, a5))
                elif exps[slot_sign]:
                    cond *= 4
        return cond

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def primitive_part(self) -> "DirichletCharacter":
        """The primitive character that induces this one (itself if primitive)."""
        q, m = self.modulus, self.conductor
        if m == q:
            return self
        target = unit_group(m)
        q_powers = [(p, p**e) for p, e in factor(q).factors]
        exps = []
        for gen, s in zip(target.generators, target.orders):
            # lift gen to a unit mod q congruent to gen modulo m
            residues = []
            for p, pe in q_powers:
                residues.append((gen if m % p == 0 else 1, pe))
            lifted = crt(residues)
            t = self.eval_exact(lifted)
            if t is None:
                raise AssertionError("lift of %d is not a unit mod %d" % (gen, q))
            L = self.value_order
            num = t * s
            if num % L:
                raise AssertionError("induced value is not an order-%d root" % s)
            exps.append((num // L) % s)
        return DirichletCharacter(m, tuple(exps))

    # -- bulk values -----------------------------------------------------

    def values_array(self) -> np.ndarray:
        """chi(n) for n = 0..q-1 as complex128 (zeros off the unit group)."""
        q = self.modulus
        if q == 1:
            return np.ones(1, dtype=np.complex128)
        L = self.value_order
        roots = _roots_of_unity(L)
        arr = np.zeros(q, dtype=np.complex128)
        weights = self._weights
        table = self.group._table()
        if table is not None:
            for unit, vec in table.items():
                arr[unit] = roots[sum(w * x for w, x in zip(weights, vec)) % L]
        else:
            for n in range(1, q):
                t = self.eval_exact(n)
                if t is not None:
                    arr[n] = roots[t]
        return arr

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "exponent_vector": list(self.exponents),
            "order": self.order,
            "conductor": self.conductor,
            "parity": self.parity,
        }

    @staticmethod
    def from_json(record: dict) -> "DirichletCharacter":
        return DirichletCharacter(record["modulus"], tuple(record["exponent_vector"]))


# ---------------------------------------------------------------------------
# construction helpers

def principal(q: int) -> DirichletCharacter:
    return DirichletCharacter(q, tuple(0 for _ in unit_group(q).orders))


def character(q: int, index: int) -> DirichletCharacter:
    """Character with the given canonical index (0 <= index < phi(q))."""
    orders = unit_group(q).orders
    count = math.prod(orders) if orders else 1
    if not 0 <= index < count:
        raise ValueError("index %d out of range for modulus %d" % (index, q))
    exps = []
    for s in reversed(orders):
        exps.append(index % s)
        index //= s
    return DirichletCharacter(q, tuple(reversed(exps)))


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q in canonical (lexicographic) order."""
    orders = unit_group(q).orders
    return [
        DirichletCharacter(q, vec)
        for vec in product(*(range(s) for s in orders))
    ]


def chi_minus4() -> DirichletCharacter:
    """The odd quadratic character mod 4."""
    return DirichletCharacter(4, (1,))


def legendre(p: int) -> DirichletCharacter:
    """The quadratic residue character mod an odd prime p."""
    fac = factor(p).factors
    if len(fac) != 1 or fac[0][1] != 1 or p == 2:
        raise ValueError("legendre requires an odd prime, got %d" % p)
    return DirichletCharacter(p, ((p - 1) // 2,))


def induce(chi_star: DirichletCharacter, q: int) -> DirichletCharacter:
    """The character mod q induced by chi_star (conductor of chi_star | q)."""
    m = chi_star.modulus
    if q % m:
        raise ValueError("inducing modulus %d does not divide %d" % (m, q))
    group = unit_group(q)
    exps = []
    L = chi_star.value_order
    for gen, s in zip(group.generators, group.orders):
        t = chi_star.eval_exact(gen)
        if t is None:
            raise ValueError("generator %d shares a factor with %d" % (gen, m))
        num = t * s
        if num % L:
            raise ValueError("character does not extend to modulus %d" % q)
        exps.append((num // L) % s)
    out = DirichletCharacter(q, tuple(exps))
    return out


def primitive_characters(conductor_bound: float) -> list[DirichletCharacter]:
    """All primitive characters with conductor < conductor_bound.

    Includes the trivial character mod 1.  Ordered by (conductor, index) so
    downstream minimizations are deterministic.
    """
    out: list[DirichletCharacter] = []
    m = 1
    while m < conductor_bound:
        for chi in enumerate_characters(m):
            if chi.conductor == m:
                out.append(chi)
        m += 1
    return out


# ---------------------------------------------------------------------------
# Gauss sums and value-class counts

def gauss_sum(chi: DirichletCharacter) -> complex:
    """Direct sum of chi(n) * exp(2*pi*i*n/q) over n = 1..q."""
    q = chi.modulus
    if q > GAUSS_Q_CAP:
        raise ResourceCapError("gauss sum modulus %d exceeds cap %d" % (q, GAUSS_Q_CAP))
    if q == 1:
        return 1 + 0j
    vals = chi.values_array()
    phases = np.exp(2j * np.pi * np.arange(q) / q)
    return csum_array(vals * phases)


def gauss_sum_induced(chi: DirichletCharacter) -> complex:
    """Gauss sum through the inducing character: mu(q/m) chi*(q/m) tau(chi*)."""
    q = chi.modulus
    star = chi.primitive_part()
    m = star.modulus
    ratio = q // m
    return moebius(ratio) * star(ratio) * gauss_sum(star)


@lru_cache(maxsize=4096)
def _value_class_histogram(xi: DirichletCharacter) -> tuple[int, ...]:
    """Unit counts per value class e(c/k), c = 0..k-1, in one group pass."""
    k = xi.order
    L = xi.value_order
    step = L // k
    counts = [0] * k
    group = xi.group
    table = group._table()
    weights = xi._weights
    if table is not None:
        for vec in table.values():
            t = sum(w * x for w, x in zip(weights, vec)) % L
            counts[t // step] += 1
    else:
        for n in group.units():
            counts[xi.eval_exact(n) // step] += 1
    return tuple(counts)


def coset_count(xi: DirichletCharacter, ell: int) -> int:
    """#{a mod m : xi(a) = exp(2*pi*i*ell/k)} for xi of order k, exactly.

    The count equals phi(m)/k for every ell once xi is nonprincipal; that is
    what the verification suite checks.  Counts for all classes of one
    character come from a single cached pass over the unit group.
    """
    if xi.is_principal:
        raise ValueError("coset_count requires a nonprincipal character")
    return _value_class_histogram(xi)[ell % xi.order]


def characters_mod(q: int) -> Iterator[DirichletCharacter]:
    yield from enumerate_characters(q)
