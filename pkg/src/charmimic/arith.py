"""Exact integer substrate: sieves, factorization, unit groups, discrete logs.

Everything here is exact integer arithmetic; no floats.  The prime sieve is
cached in memory and persisted to disk so repeated command-line invocations
do not pay the sieve cost again.  Cache file format (version 1, plain text):

    charmimic-primes 1
    bound=<sieve bound>
    count=<number of primes>
    <all primes on one space-separated line>

The unit group of Z/qZ is represented by an explicit generator basis: trivial
for q in {1, 2}, the class of 3 for q = 4, the classes of -1 and 5 for higher
powers of two, and a fixed primitive root for odd prime powers.  Composite
moduli glue the local generators through the Chinese remainder theorem, so a
residue's exponent vector is computed componentwise.
"""
from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable

import numpy as np

SIEVE_CAP = 100_000_000
FACTOR_CAP = 10**15
GAUSS_Q_CAP = 10**6
SUM_TERM_CAP = 10**7
UNIT_TABLE_CAP = 300_000  # build a full dlog table when phi(q) stays below this
_PERSIST_MAX = 10**7
_CACHE_VERSION = 1

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class ResourceCapError(RuntimeError):
    """A request exceeded one of the configured resource caps."""


# ---------------------------------------------------------------------------
# prime sieve with disk-backed cache

_prime_state = {"bound": 0, "primes": np.empty(0, dtype=np.int64), "disk_bound": 0}
_cache_dir_override: Path | None = None


def set_cache_dir(path: str | os.PathLike | None) -> None:
    """Override the cache directory (None restores the default resolution)."""
    global _cache_dir_override
    _cache_dir_override = Path(path) if path is not None else None


def cache_dir() -> Path:
    if _cache_dir_override is not None:
        return _cache_dir_override
    env = os.environ.get("CHARMIMIC_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "charmimic"


def _cache_file() -> Path:
    return cache_dir() / ("primes-v%d.txt" % _CACHE_VERSION)


def _sieve(bound: int) -> np.ndarray:
    flags = np.ones(bound + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _load_disk_cache() -> None:
    path = _cache_file()
    try:
        with open(path, "r", encoding="ascii") as fh:
            header = fh.readline().split()
            if header != ["charmimic-primes", str(_CACHE_VERSION)]:
                return
            bound = int(fh.readline().strip().split("=", 1)[1])
            count = int(fh.readline().strip().split("=", 1)[1])
            primes = np.array(fh.readline().split(), dtype=np.int64)
    except (OSError, ValueError, IndexError):
        return
    if primes.size != count or bound <= _prime_state["bound"]:
        return
    _prime_state["primes"] = primes
    _prime_state["bound"] = bound
    _prime_state["disk_bound"] = bound


def _save_disk_cache(bound: int, primes: np.ndarray) -> None:
    if bound > _PERSIST_MAX or bound <= _prime_state["disk_bound"]:
        return
    directory = cache_dir()
    try:
        directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            fh.write("charmimic-primes %d\n" % _CACHE_VERSION)
            fh.write("bound=%d\n" % bound)
            fh.write("count=%d\n" % primes.size)
            fh.write(" ".join(map(str, primes.tolist())))
            fh.write("\n")
        os.replace(tmp, _cache_file())
        _prime_state["disk_bound"] = bound
    except OSError:
        pass  # cache is an optimization; never fail the computation


def prime_array(limit: float) -> np.ndarray:
    """Primes up to limit inclusive, as a shared int64 array (do not mutate)."""
    if limit > SIEVE_CAP:
        raise ResourceCapError("sieve bound %g exceeds cap %d" % (limit, SIEVE_CAP))
    bound = int(limit)
    if _prime_state["bound"] == 0:
        _load_disk_cache()
    if bound > _prime_state["bound"]:
        grown = max(bound, 2 * _prime_state["bound"], 1 << 16)
        grown = min(grown, SIEVE_CAP)
        _prime_state["primes"] = _sieve(grown)
        _prime_state["bound"] = grown
        _save_disk_cache(grown, _prime_state["primes"])
    primes = _prime_state["primes"]
    return primes[: int(np.searchsorted(primes, bound, side="right"))]


def primes_up_to(x: float) -> list[int]:
    """Ordered list of primes p <= x.  Requires x >= 2."""
    if not x >= 2:
        raise ValueError("primes_up_to requires x >= 2, got %r" % (x,))
    return prime_array(x).tolist()


# ---------------------------------------------------------------------------
# primality and factorization

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    # Brent's cycle variant; n must be odd, composite, not a prime power of 2.
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError("rho failed on %d" % n)


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes ascending

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def largest_prime(self) -> int:
        return self.factors[-1][0] if self.factors else 1


@lru_cache(maxsize=100_000)
def factor(n: int) -> Factorization:
    """Full factorization of n >= 1.  Multiplying back is checked in tests."""
    if n < 1:
        raise ValueError("factor requires n >= 1, got %d" % n)
    if n > FACTOR_CAP:
        raise ResourceCapError("factor argument %d exceeds cap %d" % (n, FACTOR_CAP))
    if n == 1:
        return Factorization(1, ())
    counts: dict[int, int] = {}
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        # small trial division first; rho only for the hard cofactor
        reduced = False
        for p in (2, 3, 5, 7, 11, 13):
            if m % p == 0:
                stack.append(p)
                stack.append(m // p)
                reduced = True
                break
        if reduced:
            continue
        limit = min(math.isqrt(m), 100_000)
        for p in prime_array(max(limit, 2)).tolist():
            if m % p == 0:
                stack.append(p)
                stack.append(m // p)
                reduced = True
                break
        if reduced:
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    items = sorted(counts.items())
    return Factorization(n, tuple(items))


def largest_prime_factor(n: int) -> int:
    return factor(n).largest_prime()


def is_smooth(n: int, y: float) -> bool:
    """True when every prime factor of n is <= y (n = 1 is always smooth)."""
    if n < 1:
        raise ValueError("is_smooth requires n >= 1")
    if math.isinf(y):
        return True
    return largest_prime_factor(n) <= y


def totient(n: int) -> int:
    result = 1
    for p, e in factor(n).factors:
        result *= p ** (e - 1) * (p - 1)
    return result


def moebius(n: int) -> int:
    fac = factor(n).factors
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def divisor_count(n: int) -> int:
    result = 1
    for _, e in factor(n).factors:
        result *= e + 1
    return result


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factor(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


# ---------------------------------------------------------------------------
# CRT and discrete logarithms

def crt(residues: Iterable[tuple[int, int]]) -> int:
    """Solve x = a (mod m) simultaneously; moduli must be pairwise coprime."""
    x, mod = 0, 1
    for a, m in residues:
        if m < 1:
            raise ValueError("moduli must be positive")
        g = math.gcd(mod, m)
        if g != 1:
            raise ValueError("moduli are not pairwise coprime")
        # combine: x' = x + mod * t with t chosen so x' = a (mod m)
        t = ((a - x) * pow(mod, -1, m)) % m
        x += mod * t
        mod *= m
    return x % mod


def multiplicative_order(a: int, n: int) -> int:
    if math.gcd(a, n) != 1:
        raise ValueError("%d is not a unit mod %d" % (a, n))
    t = totient(n)
    for p, _ in factor(t).factors:
        while t % p == 0 and pow(a, t // p, n) == 1:
            t //= p
    return t


def discrete_log(base: int, target: int, modulus: int, order: int | None = None) -> int:
    """Smallest k >= 0 with base^k = target (mod modulus), by baby-step giant-step.

    Raises ValueError when target is outside the subgroup generated by base.
    """
    base %= modulus
    target %= modulus
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if modulus == 1 or target == 1 % modulus:
        return 0
    if math.gcd(base, modulus) != 1 or math.gcd(target, modulus) != 1:
        raise ValueError("discrete_log requires unit arguments")
    if order is None:
        order = multiplicative_order(base, modulus)
    m = math.isqrt(order) + 1
    baby: dict[int, int] = {}
    cur = 1
    for j in range(m):
        baby.setdefault(cur, j)
        cur = cur * base % modulus
    giant = pow(base, -m, modulus)
    gamma = target
    for i in range(m + 1):
        j = baby.get(gamma)
        if j is not None:
            k = i * m + j
            if k < order and pow(base, k, modulus) == target:
                return k
        gamma = gamma * giant % modulus
    raise ValueError("target %d is not in the subgroup generated by %d mod %d"
                     % (target, base, modulus))


@lru_cache(maxsize=4096)
def primitive_root(pe: int) -> int:
    """Smallest primitive root mod an odd prime power (stable across calls)."""
    fac = factor(pe).factors
    if len(fac) != 1 or fac[0][0] == 2:
        raise ValueError("%d is not an odd prime power" % pe)
    p, e = fac[0]
    pfac = [f for f, _ in factor(p - 1).factors]
    g = 2
    while True:
        if all(pow(g, (p - 1) // f, p) != 1 for f in pfac):
            break
        g += 1
    if e == 1:
        return g
    # a primitive root mod p^2 stays primitive for every higher power
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


# ---------------------------------------------------------------------------
# unit group structure

@dataclass(frozen=True)
class UnitGroup:
    """Generator basis of (Z/qZ)^* with componentwise discrete logs."""

    modulus: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    exponent: int  # lcm of the generator orders (1 for the trivial group)
    # layout entries describe how generator slots map to prime powers:
    #   ("odd", p, e, slot)          cyclic component of an odd prime power
    #   ("four", slot)               the order-2 component of q = 4
    #   ("two", slot_sign, slot_five, e)   sign and 5-power components, e >= 3
    layout: tuple[tuple, ...]

    @property
    def order(self) -> int:
        return math.prod(self.orders) if self.orders else 1

    def _component_dlog(self, entry: tuple, n: int) -> list[tuple[int, int]]:
        kind = entry[0]
        if kind == "odd":
            _, p, e, slot = entry
            pe = p**e
            r = primitive_root(pe)
            return [(slot, discrete_log(r, n % pe, pe, order=totient(pe)))]
        if kind == "four":
            return [(entry[1], 0 if n % 4 == 1 else 1)]
        _, slot_sign, slot_five, e = entry
        pe = 1 << e
        sign = 0 if n % 4 == 1 else 1
        m = n % pe if sign == 0 else (-n) % pe
        b = discrete_log(5, m, pe, order=1 << (e - 2))
        return [(slot_sign, sign), (slot_five, b)]

    def dlog(self, n: int) -> tuple[int, ...]:
        """Exponent vector of the unit n in the generator basis."""
        q = self.modulus
        n %= q
        if q == 1:
            return ()
        if math.gcd(n, q) != 1:
            raise ValueError("%d is not a unit mod %d" % (n, q))
        table = self._table()
        if table is not None:
            return table[n]
        vec = [0] * len(self.generators)
        for entry in self.layout:
            for slot, value in self._component_dlog(entry, n):
                vec[slot] = value
        return tuple(vec)

    def _table(self) -> dict[int, tuple[int, ...]] | None:
        if self.order > UNIT_TABLE_CAP:
            return None
        cached = self.__dict__.get("_value_table")
        if cached is None:
            cached = self._build_table()
            self.__dict__["_value_table"] = cached
        return cached

    def _build_table(self) -> dict[int, tuple[int, ...]]:
        q = self.modulus
        table: dict[int, tuple[int, ...]] = {1 % q: ()}
        for gen, order in zip(self.generators, self.orders):
            grown: dict[int, tuple[int, ...]] = {}
            power = 1
            for k in range(order):
                for unit, vec in table.items():
                    grown[unit * power % q] = vec + (k,)
                power = power * gen % q
            table = grown
        return table

    def units(self) -> list[int]:
        """All units mod q in ascending residue order."""
        table = self._table()
        if table is not None:
            return sorted(table)
        q = self.modulus
        return [n for n in range(q) if math.gcd(n, q) == 1] if q > 1 else [0]


@lru_cache(maxsize=4096)
def unit_group(q: int) -> UnitGroup:
    if q < 1:
        raise ValueError("modulus must be >= 1")
    generators: list[int] = []
    orders: list[int] = []
    layout: list[tuple] = []
    for p, e in factor(q).factors:
        pe = p**e
        cof = q // pe
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                g = crt([(3, pe), (1, cof)]) if cof > 1 else 3
                layout.append(("four", len(generators)))
                generators.append(g)
                orders.append(2)
            else:
                gs = crt([(pe - 1, pe), (1, cof)]) if cof > 1 else pe - 1
                gf = crt([(5, pe), (1, cof)]) if cof > 1 else 5
                layout.append(("two", len(generators), len(generators) + 1, e))
                generators.extend([gs, gf])
                orders.extend([2, 1 << (e - 2)])
        else:
            r = primitive_root(pe)
            g = crt([(r, pe), (1, cof)]) if cof > 1 else r
            layout.append(("odd", p, e, len(generators)))
            generators.append(g)
            orders.append(totient(pe))
    exponent = math.lcm(*orders) if orders else 1
    return UnitGroup(q, tuple(generators), tuple(orders), exponent, tuple(layout))
