"""Deterministic compensated accumulation.

Every floating-point sum in this package that feeds a tolerance check goes
through these helpers.  math.fsum tracks all partial rounding errors, so the
result is the correctly rounded sum regardless of term order or how the work
was partitioned.
"""
from __future__ import annotations

import math
from typing import Iterable

import numpy as np


def fsum_real(values: Iterable[float]) -> float:
    return math.fsum(values)


def csum(values: Iterable[complex]) -> complex:
    """Correctly rounded complex sum (fsum on real and imaginary parts)."""
    vals = list(values)
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def csum_array(arr: np.ndarray) -> complex:
    a = np.asarray(arr)
    if a.size == 0:
        return 0j
    if np.iscomplexobj(a):
        return complex(math.fsum(a.real.tolist()), math.fsum(a.imag.tolist()))
    return complex(math.fsum(a.tolist()), 0.0)


class KahanAccumulator:
    """Streaming compensated accumulator for loops that cannot batch terms."""

    __slots__ = ("total", "carry")

    def __init__(self) -> None:
        self.total = 0.0
        self.carry = 0.0

    def add(self, value: float) -> None:
        y = value - self.carry
        t = self.total + y
        self.carry = (t - self.total) - y
        self.total = t

    @property
    def value(self) -> float:
        return self.total
