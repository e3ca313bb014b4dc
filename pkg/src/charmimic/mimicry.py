"""How closely one multiplicative function imitates another.

The central quantity is a prime-weighted pseudometric: the squared distance
between f and g up to X is the sum over primes p <= X of
(1 - Re f(p)*conj(g(p)))/p.  Minimizing that distance from f to the family
of continuous twists n^(i*t) over a window |t| <= T gives the
nearest-twist distance; minimizing further over primitive characters times
twists identifies which character f is really imitating.

The twist minimization is a dense grid pass followed by golden-section
refinement.  The objective's t-derivative is at most sum(log p / p) over
p <= X, which is about log X, so a grid step of 0.1/log X cannot step over
a basin, and the refinement then pins the minimizer to 1e-9.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .accum import fsum_real
from .arith import prime_array
from .characters import DirichletCharacter, primitive_characters
from .ioutil import open_text_sink
from .multfun import CMFunction, from_character, mul

GRID_STEP_FACTOR = 0.1
REFINE_TOL = 1e-9
_CHUNK = 64
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class MimicryReport:
    """Result of a distance computation, possibly minimized over twists."""

    distance_sq: float
    minimizing_t: float
    X: float
    T: float
    grid_step: float
    grid_points: int
    refine_tol: float

    def to_json(self) -> dict:
        return {
            "distance_sq": self.distance_sq,
            "minimizing_t": self.minimizing_t,
            "prime_cutoff": self.X,
            "twist_window": self.T,
            "grid_step": self.grid_step,
            "grid_points": self.grid_points,
            "refine_tol": self.refine_tol,
        }


@lru_cache(maxsize=32)
def _prime_data(X: float):
    primes = prime_array(X)
    pf = primes.astype(np.float64)
    return primes, np.log(pf), 1.0 / pf


def _prime_values(f: CMFunction, primes: np.ndarray) -> np.ndarray:
    """f at each prime, with the twist and smooth cutoff applied."""
    vals = np.empty(len(primes), dtype=np.complex128)
    for i, p in enumerate(primes.tolist()):
        vals[i] = f.prime_value(p)
    if f.twist:
        vals *= np.exp(1j * f.twist * np.log(primes.astype(np.float64)))
    if math.isfinite(f.smooth_cutoff):
        vals[primes > f.smooth_cutoff] = 0.0
    return vals


def distance_sq(f: CMFunction, g: CMFunction, X: float) -> float:
    """Squared pseudometric between f and g over primes up to X."""
    primes, _, w = _prime_data(X)
    if len(primes) == 0:
        return 0.0
    prod = _prime_values(f, primes) * np.conj(_prime_values(g, primes))
    return fsum_real((1.0 - prod.real) * w)


def distance(f: CMFunction, g: CMFunction, X: float) -> float:
    return math.sqrt(max(distance_sq(f, g, X), 0.0))


class _TwistObjective:
    """t -> squared distance from f to the pure twist n^(i*t), vectorized."""

    def __init__(self, f: CMFunction, X: float):
        primes, lp, w = _prime_data(X)
        v = _prime_values(f, primes) if len(primes) else np.empty(0, complex)
        self.lp = lp
        self.wa = w * v.real
        self.wb = w * v.imag
        self.w_total = fsum_real(w)
        self._w = w
        self._v = v

    def grid(self, ts: np.ndarray) -> np.ndarray:
        out = np.empty(len(ts))
        for lo in range(0, len(ts), _CHUNK):
            block = np.outer(ts[lo : lo + _CHUNK], self.lp)
            out[lo : lo + _CHUNK] = (
                self.w_total
                - np.cos(block) @ self.wa
                - np.sin(block) @ self.wb
            )
        return out

    def at(self, t: float) -> float:
        tl = t * self.lp
        return self.w_total - np.dot(np.cos(tl), self.wa) - np.dot(np.sin(tl), self.wb)

    def exact(self, t: float) -> float:
        """Compensated evaluation, used for the reported final value."""
        if len(self.lp) == 0:
            return 0.0
        prod = self._v * np.exp(-1j * t * self.lp)
        return fsum_real((1.0 - prod.real) * self._w)


def _golden_min(fn, a: float, b: float, tol: float):
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    while (b - a) > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    return 0.5 * (a + b)


def nearest_twist_distance(f: CMFunction, X: float, T: float) -> MimicryReport:
    """Minimum squared distance from f to any twist n^(i*t) with |t| <= T."""
    if T < 0:
        raise ValueError("twist window T must be >= 0")
    obj = _TwistObjective(f, X)
    step = GRID_STEP_FACTOR / max(math.log(max(X, 4.0)), 1.0)
    if T == 0:
        return MimicryReport(obj.exact(0.0), 0.0, X, T, step, 1, REFINE_TOL)
    n = int(math.ceil(T / step))
    ts = np.concatenate([np.arange(-n, n + 1) * step, [-T, T]])
    ts = np.unique(np.clip(ts, -T, T))
    values = obj.grid(ts)
    best = int(np.argmin(values))
    lo = max(ts[best] - step, -T)
    hi = min(ts[best] + step, T)
    t_min = _golden_min(obj.at, lo, hi, REFINE_TOL)
    # the grid point itself may beat the refined edge in flat basins
    if obj.at(t_min) > values[best]:
        t_min = float(ts[best])
    return MimicryReport(obj.exact(t_min), float(t_min), X, T, step, len(ts), REFINE_TOL)


@dataclass
class NearestResult:
    """Primitive character (and twist) that f imitates most closely."""

    character: DirichletCharacter
    conductor: int
    report: MimicryReport
    runner_up_character: DirichletCharacter | None
    runner_up_conductor: int | None
    runner_up_report: MimicryReport | None

    def to_json(self) -> dict:
        out = {
            "character": self.character.to_json(),
            "conductor": self.conductor,
            "report": self.report.to_json(),
        }
        if self.runner_up_character is not None:
            out["runner_up"] = {
                "character": self.runner_up_character.to_json(),
                "conductor": self.runner_up_conductor,
                "report": self.runner_up_report.to_json(),
            }
        return out


def nearest_primitive(f: CMFunction, y: float, conductor_bound: int) -> NearestResult:
    """Search primitive characters of conductor < bound for the best mimic.

    Ranks candidates by the nearest-twist distance of f * conj(psi) up to y
    with window (log y)^2; ties break to the smaller conductor, then the
    smaller character index, so repeated calls return the same character.
    """
    if conductor_bound < 1:
        raise ValueError("conductor_bound must be >= 1")
    T = math.log(y) ** 2
    ranked = []
    for psi in primitive_characters(conductor_bound):
        h = mul(f, from_character(psi), conjugate_g=True)
        rep = nearest_twist_distance(h, y, T)
        ranked.append((rep.distance_sq, psi.conductor, psi.index, psi, rep))
    ranked.sort(key=lambda r: r[:3])
    best = ranked[0]
    second = ranked[1] if len(ranked) > 1 else None
    return NearestResult(
        character=best[3],
        conductor=best[1],
        report=best[4],
        runner_up_character=second[3] if second else None,
        runner_up_conductor=second[1] if second else None,
        runner_up_report=second[4] if second else None,
    )


@dataclass
class ScanTable:
    """Distance ratios over a twist grid, against a closed-form reference."""

    betas: np.ndarray
    distances: np.ndarray
    ratios: np.ndarray
    y: float
    reference: float
    min_ratio: float
    min_beta: float

    @property
    def slack(self) -> float:
        return self.min_ratio - self.reference

    def write_csv(self, sink) -> None:
        with open_text_sink(sink) as fh:
            fh.write("beta,distance_sq,ratio\n")
            for b, d, r in zip(self.betas, self.distances, self.ratios):
                fh.write("%.17g,%.17g,%.17g\n" % (b, d, r))

    def to_json(self) -> dict:
        return {
            "y": self.y,
            "reference": self.reference,
            "min_ratio": self.min_ratio,
            "min_beta": self.min_beta,
            "slack": self.slack,
            "rows": [
                {"beta": float(b), "distance_sq": float(d), "ratio": float(r)}
                for b, d, r in zip(self.betas, self.distances, self.ratios)
            ],
        }


def distance_ratio_scan(
    chi: DirichletCharacter,
    xi: DirichletCharacter,
    y: float,
    beta_grid: np.ndarray,
) -> ScanTable:
    """Scan the squared distance from chi to xi * n^(i*beta), scaled by loglog y.

    Requires chi even of odd order at least 3 and xi odd; the scaled minimum
    is reported next to the closed-form defect of the nearest root
    approximation for that order (theory module), with the gap left to the
    caller to judge: the comparison is asymptotic, so nothing is asserted.
    """
    from .theory import root_approx_defect

    if chi.parity != 1:
        raise ValueError("chi must be an even character")
    g = chi.order
    if g < 3 or g % 2 == 0:
        raise ValueError("chi must have odd order >= 3, got order %d" % g)
    if xi.parity != -1:
        raise ValueError("xi must be an odd character")
    if not y > math.e:
        raise ValueError("y must exceed e so that loglog y is positive")
    primes, lp, w = _prime_data(y)
    vc = _prime_values(from_character(chi), primes)
    vx = _prime_values(from_character(xi), primes)
    h = vc * np.conj(vx)
    wa, wb = w * h.real, w * h.imag
    w_total = fsum_real(w)
    betas = np.asarray(beta_grid, dtype=np.float64)
    dists = np.empty(len(betas))
    for lo in range(0, len(betas), _CHUNK):
        block = np.outer(betas[lo : lo + _CHUNK], lp)
        dists[lo : lo + _CHUNK] = w_total - np.cos(block) @ wa - np.sin(block) @ wb
    lly = math.log(math.log(y))
    ratios = dists / lly
    best = int(np.argmin(ratios))
    return ScanTable(
        betas=betas,
        distances=dists,
        ratios=ratios,
        y=y,
        reference=root_approx_defect(g),
        min_ratio=float(ratios[best]),
        min_beta=float(betas[best]),
    )


@dataclass
class EquidistTable:
    """Reciprocal prime-sum mass in each value class of a character."""

    order: int
    class_sums: list[float]
    total: float
    max_deviation: float

    def ratios(self) -> list[float]:
        return [s / self.total for s in self.class_sums]

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "class_sums": self.class_sums,
            "total": self.total,
            "ratios": self.ratios(),
            "max_deviation": self.max_deviation,
        }


def equidistribution_diagnostic(xi: DirichletCharacter, y: float) -> EquidistTable:
    """Compare per-class sums of 1/p (classes by value of xi) to their mean.

    Splits primes p <= y coprime to the modulus by which k-th root of unity
    xi takes at p, sums 1/p in each class, and reports the largest relative
    deviation from the uniform share 1/k.
    """
    if xi.is_principal:
        raise ValueError("the diagnostic needs a nonprincipal character")
    k = xi.order
    L = xi.group.exponent
    step = L // k
    m = xi.modulus
    primes, _, _ = _prime_data(y)
    buckets: list[list[float]] = [[] for _ in range(k)]
    for p in primes.tolist():
        if m % p == 0:
            continue
        t = xi.eval_exact(p)
        buckets[(t // step) % k].append(1.0 / p)
    class_sums = [fsum_real(b) for b in buckets]
    total = fsum_real([1.0 / p for p in primes.tolist() if m % p != 0])
    if total <= 0:
        raise ValueError("no primes coprime to the modulus below y = %g" % y)
    dev = max(abs(s / total - 1.0 / k) for s in class_sums)
    return EquidistTable(order=k, class_sums=class_sums, total=total, max_deviation=dev)
