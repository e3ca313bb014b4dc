"""Search for characters of odd order with forced-large partial sums.

The driving idea: fix an auxiliary odd character xi and, for each prime p,
pick the g-th root of unity whose direction best aligns with conj(xi(p)).
A character of order g agreeing with those picks on an initial stretch of
primes inherits a large reciprocal prime sum, hence a large partial-sum
maximum.  Here this is realized at desk scale by scanning prime moduli
q = 1 (mod g): for such q the characters of exact order g are read off a
g-th power residue symbol, so per-modulus matching costs a handful of
modular exponentiations and no primitive-root search; only the rare
survivors pay for a full value table and partial-sum maximum.

The quadratic (Legendre) family is the classical benchmark and gets its
own scan with integer-exact partial sums.

Sweeps persist one JSON record per line next to a small state file, so an
interrupted scan resumes after the last completed modulus, and parallel
chunks merge in modulus order to keep output deterministic.
"""
from __future__ import annotations

import json
import math
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .accum import fsum_real
from .arith import factor, is_prime, prime_array, primes_up_to, primitive_root
from .characters import DirichletCharacter, _roots_of_unity
from .ioutil import open_text_sink
from .theory import root_approx_defect


@dataclass(frozen=True)
class TargetPattern:
    """Per-prime root-of-unity targets aligned against an odd character.

    exponents maps each prime p <= prime_bound to a in [0, g) meaning the
    target value e(a/g).  Primes dividing g stay in the map but matching
    skips them; ramified primes of xi align to a = 0 by the tie-break.
    """

    g: int
    xi: DirichletCharacter
    prime_bound: int
    exponents: dict
    achieved_sum: float

    def root_value(self, p: int) -> complex:
        a = self.exponents[p]
        return complex(
            math.cos(2 * math.pi * a / self.g), math.sin(2 * math.pi * a / self.g)
        )

    def matching_primes(self) -> list[int]:
        """Pattern primes that participate in matching: p coprime to g."""
        return [p for p in sorted(self.exponents) if self.g % p != 0]

    def alignment_ratio(self) -> float:
        """achieved_sum relative to the unramified reciprocal prime mass."""
        m = self.xi.modulus
        total = fsum_real(
            1.0 / p for p in sorted(self.exponents) if m % p != 0
        )
        return self.achieved_sum / total if total else 0.0

    def to_json(self) -> dict:
        return {
            "order": self.g,
            "xi": self.xi.to_json(),
            "prime_bound": self.prime_bound,
            "exponents": {str(p): a for p, a in sorted(self.exponents.items())},
            "achieved_sum": self.achieved_sum,
        }


def build_target(g: int, xi: DirichletCharacter, P: int) -> TargetPattern:
    """Best-aligned g-th root target at every prime up to P.

    The argmax of Re(z * conj(xi(p))) over z in the g-th roots is solved in
    exact rational arithmetic on the exponents, so ties are broken exactly:
    smallest root argument wins.  The zero candidate never wins for odd g
    (some root always has Re at least cos(pi/g) times |xi(p)|, which is
    nonnegative), so every target is a genuine root.
    """
    if g < 3 or g % 2 == 0:
        raise ValueError("order g must be odd and >= 3")
    if xi.parity != -1:
        raise ValueError("xi must be an odd character")
    if P < 2:
        raise ValueError("prime bound must be >= 2")
    L = xi.group.exponent
    exponents: dict[int, int] = {}
    aligned = []
    m = xi.modulus
    for p in primes_up_to(P):
        if m % p == 0:
            exponents[p] = 0
            continue
        t = xi.eval_exact(p)
        best_a = 0
        best_dist = None
        for a in range(g):
            # circular distance of a/g - t/L from 0, exactly
            off = Fraction(a, g) - Fraction(t, L)
            off -= round(off)
            dist = abs(off)
            if best_dist is None or dist < best_dist:
                best_a, best_dist = a, dist
        exponents[p] = best_a
        aligned.append(
            math.cos(2 * math.pi * (best_a / g - t / L)) / p
        )
    return TargetPattern(
        g=g,
        xi=xi,
        prime_bound=P,
        exponents=exponents,
        achieved_sum=fsum_real(aligned),
    )


@dataclass(frozen=True)
class GrowthRecord:
    """One character's partial-sum maximum against its growth normalization."""

    q: int
    index: int
    order: int
    max_abs: float
    ratio: float  # max_abs / (sqrt(q) * (loglog q)^norm_exponent)
    matched_prefix: int
    norm_exponent: float

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "index": self.index,
            "order": self.order,
            "max_abs": self.max_abs,
            "ratio": self.ratio,
            "matched_prefix": self.matched_prefix,
            "norm_exponent": self.norm_exponent,
        }

    @classmethod
    def from_json(cls, row: dict) -> "GrowthRecord":
        return cls(
            q=row["q"],
            index=row["index"],
            order=row["order"],
            max_abs=row["max_abs"],
            ratio=row["ratio"],
            matched_prefix=row["matched_prefix"],
            norm_exponent=row["norm_exponent"],
        )


def _order_g_element(q: int, g: int) -> int:
    """Element of exact multiplicative order g modulo prime q = 1 (mod g)."""
    cof = (q - 1) // g
    prime_divs = [p for p, _ in factor(g).factors]
    x = 2
    while True:
        z = pow(x, cof, q)
        if z != 1 and all(pow(z, g // ell, q) != 1 for ell in prime_divs):
            return z
        x += 1


def _symbol_index(q: int, g: int):
    """Residue-symbol machinery: (zeta, index table over the order-g subgroup)."""
    zeta = _order_g_element(q, g)
    table = {}
    acc = 1
    for k in range(g):
        table[acc] = k
        acc = acc * zeta % q
    return zeta, table


def _match_span(pattern: TargetPattern, q: int, g: int, j: int, table: dict) -> int:
    """Largest verified bound P with chi_j(p) = target on all p <= P, p coprime to g."""
    cof = (q - 1) // g
    matched = 0
    for p in sorted(pattern.exponents):
        if g % p == 0:
            continue
        if p % q == 0:
            break
        sym = pow(p, cof, q)
        if (j * table[sym]) % g != pattern.exponents[p]:
            break
        matched = p
    else:
        return pattern.prime_bound
    return matched


def _canonical_index(q: int, g: int, j: int, zeta: int, table: dict) -> int:
    """Exponent of chi_j with respect to the smallest primitive root mod q."""
    w = primitive_root(q)
    c = table[pow(w, (q - 1) // g, q)]
    return (j * c) % g * ((q - 1) // g)


def _values_by_root_walk(q: int, a: int) -> np.ndarray:
    """Value table chi(0..q-1) for the character with exponent a mod prime q."""
    w = primitive_root(q)
    roots = _roots_of_unity(q - 1)
    vals = np.zeros(q, dtype=np.complex128)
    n = 1
    e = 0
    for _ in range(q - 1):
        vals[n] = roots[e]
        n = n * w % q
        e = (e + a) % (q - 1)
    return vals


def search_matching_character(
    pattern: TargetPattern,
    q_range,
    prime_target: int,
    stop_after: int | None = None,
) -> list[GrowthRecord]:
    """Scan moduli for order-g characters matching the pattern far enough.

    q_range must consist of primes q = 1 (mod g); every character of exact
    order g modulo each q is scored, and those whose verified matching span
    reaches prime_target become records.  stop_after caps how many records
    are collected (handy when one witness suffices).
    """
    g = pattern.g
    moduli = [int(q) for q in q_range]
    if not moduli:
        raise ValueError("empty modulus range")
    records: list[GrowthRecord] = []
    for q in moduli:
        if q % g != 1 or not is_prime(q):
            raise ValueError("modulus %d is not a prime = 1 mod %d" % (q, g))
        zeta, table = _symbol_index(q, g)
        for j in range(1, g):
            if math.gcd(j, g) != 1:
                continue
            span = _match_span(pattern, q, g, j, table)
            if span >= prime_target:
                a = _canonical_index(q, g, j, zeta, table)
                vals = _values_by_root_walk(q, a)
                sums = np.cumsum(vals[1:])
                max_abs = float(np.max(np.abs(sums)))
                expo = 1.0 - root_approx_defect(g)
                records.append(
                    GrowthRecord(
                        q=q,
                        index=a,
                        order=g,
                        max_abs=max_abs,
                        ratio=max_abs
                        / (math.sqrt(q) * math.log(math.log(q)) ** expo),
                        matched_prefix=span,
                        norm_exponent=expo,
                    )
                )
                if stop_after is not None and len(records) >= stop_after:
                    return records
    return records


def candidate_moduli(g: int, q_max: int, q_min: int = 3) -> list[int]:
    """Primes q with q_min <= q <= q_max and q = 1 (mod g), ascending."""
    pr = prime_array(q_max)
    sel = pr[(pr % g == 1 % g) & (pr >= q_min)]
    return [int(q) for q in sel]


def paley_baseline(q_range) -> list[GrowthRecord]:
    """Quadratic-character growth records over prime moduli.

    Partial sums of the quadratic character take integer values along the
    scan, so the maximum is exact; the normalization exponent is 1, the
    classical growth rate for this family.
    """
    moduli = [int(q) for q in q_range]
    if not moduli:
        raise ValueError("empty modulus range")
    records = []
    for q in moduli:
        if q < 3 or not is_prime(q):
            raise ValueError("paley baseline needs odd primes, got %d" % q)
        i = np.arange(1, (q + 1) // 2, dtype=np.int64)
        vals = np.full(q, -1, dtype=np.int64)
        vals[0] = 0
        vals[(i * i) % q] = 1
        sums = np.cumsum(vals[1:])
        max_abs = int(np.max(np.abs(sums)))
        records.append(
            GrowthRecord(
                q=q,
                index=(q - 1) // 2,
                order=2,
                max_abs=float(max_abs),
                ratio=max_abs / (math.sqrt(q) * math.log(math.log(q))),
                matched_prefix=0,
                norm_exponent=1.0,
            )
        )
    return records


@dataclass
class GrowthSummary:
    """Ratio table with running maxima and a loglog-scale trend slope."""

    records: list
    running_max: list
    slope: float | None
    slope_flag: str

    def rows(self):
        for rec, rmax in zip(self.records, self.running_max):
            yield rec, rmax

    def write_csv(self, sink) -> None:
        with open_text_sink(sink) as fh:
            fh.write(
                "q,index,order,max_abs,ratio,running_max_ratio,"
                "matched_prefix,norm_exponent\n"
            )
            for rec, rmax in self.rows():
                fh.write(
                    "%d,%d,%d,%.17g,%.17g,%.17g,%d,%.17g\n"
                    % (
                        rec.q,
                        rec.index,
                        rec.order,
                        rec.max_abs,
                        rec.ratio,
                        rmax,
                        rec.matched_prefix,
                        rec.norm_exponent,
                    )
                )

    def to_json(self) -> dict:
        return {
            "count": len(self.records),
            "slope": self.slope,
            "slope_flag": self.slope_flag,
            "min_ratio": min(r.ratio for r in self.records),
            "max_ratio": max(r.ratio for r in self.records),
            "records": [r.to_json() for r in self.records],
        }


def growth_report(records) -> GrowthSummary:
    """Summarize growth records: per-q ratios, running max, trend slope.

    The slope is a least-squares fit of log(max_abs / sqrt(q)) against
    log(loglog q); with fewer than two distinct moduli it is undefined and
    flagged instead.
    """
    recs = sorted(records, key=lambda r: (r.q, r.index))
    if not recs:
        raise ValueError("no records to report on")
    running = []
    best = -math.inf
    for r in recs:
        best = max(best, r.ratio)
        running.append(best)
    xs = [math.log(math.log(math.log(r.q))) for r in recs]
    ys = [math.log(max(r.max_abs, 1e-300) / math.sqrt(r.q)) for r in recs]
    if len(set(xs)) < 2:
        return GrowthSummary(recs, running, None, "undefined: single modulus")
    coeffs = np.polyfit(np.array(xs), np.array(ys), 1)
    return GrowthSummary(recs, running, float(coeffs[0]), "ok")


# ---------------------------------------------------------------------------
# persisted sweeps

def _write_state(path: str, state: dict) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".state-")
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            json.dump(state, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _scan_chunk(args) -> list[dict]:
    pattern, chunk, prime_target = args
    out = []
    for rec in search_matching_character(pattern, chunk, prime_target):
        out.append(rec.to_json())
    return out


def sweep_matching(
    pattern: TargetPattern,
    q_max: int,
    prime_target: int,
    records_path: str,
    state_path: str,
    jobs: int = 1,
    checkpoint_seconds: float = 10.0,
    stop_after: int | None = None,
) -> list[GrowthRecord]:
    """Resumable scan of all candidate moduli up to q_max.

    Appends one JSON record per line to records_path and checkpoints the
    last fully processed modulus in state_path; an interrupted run picks up
    after that modulus.  With jobs > 1 the modulus list is cut into chunks
    scanned in a process pool; chunks are merged in modulus order so the
    record file is identical to a sequential run.
    """
    start_after = 0
    done: list[GrowthRecord] = []
    if os.path.exists(state_path):
        with open(state_path, "r", encoding="ascii") as fh:
            state = json.load(fh)
        if state.get("g") == pattern.g and state.get("q_max") == q_max:
            start_after = state.get("last_q", 0)
            if os.path.exists(records_path):
                with open(records_path, "r", encoding="ascii") as fh:
                    done = [GrowthRecord.from_json(json.loads(ln)) for ln in fh if ln.strip()]
    moduli = [q for q in candidate_moduli(pattern.g, q_max) if q > start_after]
    mode = "a" if start_after else "w"
    records = list(done)
    last_done = start_after
    last_checkpoint = time.monotonic()
    with open(records_path, mode, encoding="ascii") as out:
        def flush_state(last_q: int) -> None:
            out.flush()
            _write_state(
                state_path,
                {"g": pattern.g, "q_max": q_max, "last_q": last_q, "count": len(records)},
            )

        if jobs > 1 and moduli:
            chunk_size = max(1, len(moduli) // (jobs * 8))
            chunks = [
                moduli[i : i + chunk_size] for i in range(0, len(moduli), chunk_size)
            ]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for chunk, rows in zip(
                    chunks,
                    pool.map(
                        _scan_chunk,
                        [(pattern, c, prime_target) for c in chunks],
                    ),
                ):
                    for row in rows:
                        rec = GrowthRecord.from_json(row)
                        records.append(rec)
                        out.write(json.dumps(row) + "\n")
                    last_done = chunk[-1]
                    if time.monotonic() - last_checkpoint > checkpoint_seconds:
                        flush_state(last_done)
                        last_checkpoint = time.monotonic()
                    if stop_after is not None and len(records) >= stop_after:
                        break
        else:
            for q in moduli:
                for rec in search_matching_character(pattern, [q], prime_target):
                    records.append(rec)
                    out.write(json.dumps(rec.to_json()) + "\n")
                last_done = q
                if time.monotonic() - last_checkpoint > checkpoint_seconds:
                    flush_state(last_done)
                    last_checkpoint = time.monotonic()
                if stop_after is not None and len(records) >= stop_after:
                    break
        flush_state(last_done)
    return records


def verify_matched_prefix(pattern: TargetPattern, record: GrowthRecord) -> bool:
    """Independent recheck: evaluate the character at every pattern prime.

    Uses the plain character machinery (no residue symbols) to confirm each
    p <= matched_prefix coprime to g hits its target root exactly.
    """
    chi = DirichletCharacter(record.q, (record.index,))
    L = record.q - 1
    for p in sorted(pattern.exponents):
        if p > record.matched_prefix:
            break
        if pattern.g % p == 0:
            continue
        t = chi.eval_exact(p)
        if t is None:
            return False
        want = pattern.exponents[p]
        if Fraction(t, L) != Fraction(want, pattern.g):
            return False
    return True
