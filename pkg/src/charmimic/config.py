"""Run configuration shared by the CLI and the verification suites."""
from __future__ import annotations

import os
from dataclasses import dataclass

from .arith import SUM_TERM_CAP

FORMATS = ("csv", "json")


@dataclass
class RunConfig:
    """Validated knobs for a run: tolerances, caps, parallelism, output.

    The seed pins every randomized suite; identical (seed, config) must
    reproduce identical reports byte for byte.
    """

    identity_rel_tol: float = 1e-8
    exact_tol: float = 1e-12
    gauss_tol: float = 1e-6
    sum_cap: int = SUM_TERM_CAP
    jobs: int = 1
    cache_dir: str | None = None
    fmt: str = "csv"
    seed: int = 20260822
    figure_dir: str | None = None

    def __post_init__(self):
        for name in ("identity_rel_tol", "exact_tol", "gauss_tol"):
            if getattr(self, name) <= 0:
                raise ValueError("%s must be positive" % name)
        if not 1 <= self.sum_cap <= SUM_TERM_CAP:
            raise ValueError("sum_cap must be in [1, %d]" % SUM_TERM_CAP)
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.fmt not in FORMATS:
            raise ValueError("format must be one of %s" % (FORMATS,))
        if self.cache_dir is not None and not isinstance(self.cache_dir, str):
            raise ValueError("cache_dir must be a path string")
        self.seed = int(self.seed)

    def apply_cache_dir(self) -> None:
        from .arith import set_cache_dir

        if self.cache_dir:
            set_cache_dir(os.path.expanduser(self.cache_dir))
