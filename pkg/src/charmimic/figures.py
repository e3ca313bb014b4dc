"""Figure rendering for report paths: every plot lands in a file.

All figures use the Agg backend so rendering works headless; callers pass
an output path and get the written filename back.  The style is kept
uniform and minimal on purpose: these are working diagnostics that sit
next to the CSV they visualize, not publication graphics.
"""
from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

_DPI = 120


def _finish(fig, path: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def profile_figure(profile, path: str) -> str:
    """Magnitude of a partial-sum trajectory against its cutoff."""
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(profile.ts, np.abs(profile.values), lw=1.0)
    ax.axhline(profile.max_abs, color="tab:red", lw=0.8, ls="--", alpha=0.7)
    ax.set_xlabel("length")
    ax.set_ylabel("|partial sum|")
    ax.set_title("%s (max %.4g at %g)" % (profile.kind, profile.max_abs, profile.argmax))
    return _finish(fig, path)


def scan_figure(table, path: str) -> str:
    """Distance ratio over the twist grid with its closed-form reference."""
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(table.betas, table.ratios, lw=1.0)
    ax.axhline(table.reference, color="tab:red", lw=0.9, ls="--", label="reference defect")
    ax.plot([table.min_beta], [table.min_ratio], "o", ms=4, color="tab:orange")
    ax.set_xlabel("twist")
    ax.set_ylabel("distance_sq / loglog y")
    ax.legend(loc="best", fontsize=8)
    ax.set_title("scan at y = %g (min %.4f, slack %.4f)" % (table.y, table.min_ratio, table.slack))
    return _finish(fig, path)


def growth_figure(summary, path: str, label: str = "") -> str:
    """Growth ratios per modulus with the running maximum."""
    qs = [r.q for r in summary.records]
    ratios = [r.ratio for r in summary.records]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.semilogx(qs, ratios, ".", ms=3, alpha=0.6, label="ratio")
    ax.semilogx(qs, summary.running_max, lw=1.0, color="tab:red", label="running max")
    ax.set_xlabel("modulus")
    ax.set_ylabel("max |sum| / normalization")
    ax.legend(loc="best", fontsize=8)
    title = "growth ratios"
    if label:
        title += ": " + label
    if summary.slope is not None:
        title += " (slope %.3f)" % summary.slope
    ax.set_title(title)
    return _finish(fig, path)


def equidist_figure(table, path: str) -> str:
    """Per-class reciprocal prime mass against the uniform share."""
    k = table.order
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(k), table.ratios(), width=0.7)
    ax.axhline(1.0 / k, color="tab:red", lw=0.9, ls="--", label="uniform share")
    ax.set_xlabel("value class")
    ax.set_ylabel("share of sum(1/p)")
    ax.set_title("class balance (max deviation %.2e)" % table.max_deviation)
    ax.legend(loc="best", fontsize=8)
    return _finish(fig, path)


def residual_figure(xs, residuals, envelope, path: str, xlabel: str) -> str:
    """Observed residuals under a fitted envelope, log-log."""
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.loglog(xs, residuals, ".", ms=3, alpha=0.6, label="residual")
    if envelope is not None:
        order = np.argsort(xs)
        ax.loglog(
            np.asarray(xs)[order],
            np.asarray(envelope)[order],
            lw=1.0,
            color="tab:red",
            label="fitted envelope",
        )
    ax.set_xlabel(xlabel)
    ax.set_ylabel("residual")
    ax.legend(loc="best", fontsize=8)
    return _finish(fig, path)
