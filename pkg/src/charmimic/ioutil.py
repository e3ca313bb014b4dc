"""Tiny IO helpers shared by report writers."""
from __future__ import annotations

import contextlib
import sys


@contextlib.contextmanager
def open_text_sink(target):
    """Yield a writable text file for a path, file-like, or None (stdout)."""
    if target is None:
        yield sys.stdout
    elif hasattr(target, "write"):
        yield target
    else:
        with open(target, "w", encoding="ascii") as fh:
            yield fh
