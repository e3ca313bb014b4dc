"""Schema loading and validation for the JSON documents the CLI emits."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema

SCHEMA_NAMES = (
    "arc_class",
    "character",
    "diag_report",
    "extremal_result",
    "growth_record",
    "nearest_result",
    "sum_profile",
    "verify_report",
)


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    if name not in SCHEMA_NAMES:
        raise ValueError("unknown schema %r; choose from %s" % (name, ", ".join(SCHEMA_NAMES)))
    ref = resources.files("charmimic.schemas").joinpath(name + ".json")
    return json.loads(ref.read_text(encoding="ascii"))


def validate(document: dict, name: str) -> None:
    """Raises jsonschema.ValidationError when the document does not conform."""
    jsonschema.validate(document, load_schema(name))
