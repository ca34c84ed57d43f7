"""Canonical JSON serialization and content hashing.

Every artifact the engine writes (knowledge bases, findings, reports,
threshold tables, session states) goes through `canonical_json` so that
equal objects serialize to identical bytes: keys sorted, two-space indent,
UTF-8, shortest round-trip float formatting, trailing newline.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"


def canonical_bytes(obj: Any) -> bytes:
    return canonical_json(obj).encode("utf-8")


def content_hash(obj: Any) -> str:
    """Hex SHA-256 of the canonical byte serialization."""
    return hashlib.sha256(canonical_bytes(obj)).hexdigest()
