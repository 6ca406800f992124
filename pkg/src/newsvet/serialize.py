"""Canonical JSON serialization and hashing.

Canonical form: sorted keys, compact separators, ASCII-only escapes. Two
runs that produce equal data structures produce byte-identical output on
any platform, which is what the replay determinism guarantees rest on.
"""

from __future__ import annotations

import hashlib
import json
from enum import Enum
from typing import Any


def _encode_default(obj: Any):
    if isinstance(obj, Enum):
        return obj.value
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if hasattr(obj, "tolist"):  # numpy scalars and arrays
        return obj.tolist()
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"not JSON-serializable: {type(obj).__name__}")


def canonical_json(data: Any) -> str:
    return json.dumps(
        data,
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=True,
        default=_encode_default,
    )


def sha256_hex(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
