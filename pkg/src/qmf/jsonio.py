"""Canonical JSON output and run manifests.

Canonical means: sorted keys, no insignificant whitespace, rationals as
``"num/den"`` strings and integers outside the IEEE double safe range as
decimal strings.  Identical inputs therefore give byte-identical output.
"""

from __future__ import annotations

import enum
import hashlib
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__

SAFE_INT = 2 ** 53


def canonical(obj):
    """Convert ``obj`` into plain JSON-ready values."""
    if hasattr(obj, "to_json"):
        return canonical(obj.to_json())
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, enum.Enum):
        return canonical(obj.value)
    if isinstance(obj, int):
        return obj if abs(obj) < SAFE_INT else str(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class RunManifest:
    command: str
    parameters: dict
    tool_version: str = __version__
    wall_seconds: float = 0.0
    output_digest: str = ""
    _start: float = field(default_factory=time.perf_counter, repr=False)

    def finish(self, output: str) -> "RunManifest":
        self.wall_seconds = round(time.perf_counter() - self._start, 6)
        self.output_digest = digest(output)
        return self

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "parameters": canonical(self.parameters),
            "tool_version": self.tool_version,
            "wall_seconds": self.wall_seconds,
            "output_digest": self.output_digest,
        }
