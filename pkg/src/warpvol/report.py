"""Machine-readable report emitted by every CLI command.

A report is a flat JSON object: four scalar/list fields plus the ``inputs``
and ``outputs`` maps, whose values are scalars (numbers, strings, booleans,
null).  Floats are written with ``repr`` precision (17 significant digits),
so a report round-trips exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

SCHEMA_VERSION = "1"

Scalar = Any  # int | float | str | bool | None


def _scalar(v):
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (np.floating, float)):
        v = float(v)
        if not math.isfinite(v):
            return str(v)  # JSON has no inf/nan
        return v
    if v is None or isinstance(v, (bool, int, str)):
        return v
    raise TypeError(f"report values must be scalars, got {type(v).__name__}")


@dataclass
class Report:
    command: str
    inputs: Dict[str, Scalar] = field(default_factory=dict)
    outputs: Dict[str, Scalar] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION

    def add(self, **values):
        for k, v in values.items():
            self.outputs[k] = _scalar(v)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": {k: _scalar(v) for k, v in self.inputs.items()},
            "outputs": {k: _scalar(v) for k, v in self.outputs.items()},
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        return cls(command=d["command"], inputs=d["inputs"], outputs=d["outputs"],
                   warnings=d["warnings"], schema_version=d["schema_version"])
