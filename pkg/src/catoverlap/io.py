"""Deterministic serialization: CSV/JSON data files and run manifests.

Data files never contain timestamps and render floats with 17 significant
digits, so identical parameters reproduce identical bytes.  Timestamps live
only in the sidecar manifest.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

__all__ = [
    "RunManifest",
    "fmt",
    "manifest_path",
    "write_data_csv",
    "write_data_json",
    "write_manifest",
]

SCHEMA_VERSION = "1"


def fmt(value) -> str:
    """Render a value for CSV/JSON text: floats at 17 significant digits
    (lossless round trip), everything else via str."""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.17g}"
    return str(value)


@dataclass(frozen=True)
class RunManifest:
    """Reproducibility record accompanying every output file."""

    command: str
    parameters: dict
    tool_version: str
    normalization_mode: str
    warnings: tuple[str, ...] = field(default_factory=tuple)

    def deterministic_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "parameters": dict(sorted(self.parameters.items())),
            "tool_version": self.tool_version,
            "normalization_mode": self.normalization_mode,
            "warnings": list(self.warnings),
        }


def manifest_path(out: Path) -> Path:
    return out.with_name(out.name + ".manifest.json")


def write_manifest(out: Path, manifest: RunManifest) -> Path:
    """Write the sidecar manifest (the only place a timestamp appears)."""
    payload = manifest.deterministic_dict()
    payload["created_utc"] = datetime.now(timezone.utc).isoformat()
    path = manifest_path(out)
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return path


def write_data_csv(out: Path, columns: list[str], rows) -> None:
    """Header row, LF line endings, fixed column order, 17-digit floats."""
    lines = [",".join(columns)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    out.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def write_data_json(
    out: Path, manifest: RunManifest, kind: str, columns: list[str], rows
) -> None:
    """JSON data file embedding the deterministic manifest subset."""
    payload = {
        "manifest": manifest.deterministic_dict(),
        "kind": kind,
        "columns": list(columns),
        "rows": [[_jsonable(v) for v in row] for row in rows],
    }
    out.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _jsonable(value):
    if isinstance(value, float):
        # keep NaN out of JSON; render all floats as 17-digit strings so the
        # file is byte-stable and schema-valid
        return fmt(value)
    if isinstance(value, int):
        return value
    return str(value)
