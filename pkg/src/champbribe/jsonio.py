"""Instance file I/O: JSON bodies with optional '#'-prefixed provenance headers."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InstanceError


def load_json(path: str | Path) -> dict:
    """Read a JSON instance file, skipping leading '#' comment lines."""
    text = Path(path).read_text()
    lines = text.splitlines()
    body_start = 0
    for i, line in enumerate(lines):
        if line.strip() and not line.lstrip().startswith("#"):
            body_start = i
            break
    else:
        raise InstanceError(f"{path}: no JSON body found")
    body = "\n".join(lines[body_start:])
    try:
        data = json.loads(body)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise InstanceError(f"{path}: top-level JSON value must be an object")
    return data


def save_json(path: str | Path, data: dict, provenance: list[str] | None = None) -> None:
    """Write a JSON instance file with optional provenance header lines."""
    header = "".join(f"# {line}\n" for line in provenance or [])
    Path(path).write_text(header + json.dumps(data, indent=2, sort_keys=True) + "\n")


def dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True)
