"""Deterministic CSV/JSON writers and run manifests.

Outputs are byte-reproducible: floats are formatted with a fixed %.12g,
JSON keys are sorted and nothing volatile (timestamps, hostnames) is
recorded.  Every CLI run writes a manifest next to its outputs holding the
exact argument vector, so re-running from the manifest reproduces the files
bit for bit.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import __version__


def format_value(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def write_csv(path: str | Path, columns: list[tuple[str, list]], metadata: dict | None = None) -> Path:
    """CSV with '#'-prefixed metadata header lines before the column header."""
    path = Path(path)
    lines = []
    for key in sorted((metadata or {}).keys()):
        lines.append(f"# {key} = {format_value(metadata[key])}")
    names = [name for name, _ in columns]
    series = [values for _, values in columns]
    n = len(series[0]) if series else 0
    if any(len(v) != n for v in series):
        raise ValueError("all CSV columns must have equal length")
    lines.append(",".join(names))
    for i in range(n):
        lines.append(",".join(format_value(v[i]) for v in series))
    path.write_text("\n".join(lines) + "\n")
    return path


def write_json(path: str | Path, data) -> Path:
    path = Path(path)
    path.write_text(json.dumps(data, sort_keys=True, indent=2, default=format_value) + "\n")
    return path


def manifest_path_for(out_path: str | Path) -> Path:
    out_path = Path(out_path)
    return out_path.with_name(out_path.name + ".manifest.json")


def write_manifest(
    out_path: str | Path,
    subcommand: str,
    argv: list[str],
    parameters: dict,
    outputs: list[str],
) -> Path:
    manifest = {
        "tool": "twotemp",
        "version": __version__,
        "subcommand": subcommand,
        "argv": list(argv),
        "parameters": parameters,
        "outputs": [str(o) for o in outputs],
    }
    return write_json(manifest_path_for(out_path), manifest)


def load_manifest(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())
