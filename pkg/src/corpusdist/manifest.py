"""Run manifests: the resolved configuration and input digests of one CLI run."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Sequence

MANIFEST_NAME = "run_manifest.json"


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with path.open("rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def build_manifest(subcommand: str, config: dict, inputs: Sequence[Path]) -> dict:
    """Assemble a manifest dict; config must hold result-affecting flags only."""
    from . import __version__

    return {
        "tool": "corpusdist",
        "version": __version__,
        "subcommand": subcommand,
        "config": config,
        "inputs": [{"path": str(p), "sha256": _sha256(Path(p))} for p in inputs],
    }


def write_manifest(out_dir: Path, manifest: dict) -> Path:
    path = Path(out_dir) / MANIFEST_NAME
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8", newline="")
    return path
