"""Desk-scale phase documents: a clustered phase and a connected one on the same five atoms."""

from __future__ import annotations

import json
from pathlib import Path

from .graph import SCHEMA

PHASE_A = {
    "schema": SCHEMA,
    "kind": "phase1",
    "clusters": [
        {"id": "c1", "atoms": ["a1", "a2", "a3"], "bonds": [["a1", "a2"], ["a2", "a3"], ["a3", "a1"]]},
        {"id": "c2", "atoms": ["a4", "a5"], "bonds": [["a4", "a5"]]},
    ],
}

PHASE_B = {
    "schema": SCHEMA,
    "kind": "phase2",
    "atoms": ["a1", "a2", "a3", "a4", "a5"],
    "bonds": [["a1", "a2"], ["a2", "a3"], ["a3", "a4"], ["a4", "a5"], ["a5", "a1"]],
}

FIXTURES = {"phaseA.json": PHASE_A, "phaseB.json": PHASE_B}


def dumps(document) -> str:
    return json.dumps(document, indent=2) + "\n"


def emit_fixtures(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, doc in FIXTURES.items():
        path = directory / name
        path.write_text(dumps(doc), encoding="utf-8")
        written.append(path)
    return written
