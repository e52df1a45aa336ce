"""
The bundled corpus of knot complement triangulations.

Entries live as gluing-table files next to ``manifest.json``, which records
the expected verdict and size of each one.  Setting ``UNTANGLE_CORPUS_DIR``
points the loader at another directory with the same layout.
"""
from __future__ import annotations

import fnmatch
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .tri import parse_gluing_table

__all__ = ["CorpusEntry", "corpus_dir", "load_manifest", "entries", "load", "resolve"]

ENV_VAR = "UNTANGLE_CORPUS_DIR"
PREFIX = "corpus:"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    file: str
    verdict: str
    n: int
    vertices: int
    knot: str
    synthetic: bool
    note: str = ""

    def path(self, root=None):
        return Path(root or corpus_dir()) / self.file

    def triangulation(self, root=None):
        return parse_gluing_table(self.path(root).read_text())


def corpus_dir():
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "data"


def load_manifest(root=None):
    root = Path(root or corpus_dir())
    with open(root / "manifest.json") as fh:
        raw = json.load(fh)
    return [CorpusEntry(**item) for item in raw["entries"]]


def entries(pattern="*", root=None):
    """Manifest entries whose names match the glob ``pattern``, sorted by name."""
    pattern = pattern[len(PREFIX):] if pattern.startswith(PREFIX) else pattern
    out = [e for e in load_manifest(root) if fnmatch.fnmatchcase(e.name, pattern)]
    return sorted(out, key=lambda e: e.name)


def load(name, root=None):
    for e in load_manifest(root):
        if e.name == name:
            return e.triangulation(root)
    raise KeyError(f"no corpus entry named {name!r}")


def resolve(source):
    """
    Turn a command-line input into ``(name, triangulation)``.

    ``corpus:NAME`` selects a bundled entry; anything else is read as a file.
    """
    if source.startswith(PREFIX):
        name = source[len(PREFIX):]
        return name, load(name)
    path = Path(source)
    return path.stem, parse_gluing_table(path.read_text())
