"""Paths to the bundled fixture data (small lexicon + corpus for smoke runs)."""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled fixture file, e.g. ``fixture_corpus.jsonl``."""
    resource = resources.files("slangbench.data.fixtures").joinpath(name)
    with resources.as_file(resource) as path:
        return Path(path)


def fixture_lexicon_path() -> Path:
    return fixture_path("fixture_lexicon.jsonl")


def fixture_corpus_path() -> Path:
    return fixture_path("fixture_corpus.jsonl")
