"""Shared text normalization: case folding, tokenization, stopwords.

Every module that compares or counts words goes through these helpers so
that overlap scores, topic vocabularies and the local embedding backend
all agree on what a "word" is.
"""

from __future__ import annotations

import re
import unicodedata
from importlib import resources

_TOKEN_RE = re.compile(r"[^\W_]+(?:'[^\W_]+)*", re.UNICODE)

_STOPWORDS_RESOURCE = "stopwords_english.txt"
_default_stopwords: frozenset[str] | None = None


def fold(text: str) -> str:
    """Canonical form used for all lexicon keys: NFC + simple case fold."""
    return unicodedata.normalize("NFC", text.strip().casefold())


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens; punctuation dropped, in-word apostrophes kept."""
    return _TOKEN_RE.findall(text.lower())


def load_stopwords(path: str | None = None) -> frozenset[str]:
    """Stopword set from ``path``, or the bundled English list (179 words)."""
    if path is None:
        return default_stopwords()
    with open(path, encoding="utf-8") as fh:
        return frozenset(w.strip().lower() for w in fh if w.strip())


def default_stopwords() -> frozenset[str]:
    global _default_stopwords
    if _default_stopwords is None:
        text = resources.files("slangbench.data").joinpath(_STOPWORDS_RESOURCE).read_text("utf-8")
        _default_stopwords = frozenset(w.strip() for w in text.splitlines() if w.strip())
    return _default_stopwords


def content_words(text: str, stopwords: frozenset[str]) -> list[str]:
    """Tokens with stopwords removed; order preserved, duplicates kept."""
    return [t for t in tokenize(text) if t not in stopwords]
