"""Indexed conventional lexicon built from Wiktionary-style JSONL extracts.

Input records look like::

    {"word": "foot", "senses": [{"glosses": ["body part"], "tags": ["anatomy"]}]}

The lexicon answers three kinds of queries: exact headword lookup,
"is this a prefix of some headword" and "is this a suffix of some
headword". Prefix and suffix share the same mechanism: two sorted lists
(headwords, reversed headwords) probed with bisect, so both directions
cost O(log n) even on million-entry dumps.
"""

from __future__ import annotations

import gzip
import io
import json
import logging
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass
from typing import IO, Iterable

from .errors import DataError, UsageError
from .textutil import fold

logger = logging.getLogger(__name__)

INFORMAL_TAGS = frozenset({"slang", "informal", "jargon", "idiomatic"})


@dataclass(frozen=True)
class Sense:
    """One definition line with its (lowercased) tag set."""

    gloss: str
    tags: frozenset[str] = frozenset()

    @property
    def informal(self) -> bool:
        return bool(self.tags & INFORMAL_TAGS)


@dataclass(frozen=True)
class LexiconEntry:
    headword: str
    senses: tuple[Sense, ...]

    def informal_senses(self) -> list[Sense]:
        return [s for s in self.senses if s.informal]

    def glosses(self) -> list[str]:
        return [s.gloss for s in self.senses]


@dataclass
class IngestStats:
    records: int = 0
    skipped: int = 0
    malformed_lines: int = 0


class Lexicon:
    """Immutable after construction; safe for concurrent reads."""

    def __init__(self, entries: dict[str, LexiconEntry], stats: IngestStats | None = None):
        self._entries = dict(entries)
        self.stats = stats or IngestStats()
        self._sorted = sorted(self._entries)
        self._sorted_rev = sorted(w[::-1] for w in self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, term: str) -> bool:
        return self.lookup_exact(term) is not None

    def __eq__(self, other: object) -> bool:
        # Sense order within an entry is not significant, so ingestion is
        # order-independent under this comparison.
        if not isinstance(other, Lexicon):
            return NotImplemented
        if self._entries.keys() != other._entries.keys():
            return False
        for word, entry in self._entries.items():
            if Counter(entry.senses) != Counter(other._entries[word].senses):
                return False
        return True

    def headwords(self) -> Iterable[str]:
        return iter(self._sorted)

    def lookup_exact(self, term: str) -> LexiconEntry | None:
        """Case-folded, whitespace-trimmed lookup; multiword phrases allowed."""
        return self._entries.get(fold(term))

    def has_prefix(self, segment: str) -> bool:
        """True iff some headword starts with ``segment`` (a headword is its own prefix)."""
        return self._probe(self._sorted, fold(segment))

    def has_suffix(self, segment: str) -> bool:
        """True iff some headword ends with ``segment`` (a headword is its own suffix)."""
        return self._probe(self._sorted_rev, fold(segment)[::-1])

    @staticmethod
    def _probe(sorted_words: list[str], needle: str) -> bool:
        if not needle:
            raise UsageError("prefix/suffix query requires a non-empty segment")
        i = bisect_left(sorted_words, needle)
        return i < len(sorted_words) and sorted_words[i].startswith(needle)


def _parse_record(obj: dict) -> LexiconEntry | None:
    word = obj.get("word")
    if not isinstance(word, str) or not fold(word):
        return None
    senses = []
    for raw in obj.get("senses") or []:
        if not isinstance(raw, dict):
            continue
        tags = frozenset(str(t).lower() for t in raw.get("tags") or [])
        for gloss in raw.get("glosses") or []:
            if isinstance(gloss, str) and gloss.strip():
                senses.append(Sense(gloss=" ".join(gloss.split()), tags=tags))
    if not senses:
        return None
    return LexiconEntry(headword=fold(word), senses=tuple(senses))


def ingest_dump(stream: Iterable[str] | IO[str]) -> Lexicon:
    """Build a Lexicon from line-delimited JSON records.

    Malformed lines and records without a usable word or gloss are skipped
    (warned and counted in ``lexicon.stats``), never fatal. Re-ingesting the
    same stream merges idempotently: senses concatenate per headword and
    exact duplicates are dropped.
    """
    stats = IngestStats()
    entries: dict[str, LexiconEntry] = {}
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            stats.malformed_lines += 1
            stats.skipped += 1
            logger.warning("lexicon line %d: malformed JSON (%s)", lineno, exc)
            continue
        stats.records += 1
        entry = _parse_record(obj)
        if entry is None:
            stats.skipped += 1
            logger.warning("lexicon line %d: missing word or glosses, skipped", lineno)
            continue
        prior = entries.get(entry.headword)
        if prior is None:
            entries[entry.headword] = entry
        else:
            merged = list(prior.senses)
            seen = set(prior.senses)
            for sense in entry.senses:
                if sense not in seen:
                    merged.append(sense)
                    seen.add(sense)
            entries[entry.headword] = LexiconEntry(prior.headword, tuple(merged))
    return Lexicon(entries, stats)


def read_lexicon(path: str) -> Lexicon:
    """Ingest a ``.jsonl`` file; ``.gz`` suffix selects gzip decompression."""
    try:
        if path.endswith(".gz"):
            with gzip.open(path, "rt", encoding="utf-8") as fh:
                return ingest_dump(fh)
        with io.open(path, "r", encoding="utf-8") as fh:
            return ingest_dump(fh)
    except OSError as exc:
        raise DataError(f"cannot read lexicon {path}: {exc}") from exc


def informal_senses(entry: LexiconEntry) -> list[Sense]:
    """Senses whose tags intersect the informal tag set."""
    return entry.informal_senses()
