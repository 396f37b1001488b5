"""Slang usage records: loading, usage-type classification, conventionalization.

A usage is a (term, definition, contexts) triple plus provenance. Terms are
classified *reuse* when the conventional lexicon already knows them (either
as an exact headword, or token-by-token for multiword phrases) and *coinage*
otherwise. Usages whose definitions overlap a conventional gloss are further
partitioned by how far the slang sense has entered the standard lexicon.
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass
from typing import IO, Iterable

from .errors import DataError, UsageError
from .lexicon import Lexicon
from .textutil import content_words, default_stopwords, fold

logger = logging.getLogger(__name__)

COINAGE = "coinage"
REUSE = "reuse"

CONDITIONS = ("U-F", "U-R", "U-C", "C-F", "C-R", "C-C")

HUMAN_SOURCE = "human"


class ConvLevel(enum.Enum):
    NON_CONV = "Non-Conv"
    CONV = "Conv"
    HIGH_CONV = "High-Conv"


@dataclass(frozen=True)
class ConventionalizationLabel:
    level: ConvLevel
    matched_gloss: str | None = None

    def __post_init__(self):
        if (self.level is ConvLevel.NON_CONV) != (self.matched_gloss is None):
            raise UsageError("matched_gloss must be present iff the label is Conv/High-Conv")


@dataclass(frozen=True)
class SlangUsage:
    """One slang usage: the term, its sense definition, and example contexts."""

    term: str
    definition: str
    contexts: tuple[str, ...]
    source: str = HUMAN_SOURCE
    condition: str | None = None
    usage_type: str | None = None

    def __post_init__(self):
        if not self.term.strip():
            raise UsageError("usage term must be non-empty")
        if not self.definition.strip():
            raise UsageError("usage definition must be non-empty")
        if not self.contexts or any(not c for c in self.contexts):
            raise UsageError(f"usage {self.term!r} needs at least one non-empty context")
        if self.condition is not None and self.condition not in CONDITIONS:
            raise UsageError(f"unknown condition {self.condition!r}")
        if self.usage_type is not None and self.usage_type not in (COINAGE, REUSE):
            raise UsageError(f"unknown usage_type {self.usage_type!r}")


def _usage_from_record(obj: dict) -> SlangUsage:
    contexts = obj.get("contexts")
    if isinstance(contexts, str):
        contexts = [contexts]
    if not isinstance(contexts, list):
        raise UsageError("contexts must be a list of strings")
    return SlangUsage(
        term=str(obj["term"]),
        definition=str(obj["definition"]),
        contexts=tuple(str(c) for c in contexts),
        source=str(obj.get("source", HUMAN_SOURCE)),
        condition=obj.get("condition"),
        usage_type=obj.get("usage_type"),
    )


def load_corpus(stream: Iterable[str] | IO[str]) -> tuple[list[SlangUsage], int]:
    """Parse corpus JSONL; returns (usages, skipped_record_count).

    Invalid lines are warned about and skipped; an unreadable stream is the
    caller's problem (propagates).
    """
    usages: list[SlangUsage] = []
    skipped = 0
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            usages.append(_usage_from_record(obj))
        except (json.JSONDecodeError, KeyError, TypeError, UsageError) as exc:
            skipped += 1
            logger.warning("corpus line %d skipped: %s", lineno, exc)
    return usages, skipped


def read_corpus(path: str) -> tuple[list[SlangUsage], int]:
    try:
        with open(path, encoding="utf-8") as fh:
            return load_corpus(fh)
    except OSError as exc:
        raise DataError(f"cannot read corpus {path}: {exc}") from exc


def save_corpus(usages: Iterable[SlangUsage], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for u in usages:
            fh.write(json.dumps({
                "term": u.term,
                "definition": u.definition,
                "contexts": list(u.contexts),
                "source": u.source,
                "condition": u.condition,
                "usage_type": u.usage_type,
            }, ensure_ascii=False) + "\n")


def classify_usage_type(term: str, lexicon: Lexicon) -> str:
    """``reuse`` iff the lexicon resolves the term, else ``coinage``.

    Multiword terms count as reuse when every whitespace token resolves
    exactly, so phrases like "day one" classify as reuse even without a
    phrase-level entry.
    """
    if not term.strip():
        raise UsageError("cannot classify an empty term")
    if lexicon.lookup_exact(term) is not None:
        return REUSE
    tokens = fold(term).split()
    if len(tokens) > 1 and all(lexicon.lookup_exact(t) is not None for t in tokens):
        return REUSE
    return COINAGE


def content_word_overlap(def_a: str, def_b: str, stopwords: frozenset[str] | None = None) -> float:
    """|A ∩ B| / min(|A|, |B|) over content-word sets; 0.0 if either is empty."""
    if not def_a.strip() or not def_b.strip():
        raise UsageError("overlap requires two non-empty definitions")
    stop = default_stopwords() if stopwords is None else stopwords
    set_a = set(content_words(def_a, stop))
    set_b = set(content_words(def_b, stop))
    if not set_a or not set_b:
        return 0.0
    return len(set_a & set_b) / min(len(set_a), len(set_b))


def conventionalization(
    usage: SlangUsage,
    lexicon: Lexicon,
    stopwords: frozenset[str] | None = None,
    threshold: float = 0.5,
) -> ConventionalizationLabel:
    """Partition a usage by how conventional its sense already is.

    A gloss matches when at least half its content words overlap the slang
    definition. Any matching non-informal gloss wins High-Conv; otherwise a
    matching informal gloss gives Conv; no match (or no exact-phrase entry
    at all) is Non-Conv.
    """
    entry = lexicon.lookup_exact(usage.term)
    if entry is None:
        return ConventionalizationLabel(ConvLevel.NON_CONV)
    informal_match: str | None = None
    for sense in entry.senses:
        if content_word_overlap(usage.definition, sense.gloss, stopwords) >= threshold:
            if not sense.informal:
                return ConventionalizationLabel(ConvLevel.HIGH_CONV, sense.gloss)
            if informal_match is None:
                informal_match = sense.gloss
    if informal_match is not None:
        return ConventionalizationLabel(ConvLevel.CONV, informal_match)
    return ConventionalizationLabel(ConvLevel.NON_CONV)


def sample_one_per_term(usages: Iterable[SlangUsage], rng) -> list[SlangUsage]:
    """One usage per distinct (case-folded) term, chosen uniformly by ``rng``.

    Dictionary dumps often carry several senses per term; downstream
    comparisons want exactly one. Output is ordered by first appearance of
    each term so the result is stable given the seed.
    """
    by_term: dict[str, list[SlangUsage]] = {}
    for usage in usages:
        by_term.setdefault(fold(usage.term), []).append(usage)
    return [group[0] if len(group) == 1 else rng.choice(group)
            for group in by_term.values()]


def usage_type_proportions(usages: Iterable[SlangUsage], lexicon: Lexicon) -> dict[str, float]:
    """Fractions of coinage vs reuse over a corpus; fractions sum to 1."""
    usages = list(usages)
    if not usages:
        raise UsageError("cannot compute proportions of an empty corpus")
    n_coinage = sum(1 for u in usages if classify_usage_type(u.term, lexicon) == COINAGE)
    total = len(usages)
    return {
        "coinage_fraction": n_coinage / total,
        "reuse_fraction": (total - n_coinage) / total,
    }
