"""Morphological segmentation and word-formation classification.

Two segmenter backends:

* ``BaselineSegmenter`` — a small unsupervised minimum-description-length
  model trained on a wordlist. It balances a codebook cost (every distinct
  morph pays ``(len+1) * log(alphabet+1)`` nats to exist) against a corpus
  cost (every morph token pays its unigram negative log-likelihood) and
  greedily splits words while the total cost drops.
* ``TableSegmenter`` — segmentations injected from a TSV produced by an
  external tool, for bit-fidelity with a specific trained model.

Formation labels: a multi-segment term whose segments all resolve exactly
in the lexicon is a Compound; failing that, if its first segment prefixes
some headword and its last segment suffixes some headword (both at least
2 chars) it is a Blend; everything else, including single-segment terms,
is Other.
"""

from __future__ import annotations

import logging
import math
import random
from collections import Counter
from dataclasses import dataclass
from typing import IO, Iterable, Protocol

from .errors import DataError, UsageError
from .lexicon import Lexicon
from .textutil import fold

logger = logging.getLogger(__name__)

MIN_AFFIX_LEN = 2

COMPOUND = "Compound"
BLEND = "Blend"
OTHER = "Other"


@dataclass(frozen=True)
class Segmentation:
    term: str
    segments: tuple[str, ...]

    def __post_init__(self):
        if not self.segments or any(not s for s in self.segments):
            raise UsageError(f"segmentation of {self.term!r} has empty segments")
        if "".join(self.segments) != "".join(fold(self.term).split()):
            raise UsageError(f"segments {self.segments!r} do not spell {self.term!r}")


@dataclass(frozen=True)
class FormationLabel:
    label: str
    segment_count: int


class Segmenter(Protocol):
    def segment(self, term: str) -> Segmentation: ...


class TableSegmenter:
    """Segmenter backed by an explicit term -> segments table.

    Unknown single-token terms fall back to one segment; unknown multiword
    terms are segmented token by token.
    """

    def __init__(self, table: dict[str, tuple[str, ...]]):
        self._table = table

    def segment(self, term: str) -> Segmentation:
        key = fold(term)
        if key in self._table:
            return Segmentation(key, self._table[key])
        tokens = key.split()
        if len(tokens) > 1:
            segs: list[str] = []
            for tok in tokens:
                segs.extend(self._table.get(tok, (tok,)))
            return Segmentation(key, tuple(segs))
        return Segmentation(key, (key,))


def load_segmentation_table(stream: Iterable[str] | IO[str]) -> TableSegmenter:
    """Parse ``term<TAB>seg1 seg2 ...`` rows; malformed rows are skipped."""
    table: dict[str, tuple[str, ...]] = {}
    for lineno, line in enumerate(stream, start=1):
        line = line.rstrip("\n")
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            logger.warning("segmentation table line %d: expected one tab, skipped", lineno)
            continue
        term, seg_field = fold(parts[0]), parts[1]
        segments = tuple(fold(s) for s in seg_field.split(" "))
        if not term or any(not s for s in segments):
            logger.warning("segmentation table line %d: empty term or segment, skipped", lineno)
            continue
        if "".join(segments) != "".join(term.split()):
            logger.warning("segmentation table line %d: segments do not spell the term, skipped", lineno)
            continue
        table[term] = segments
    return TableSegmenter(table)


def read_segmentation_table(path: str) -> TableSegmenter:
    try:
        with open(path, encoding="utf-8") as fh:
            return load_segmentation_table(fh)
    except OSError as exc:
        raise DataError(f"cannot read segmentation table {path}: {exc}") from exc


class BaselineSegmenter:
    """Unsupervised MDL segmenter; build with :func:`train_baseline_segmenter`.

    Cost model (natural log):

    * corpus cost  = sum over morph types of ``count * (ln N - ln count)``
      with ``N`` the total number of morph tokens;
    * codebook cost = ``(len(morph) + 1) * ln(alphabet_size + 1)`` per
      distinct morph.

    Training greedily re-splits each word (in seeded random order, for
    several epochs) wherever a split lowers the total cost. Unseen terms
    are segmented with a Viterbi search over the learned morph inventory;
    the fallback cost of introducing a brand-new morph keeps segmentation
    total on any non-empty input.
    """

    def __init__(self, alphabet_size: int):
        self._counts: Counter[str] = Counter()
        self._tokens = 0
        self._count_loglik = 0.0  # sum of c * ln c over types
        self._codebook_chars = 0  # sum of len(m) + 1 over types
        self._char_cost = math.log(alphabet_size + 1)
        self._analyses: dict[str, tuple[str, ...]] = {}

    # -- model bookkeeping --------------------------------------------------

    def _add(self, morph: str, count: int) -> None:
        old = self._counts[morph]
        new = old + count
        self._counts[morph] = new
        self._tokens += count
        self._count_loglik += new * math.log(new) - (old * math.log(old) if old else 0.0)
        if old == 0:
            self._codebook_chars += len(morph) + 1

    def _remove(self, morph: str, count: int) -> None:
        old = self._counts[morph]
        new = old - count
        if new < 0:
            raise AssertionError(f"negative count for {morph!r}")
        self._tokens -= count
        self._count_loglik += (new * math.log(new) if new else 0.0) - old * math.log(old)
        if new == 0:
            del self._counts[morph]
            self._codebook_chars -= len(morph) + 1
        else:
            self._counts[morph] = new

    def _cost(self) -> float:
        corpus = self._tokens * math.log(self._tokens) - self._count_loglik if self._tokens else 0.0
        return corpus + self._codebook_chars * self._char_cost

    # -- training -----------------------------------------------------------

    def _optimize(self, morph: str, count: int) -> list[str]:
        """Choose the cheapest analysis of ``morph`` and commit it to the model."""
        self._add(morph, count)
        best_cost = self._cost()
        self._remove(morph, count)
        best_split = None
        for i in range(1, len(morph)):
            left, right = morph[:i], morph[i:]
            self._add(left, count)
            self._add(right, count)
            cost = self._cost()
            self._remove(left, count)
            self._remove(right, count)
            if cost < best_cost - 1e-12:
                best_cost = cost
                best_split = i
        if best_split is None:
            self._add(morph, count)
            return [morph]
        left, right = morph[:best_split], morph[best_split:]
        return self._optimize(left, count) + self._optimize(right, count)

    def _train(self, word_counts: Counter[str], seed: int, max_epochs: int = 15) -> None:
        rng = random.Random(seed)
        words = sorted(word_counts)
        for word, count in word_counts.items():
            self._analyses[word] = (word,)
            self._add(word, count)
        for _ in range(max_epochs):
            rng.shuffle(words)
            changed = False
            for word in words:
                count = word_counts[word]
                for part in self._analyses[word]:
                    self._remove(part, count)
                analysis = tuple(self._optimize(word, count))
                if analysis != self._analyses[word]:
                    changed = True
                    self._analyses[word] = analysis
            if not changed:
                break

    # -- segmentation -------------------------------------------------------

    def _piece_cost(self, piece: str) -> float:
        count = self._counts.get(piece, 0)
        log_tokens = math.log(self._tokens + 1)
        if count > 0:
            return log_tokens - math.log(count)
        return log_tokens + (len(piece) + 1) * self._char_cost

    def _viterbi(self, token: str) -> list[str]:
        n = len(token)
        best = [0.0] + [math.inf] * n
        back = [0] * (n + 1)
        for j in range(1, n + 1):
            for i in range(j):
                cost = best[i] + self._piece_cost(token[i:j])
                if cost < best[j]:
                    best[j] = cost
                    back[j] = i
        segments: list[str] = []
        j = n
        while j > 0:
            i = back[j]
            segments.append(token[i:j])
            j = i
        segments.reverse()
        return segments

    def segment(self, term: str) -> Segmentation:
        key = fold(term)
        if not key:
            raise UsageError("cannot segment an empty term")
        segments: list[str] = []
        for token in key.split():
            if token in self._analyses:
                segments.extend(self._analyses[token])
            else:
                segments.extend(self._viterbi(token))
        return Segmentation(key, tuple(segments))


def train_baseline_segmenter(wordlist: Iterable[str], seed: int = 0) -> BaselineSegmenter:
    """Train the MDL baseline on a wordlist (multiword items train per token)."""
    word_counts: Counter[str] = Counter()
    for word in wordlist:
        for token in fold(word).split():
            word_counts[token] += 1
    if not word_counts:
        raise UsageError("cannot train a segmenter on an empty wordlist")
    alphabet = {ch for w in word_counts for ch in w}
    model = BaselineSegmenter(alphabet_size=len(alphabet))
    model._train(word_counts, seed=seed)
    return model


def complexity(term: str, segmenter: Segmenter) -> int:
    """Number of morphological segments across all whitespace tokens of the term."""
    if not term.strip():
        raise UsageError("cannot score an empty term")
    return len(segmenter.segment(term).segments)


def classify_formation(term: str, segmenter: Segmenter, lexicon: Lexicon,
                       min_segments: int = 2) -> FormationLabel:
    """Label a term Compound, Blend or Other from its segmentation.

    ``min_segments`` gates how many segments a term needs before the
    compound/blend rules apply (single-segment terms are always Other).
    """
    seg = segmenter.segment(term)
    segs = seg.segments
    if len(segs) >= min_segments:
        if all(lexicon.lookup_exact(s) is not None for s in segs):
            return FormationLabel(COMPOUND, len(segs))
        first, last = segs[0], segs[-1]
        if (len(first) >= MIN_AFFIX_LEN and len(last) >= MIN_AFFIX_LEN
                and lexicon.has_prefix(first) and lexicon.has_suffix(last)):
            return FormationLabel(BLEND, len(segs))
    return FormationLabel(OTHER, len(segs))
