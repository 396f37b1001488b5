"""Construction and grading of the three downstream slang tasks.

* cloze MCQ: masked usage + definition -> pick the term (A-D);
* interpretation MCQ: term + usage -> pick the definition (A-D);
* free-form interpretation: term + usage -> write a definition, graded by
  embedding similarity against the gold definition.

Items are built with seeded RNGs so exams are reproducible; distractors
come from other entries and are never (case-folded) equal to the gold
answer or to each other.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from typing import Sequence

from .corpus import SlangUsage
from .embedding import EmbeddingProvider, cosine
from .errors import UsageError
from .genpipe import _first_json_object
from .prompts import render_template
from .textutil import fold

LABELS = ("A", "B", "C", "D")
MASK = "___"
DEFAULT_EVAL_N = 500


@dataclass(frozen=True)
class McqItem:
    task: str  # "cloze" | "interpretation"
    item_id: str
    options: tuple[str, str, str, str]
    correct_label: str
    source_term: str
    masked_usage: str | None = None  # cloze
    definition: str | None = None    # cloze
    word: str | None = None          # interpretation
    usage: str | None = None         # interpretation

    def render_prompt(self) -> str:
        opts = dict(zip(LABELS, self.options))
        if self.task == "cloze":
            return render_template("task1", {
                "masked_usage": self.masked_usage, "definition": self.definition, **opts})
        return render_template("task2", {"word": self.word, "usage": self.usage, **opts})


@dataclass(frozen=True)
class FreeformItem:
    item_id: str
    word: str
    usage: str
    gold_definition: str

    def render_prompt(self) -> str:
        return render_template("task3", {"word": self.word, "usage": self.usage})


@dataclass
class GradeReport:
    task: str
    n: int
    score: float  # accuracy for MCQ tasks, mean similarity for free-form
    parse_failures: int
    per_item: list[dict] = field(default_factory=list)


def _context_with_term(entry: SlangUsage) -> str:
    needle = entry.term.lower()
    for context in entry.contexts:
        if needle in context.lower():
            return context
    raise UsageError(f"term {entry.term!r} does not occur in any of its contexts")


def mask_term(context: str, term: str) -> str:
    """Replace every case-insensitive occurrence of the term with the blank."""
    return re.sub(re.escape(term), MASK, context, flags=re.IGNORECASE)


def _distractors(gold: str, candidates: list[str], rng: random.Random) -> list[str]:
    seen = {fold(gold)}
    unique: list[str] = []
    for c in candidates:
        if fold(c) not in seen:
            unique.append(c)
            seen.add(fold(c))
    if len(unique) < 3:
        raise UsageError(f"not enough distinct distractors for {gold!r} (have {len(unique)})")
    return rng.sample(unique, 3)


def _item_id(task: str, entry: SlangUsage, entry_id: str | int | None) -> str:
    # a term alone is not unique (the same term can carry several senses)
    suffix = fold(entry.term) if entry_id is None else entry_id
    return f"{task}:{suffix}"


def _assemble(task: str, entry: SlangUsage, gold: str, distractors: list[str],
              rng: random.Random, entry_id, **fields) -> McqItem:
    options = [gold] + distractors
    rng.shuffle(options)
    label = LABELS[options.index(gold)]
    return McqItem(
        task=task,
        item_id=_item_id(task, entry, entry_id),
        options=tuple(options),
        correct_label=label,
        source_term=entry.term,
        **fields,
    )


def build_cloze_item(entry: SlangUsage, pool: Sequence[SlangUsage], rng: random.Random,
                     entry_id: str | int | None = None) -> McqItem:
    """Masked-usage MCQ whose options are slang terms."""
    context = _context_with_term(entry)
    masked = mask_term(context, entry.term)
    candidates = [u.term for u in pool if u is not entry]
    distractors = _distractors(entry.term, candidates, rng)
    return _assemble("cloze", entry, entry.term, distractors, rng, entry_id,
                     masked_usage=masked, definition=entry.definition)


def build_interpretation_item(entry: SlangUsage, pool: Sequence[SlangUsage],
                              rng: random.Random,
                              entry_id: str | int | None = None) -> McqItem:
    """Term-plus-usage MCQ whose options are definitions."""
    context = _context_with_term(entry)
    candidates = [u.definition for u in pool if u is not entry]
    distractors = _distractors(entry.definition, candidates, rng)
    return _assemble("interpretation", entry, entry.definition, distractors, rng, entry_id,
                     word=entry.term, usage=context)


def build_freeform_item(entry: SlangUsage, entry_id: str | int | None = None) -> FreeformItem:
    """Free-form definition-writing prompt for an entry."""
    context = _context_with_term(entry)
    if not context.strip():
        raise UsageError("entry has an empty usage context")
    return FreeformItem(
        item_id=_item_id("freeform", entry, entry_id),
        word=entry.term,
        usage=context,
        gold_definition=entry.definition,
    )


def _parse_answer(raw: str) -> str | None:
    obj = _first_json_object(raw)
    if obj is None:
        return None
    answer = obj.get("answer")
    return answer if isinstance(answer, str) else None


def grade_mcq(items: Sequence[McqItem], responses: Sequence[str]) -> GradeReport:
    """Score raw model responses against items (aligned by position).

    A response counts as correct when its first JSON object carries an
    ``answer`` that normalizes (strip + uppercase) to the item's label;
    anything unparseable or outside A-D counts wrong and increments the
    parse-failure tally.
    """
    if len(items) != len(responses):
        raise UsageError(f"{len(items)} items but {len(responses)} responses")
    if not items:
        raise UsageError("nothing to grade")
    correct = 0
    parse_failures = 0
    per_item = []
    for item, raw in zip(items, responses):
        answer = _parse_answer(raw)
        letter = answer.strip().upper() if answer is not None else None
        if letter not in LABELS:
            parse_failures += 1
            letter = None
        ok = letter == item.correct_label
        correct += ok
        per_item.append({"item_id": item.item_id, "answer": letter,
                         "correct_label": item.correct_label, "correct": ok})
    return GradeReport(task=items[0].task, n=len(items), score=correct / len(items),
                       parse_failures=parse_failures, per_item=per_item)


def grade_freeform(items: Sequence[FreeformItem], responses: Sequence[str],
                   embedder: EmbeddingProvider) -> GradeReport:
    """Mean embedding similarity of generated definitions to gold; failures score 0."""
    if len(items) != len(responses):
        raise UsageError(f"{len(items)} items but {len(responses)} responses")
    if not items:
        raise UsageError("nothing to grade")
    parse_failures = 0
    per_item = []
    total = 0.0
    for item, raw in zip(items, responses):
        answer = _parse_answer(raw)
        if answer is None or not answer.strip():
            parse_failures += 1
            similarity = 0.0
        else:
            gen_vec, gold_vec = embedder.embed([answer, item.gold_definition])
            similarity = cosine(gen_vec, gold_vec)
        total += similarity
        per_item.append({"item_id": item.item_id, "similarity": similarity})
    return GradeReport(task="freeform", n=len(items), score=total / len(items),
                       parse_failures=parse_failures, per_item=per_item)


def sample_eval_set(corpus: Sequence[SlangUsage], n: int = DEFAULT_EVAL_N,
                    rng: random.Random | None = None) -> list[SlangUsage]:
    """Seeded uniform sample without replacement."""
    if n > len(corpus):
        raise UsageError(f"cannot sample {n} entries from a corpus of {len(corpus)}")
    rng = rng if rng is not None else random.Random(0)
    return rng.sample(list(corpus), n)


# ---------------------------------------------------------------------------
# serialization (exam/response/report files)


def write_exam(items: Sequence[McqItem | FreeformItem], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for item in items:
            row = {"item_id": item.item_id, "prompt": item.render_prompt()}
            if isinstance(item, McqItem):
                row.update(options=list(item.options), correct_label=item.correct_label)
            else:
                row.update(gold_definition=item.gold_definition)
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")


def read_responses(path: str, item_ids: Sequence[str]) -> list[str]:
    """Align a ``{"item_id", "raw"}`` JSONL file to the given item order."""
    by_id: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                row = json.loads(line)
                by_id[row["item_id"]] = row["raw"]
    missing = [i for i in item_ids if i not in by_id]
    if missing:
        raise UsageError(f"responses file is missing {len(missing)} items (first: {missing[0]})")
    return [by_id[i] for i in item_ids]
