"""Slang generation orchestration against a chat-completion endpoint.

Two campaign styles:

* uncontrolled — keep prompting until N entries survive mode-compliance
  checking and dedup (or the round budget runs out);
* controlled — one sub-campaign per sense cluster, with the cluster's
  representative definition bound into the prompt and term-level dedup
  against both the cluster's own entries and everything generated for it
  so far.

Every request/response pair can be recorded to a JSONL transcript, and a
transcript can stand in for the live endpoint later: replay verifies each
outgoing request against the recording, so a replayed campaign is a
bit-exact rerun of the original.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Protocol, Sequence

from ._http import post_json
from .corpus import SlangUsage, classify_usage_type
from .dedup import DedupState, is_duplicate
from .embedding import EmbeddingProvider
from .errors import EndpointError, ReplayMismatchError, UsageError
from .lexicon import Lexicon
from .prompts import render_template
from .textutil import fold

logger = logging.getLogger(__name__)

CHAT_TOKEN_ENV = "SLANGBENCH_CHAT_TOKEN"

MODE_FREEFORM = "freeform"
MODE_REUSE = "reuse"
MODE_COINAGE = "coinage"
MODES = (MODE_FREEFORM, MODE_REUSE, MODE_COINAGE)

_MODE_LETTER = {MODE_FREEFORM: "F", MODE_REUSE: "R", MODE_COINAGE: "C"}

DEFAULT_TEMPERATURE = 1.2
DEFAULT_TOP_P = 0.95
DEFAULT_MAX_ROUNDS = 50
DEFAULT_PER_ROUND = 20
EXISTING_WORDS_WINDOW = 200


def condition_code(setting: str, mode: str) -> str:
    """Partition code like ``U-F`` from (uncontrolled|controlled, mode)."""
    if setting not in ("uncontrolled", "controlled"):
        raise UsageError(f"unknown setting {setting!r}")
    if mode not in MODES:
        raise UsageError(f"unknown mode {mode!r}")
    return ("U-" if setting == "uncontrolled" else "C-") + _MODE_LETTER[mode]


@dataclass
class GenerationJob:
    mode: str = MODE_FREEFORM
    n: int = 1
    temperature: float = DEFAULT_TEMPERATURE
    top_p: float = DEFAULT_TOP_P
    max_rounds: int = DEFAULT_MAX_ROUNDS
    per_round: int = DEFAULT_PER_ROUND

    def __post_init__(self):
        if self.mode not in MODES:
            raise UsageError(f"unknown mode {self.mode!r}")
        if self.n < 1:
            raise UsageError("target count must be >= 1")
        if self.temperature < 0:
            raise UsageError("temperature must be >= 0")
        if not 0 < self.top_p <= 1:
            raise UsageError("top_p must be in (0, 1]")


class ChatClient(Protocol):
    model: str

    def complete(self, prompt: str, temperature: float, top_p: float) -> str: ...


class HttpChatClient:
    """OpenAI-style chat completions endpoint client."""

    def __init__(self, url: str, model: str, timeout: float = 120.0,
                 token_env: str = CHAT_TOKEN_ENV):
        self.url = url
        self.model = model
        self.timeout = timeout
        self.token_env = token_env

    def complete(self, prompt: str, temperature: float, top_p: float) -> str:
        token = os.environ.get(self.token_env)
        headers = {"Authorization": f"Bearer {token}"} if token else {}
        body = post_json(self.url, {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": temperature,
            "top_p": top_p,
        }, headers=headers, timeout=self.timeout)
        try:
            return body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise EndpointError(f"chat endpoint response missing content: {exc}") from exc


def _request_record(model: str, prompt: str, temperature: float, top_p: float) -> dict:
    return {
        "model": model,
        "messages": [{"role": "user", "content": prompt}],
        "temperature": temperature,
        "top_p": top_p,
    }


class TranscriptRecorder:
    """Wrap a client and append every exchange to a JSONL transcript."""

    def __init__(self, client: ChatClient, path: str):
        self.client = client
        self.model = client.model
        self.path = path

    def complete(self, prompt: str, temperature: float, top_p: float) -> str:
        response = self.client.complete(prompt, temperature, top_p)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps({
                "request": _request_record(self.model, prompt, temperature, top_p),
                "response": response,
                "ts": time.time(),
            }, ensure_ascii=False) + "\n")
        return response


class ReplayChatClient:
    """Serve recorded responses in order, verifying each request matches.

    A divergence between the live request and the recorded one means the
    replayed code path no longer reproduces the original run, which is an
    error rather than something to paper over.
    """

    def __init__(self, transcript: str | Sequence[dict]):
        if isinstance(transcript, str):
            with open(transcript, encoding="utf-8") as fh:
                self._records = [json.loads(line) for line in fh if line.strip()]
        else:
            self._records = list(transcript)
        if not self._records:
            raise UsageError("transcript is empty")
        self.model = self._records[0]["request"]["model"]
        self._cursor = 0

    def complete(self, prompt: str, temperature: float, top_p: float) -> str:
        if self._cursor >= len(self._records):
            raise ReplayMismatchError("transcript exhausted: more requests than were recorded")
        record = self._records[self._cursor]
        self._cursor += 1
        expected = record["request"]
        actual = _request_record(self.model, prompt, temperature, top_p)
        if actual != expected:
            raise ReplayMismatchError(
                f"request #{self._cursor} diverged from transcript:\n"
                f"recorded: {json.dumps(expected)[:300]}\n"
                f"replayed: {json.dumps(actual)[:300]}")
        return record["response"]


# ---------------------------------------------------------------------------
# response parsing


def _first_json_object(text: str) -> dict | None:
    decoder = json.JSONDecoder()
    idx = text.find("{")
    while idx != -1:
        try:
            obj, _ = decoder.raw_decode(text[idx:])
        except json.JSONDecodeError:
            idx = text.find("{", idx + 1)
            continue
        if isinstance(obj, dict):
            return obj
        idx = text.find("{", idx + 1)
    return None


def parse_generation(raw: str) -> list[tuple[str, str, tuple[str, ...]]]:
    """Extract (word, definition, contexts) candidates from raw model output.

    The first JSON object found in the text is used, even when wrapped in
    prose or code fences. The three arrays must be aligned; anything
    malformed yields zero candidates with a warning (the campaign loop
    recovers by re-prompting).
    """
    obj = _first_json_object(raw)
    if obj is None:
        logger.warning("generation parse: no JSON object found")
        return []
    words = obj.get("word")
    definitions = obj.get("definition")
    contexts = obj.get("usage_context")
    if not all(isinstance(x, list) for x in (words, definitions, contexts)):
        logger.warning("generation parse: word/definition/usage_context arrays missing")
        return []
    if not len(words) == len(definitions) == len(contexts):
        logger.warning("generation parse: misaligned arrays (%d/%d/%d)",
                       len(words), len(definitions), len(contexts))
        return []
    candidates: list[tuple[str, str, tuple[str, ...]]] = []
    for word, definition, context in zip(words, definitions, contexts):
        if isinstance(context, str):
            context_list = (context,)
        elif isinstance(context, list) and all(isinstance(c, str) for c in context):
            context_list = tuple(context)
        else:
            logger.warning("generation parse: bad usage_context for %r, candidate dropped", word)
            continue
        if (not isinstance(word, str) or not word.strip()
                or not isinstance(definition, str) or not definition.strip()
                or not context_list or any(not c.strip() for c in context_list)):
            logger.warning("generation parse: incomplete candidate %r dropped", word)
            continue
        candidates.append((word.strip(), definition.strip(), context_list))
    return candidates


# ---------------------------------------------------------------------------
# campaign loops


@dataclass
class GenerationResult:
    usages: list[SlangUsage] = field(default_factory=list)
    rounds: int = 0
    complete: bool = False
    rejections: Counter = field(default_factory=Counter)
    parse_failures: int = 0
    provenance: list[dict] = field(default_factory=list)


def _mode_ok(mode: str, usage_type: str) -> bool:
    return mode == MODE_FREEFORM or usage_type == mode


def _run_rounds(
    *,
    template_id: str,
    template_bindings: dict[str, object],
    target: int,
    job: GenerationJob,
    client: ChatClient,
    lexicon: Lexicon,
    accept,  # callable(SlangUsage) -> bool: dedup check + commit
    condition: str,
) -> GenerationResult:
    result = GenerationResult()
    existing_terms: list[str] = list(template_bindings.pop("_existing_terms", []))
    while len(result.usages) < target and result.rounds < job.max_rounds:
        result.rounds += 1
        bindings = dict(template_bindings)
        bindings["number_of_slang"] = min(job.per_round, target - len(result.usages))
        bindings["existing_words"] = existing_terms[-EXISTING_WORDS_WINDOW:]
        prompt = render_template(template_id, bindings)
        raw = client.complete(prompt, job.temperature, job.top_p)
        raw_hash = hashlib.sha256(raw.encode("utf-8")).hexdigest()
        candidates = parse_generation(raw)
        if not candidates:
            result.parse_failures += 1
            continue
        for word, definition, contexts in candidates:
            if len(result.usages) >= target:
                break
            usage_type = classify_usage_type(word, lexicon)
            if not _mode_ok(job.mode, usage_type):
                result.rejections["mode_mismatch"] += 1
                continue
            usage = SlangUsage(
                term=word,
                definition=definition,
                contexts=contexts,
                source=f"model:{client.model}",
                condition=condition,
                usage_type=usage_type,
            )
            if not accept(usage):
                result.rejections["duplicate"] += 1
                continue
            result.usages.append(usage)
            existing_terms.append(word)
            result.provenance.append({
                "term": word,
                "round": result.rounds,
                "response_sha256": raw_hash,
            })
    result.complete = len(result.usages) >= target
    if not result.complete:
        logger.warning("round budget exhausted: %d/%d entries after %d rounds",
                       len(result.usages), target, result.rounds)
    return result


def generate_uncontrolled(
    job: GenerationJob,
    client: ChatClient,
    lexicon: Lexicon,
    embedder: EmbeddingProvider,
    state: DedupState | None = None,
) -> GenerationResult:
    """Iterative uncontrolled generation: prompt, filter, dedup, repeat.

    Candidates failing the mode constraint or duplicating an accepted
    (term, sense) pair are rejected; the loop stops at the target count or
    the round budget, whichever first (a short run is flagged, not fatal).
    """
    state = state if state is not None else DedupState()
    condition = condition_code("uncontrolled", job.mode)

    def accept(usage: SlangUsage) -> bool:
        if is_duplicate(usage, state, embedder):
            return False
        state.add(usage, embedder)
        return True

    return _run_rounds(
        template_id=condition,
        template_bindings={"_existing_terms": [t for t in state.accepted]},
        target=job.n,
        job=job,
        client=client,
        lexicon=lexicon,
        accept=accept,
        condition=condition,
    )


@dataclass(frozen=True)
class ControlledTarget:
    """One sense cluster to generate for: its representative and quota."""

    definition: str
    count: int
    existing_terms: tuple[str, ...] = ()


@dataclass
class ControlledResult:
    usages: list[SlangUsage] = field(default_factory=list)
    per_cluster: list[GenerationResult] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return all(r.complete for r in self.per_cluster)


def generate_controlled(
    targets: Sequence[ControlledTarget],
    job: GenerationJob,
    client: ChatClient,
    lexicon: Lexicon,
    embedder: EmbeddingProvider,
) -> ControlledResult:
    """Controlled generation: one bounded sub-campaign per sense cluster.

    Each cluster's prompt binds its representative definition; terms
    already attached to that sense (the cluster's own entries or earlier
    accepts in the sub-campaign) are rejected as duplicates.
    """
    result = ControlledResult()
    condition = condition_code("controlled", job.mode)
    for target in targets:
        taken = {fold(t) for t in target.existing_terms}

        def accept(usage: SlangUsage, taken=taken) -> bool:
            key = fold(usage.term)
            if key in taken:
                return False
            taken.add(key)
            return True

        sub = _run_rounds(
            template_id=condition,
            template_bindings={
                "definition": target.definition,
                "_existing_terms": list(target.existing_terms),
            },
            target=target.count,
            job=job,
            client=client,
            lexicon=lexicon,
            accept=accept,
            condition=condition,
        )
        result.per_cluster.append(sub)
        result.usages.extend(sub.usages)
    return result
