"""Sentence-embedding providers and vector operations.

Two interchangeable backends sit behind the same ``embed(texts)`` contract:

* ``RemoteEmbedder`` talks to an HTTP endpoint serving a sentence encoder
  (the production path).
* ``HashEmbedder`` is a deterministic, dependency-free bag-of-words
  projection used for tests and offline runs.

All providers L2-normalize their output, so cosine and Euclidean views of
similarity stay consistent downstream (for unit vectors,
``l2² = 2 - 2·cos``).
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from typing import Protocol, Sequence

import numpy as np
from filelock import FileLock

from ._http import post_json
from .errors import EndpointError, UsageError
from .textutil import default_stopwords, tokenize

logger = logging.getLogger(__name__)

EMBED_TOKEN_ENV = "SLANGBENCH_EMBED_TOKEN"


# ---------------------------------------------------------------------------
# vector operations


def _check_pair(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise UsageError(f"dimension mismatch: {u.shape} vs {v.shape}")
    return u, v


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    u, v = _check_pair(u, v)
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise UsageError("cosine of a zero vector is undefined")
    return float(np.dot(u, v) / (nu * nv))


def l2_distance(u: np.ndarray, v: np.ndarray) -> float:
    u, v = _check_pair(u, v)
    return float(np.linalg.norm(u - v))


def mean_vector(vectors: Sequence[np.ndarray]) -> np.ndarray:
    if not len(vectors):
        raise UsageError("mean_vector of an empty list")
    mat = np.asarray(vectors, dtype=float)
    if mat.ndim != 2:
        raise UsageError("mean_vector requires same-dimension vectors")
    return mat.mean(axis=0)


def normalize(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise UsageError("cannot normalize a zero vector")
    return v / norm


# ---------------------------------------------------------------------------
# providers


class EmbeddingProvider(Protocol):
    """Deterministic text -> unit-vector mapping; order-preserving batches."""

    backend_id: str

    def embed(self, texts: Sequence[str]) -> list[np.ndarray]: ...


class HashEmbedder:
    """Seeded hashed bag-of-words projection, L2-normalized.

    Each token is hashed (together with the seed) to a coordinate and a
    sign; a text maps to its signed token-count vector. Texts that are
    empty after stopword filtering map to the first basis vector so the
    output is always a unit vector.
    """

    def __init__(self, dim: int = 256, seed: int = 0, stopwords: frozenset[str] | None = None):
        if dim < 2:
            raise UsageError("HashEmbedder needs dim >= 2")
        self.dim = dim
        self.seed = seed
        self.stopwords = default_stopwords() if stopwords is None else stopwords
        self.backend_id = f"local-hash:d{dim}:s{seed}"

    def _slot(self, token: str) -> tuple[int, float]:
        digest = hashlib.sha256(f"{self.seed}:{token}".encode("utf-8")).digest()
        coord = int.from_bytes(digest[:8], "big") % self.dim
        sign = 1.0 if digest[8] & 1 else -1.0
        return coord, sign

    def embed(self, texts: Sequence[str]) -> list[np.ndarray]:
        out = []
        for text in texts:
            vec = np.zeros(self.dim)
            for token in tokenize(text):
                if token in self.stopwords:
                    continue
                coord, sign = self._slot(token)
                vec[coord] += sign
            if not vec.any():
                vec[0] = 1.0
            out.append(normalize(vec))
        return out


class RemoteEmbedder:
    """HTTP embedding endpoint client.

    Protocol: POST ``{"model": str, "input": [str]}`` ->
    ``{"data": [{"index": int, "embedding": [number]}]}``. Batches are
    capped at ``max_batch``; transient failures retry with exponential
    backoff. The embedding dimension must stay constant for the life of
    the client.
    """

    def __init__(self, url: str, model: str, max_batch: int = 64, timeout: float = 60.0,
                 token_env: str = EMBED_TOKEN_ENV):
        self.url = url
        self.model = model
        self.max_batch = max_batch
        self.timeout = timeout
        self.token_env = token_env
        self.backend_id = f"remote:{model}"
        self._dim: int | None = None

    def _headers(self) -> dict[str, str]:
        token = os.environ.get(self.token_env)
        return {"Authorization": f"Bearer {token}"} if token else {}

    def embed(self, texts: Sequence[str]) -> list[np.ndarray]:
        out: list[np.ndarray] = []
        for start in range(0, len(texts), self.max_batch):
            batch = list(texts[start:start + self.max_batch])
            body = post_json(self.url, {"model": self.model, "input": batch},
                             headers=self._headers(), timeout=self.timeout)
            rows = body.get("data")
            if not isinstance(rows, list) or len(rows) != len(batch):
                raise EndpointError(f"embedding endpoint returned {len(rows or [])} rows for {len(batch)} inputs")
            ordered: list[np.ndarray | None] = [None] * len(batch)
            for row in rows:
                vec = np.asarray(row["embedding"], dtype=float)
                if not np.all(np.isfinite(vec)):
                    raise EndpointError("embedding endpoint returned non-finite components")
                if self._dim is None:
                    self._dim = vec.shape[0]
                elif vec.shape[0] != self._dim:
                    raise EndpointError(f"embedding dimension changed mid-session: {vec.shape[0]} != {self._dim}")
                ordered[int(row["index"])] = normalize(vec)
            if any(v is None for v in ordered):
                raise EndpointError("embedding endpoint response is missing indices")
            out.extend(ordered)  # type: ignore[arg-type]
        return out


class CachedEmbedder:
    """JSONL sidecar cache in front of another provider.

    Keys are (backend id, sha256 of text) so switching models never mixes
    vectors. Appends happen under a file lock; readers load a snapshot at
    construction and extend it as new texts are embedded.
    """

    def __init__(self, provider: EmbeddingProvider, path: str):
        self.provider = provider
        self.path = path
        self.backend_id = provider.backend_id
        self._lock = FileLock(path + ".lock")
        self._cache: dict[str, np.ndarray] = {}
        self._load()

    @staticmethod
    def _key(text: str) -> str:
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def _load(self) -> None:
        if not os.path.exists(self.path):
            return
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                try:
                    row = json.loads(line)
                except json.JSONDecodeError:
                    logger.warning("embedding cache %s: skipping corrupt line", self.path)
                    continue
                if row.get("backend") == self.backend_id:
                    self._cache[row["key"]] = np.asarray(row["vector"], dtype=float)

    def embed(self, texts: Sequence[str]) -> list[np.ndarray]:
        keys = [self._key(t) for t in texts]
        missing_idx = [i for i, k in enumerate(keys) if k not in self._cache]
        if missing_idx:
            # one provider call per batch of misses, then a single locked append
            fresh = self.provider.embed([texts[i] for i in missing_idx])
            with self._lock:
                with open(self.path, "a", encoding="utf-8") as fh:
                    for i, vec in zip(missing_idx, fresh):
                        self._cache[keys[i]] = vec
                        fh.write(json.dumps({
                            "backend": self.backend_id,
                            "key": keys[i],
                            "vector": [float(x) for x in vec],
                        }) + "\n")
        return [self._cache[k] for k in keys]
