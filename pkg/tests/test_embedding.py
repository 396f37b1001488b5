import json
import math
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import numpy as np
import pytest

from slangbench.embedding import (
    CachedEmbedder,
    HashEmbedder,
    RemoteEmbedder,
    cosine,
    l2_distance,
    mean_vector,
    normalize,
)
from slangbench.errors import EndpointError, UsageError


# ---------------------------------------------------------------------------
# vector ops


def test_cosine_self_is_one():
    v = np.array([3.0, 4.0])
    assert cosine(v, v) == pytest.approx(1.0, abs=1e-12)


def test_l2_closed_form():
    assert l2_distance(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == pytest.approx(math.sqrt(2))


def test_mean_vector_cancellation():
    mean = mean_vector([np.array([0.0, 1.0]), np.array([0.0, -1.0])])
    assert np.allclose(mean, [0.0, 0.0])


def test_zero_vector_errors():
    z = np.zeros(2)
    with pytest.raises(UsageError):
        cosine(z, np.array([1.0, 0.0]))
    with pytest.raises(UsageError):
        normalize(z)


def test_dim_mismatch_errors():
    with pytest.raises(UsageError):
        l2_distance(np.zeros(2), np.zeros(3))
    with pytest.raises(UsageError):
        mean_vector([])


def test_cosine_bounds_and_symmetry_random():
    rng = np.random.default_rng(11)
    for _ in range(50):
        u, v = rng.normal(size=8), rng.normal(size=8)
        c = cosine(u, v)
        assert -1.0 - 1e-9 <= c <= 1.0 + 1e-9
        assert c == pytest.approx(cosine(v, u), abs=1e-12)


def test_triangle_inequality_random():
    rng = np.random.default_rng(13)
    for _ in range(100):
        a, b, c = rng.normal(size=(3, 6))
        assert l2_distance(a, c) <= l2_distance(a, b) + l2_distance(b, c) + 1e-9


def test_unit_vector_identity_ties_cosine_to_euclidean():
    rng = np.random.default_rng(17)
    for _ in range(50):
        u = normalize(rng.normal(size=5))
        v = normalize(rng.normal(size=5))
        assert l2_distance(u, v) ** 2 == pytest.approx(2 - 2 * cosine(u, v), abs=1e-9)


# ---------------------------------------------------------------------------
# local backend


def test_hash_embedder_deterministic():
    emb = HashEmbedder(dim=64, seed=3)
    a, b = emb.embed(["a zingy phrase", "a zingy phrase"])
    assert np.array_equal(a, b)
    again = HashEmbedder(dim=64, seed=3).embed(["a zingy phrase"])[0]
    assert np.array_equal(a, again)


def test_hash_embedder_unit_norm():
    emb = HashEmbedder(dim=32, seed=0)
    for vec in emb.embed(["one two", "three four five", ""]):
        assert np.linalg.norm(vec) == pytest.approx(1.0, abs=1e-9)


def test_hash_embedder_disjoint_tokens_near_orthogonal():
    emb = HashEmbedder(dim=1024, seed=1)
    u, v = emb.embed(["marble granite quartz", "whisper shout murmur"])
    assert abs(cosine(u, v)) < 0.1


def test_hash_embedder_self_cosine():
    emb = HashEmbedder(dim=128, seed=5)
    u, v = emb.embed(["identical text here"] * 2)
    assert cosine(u, v) == pytest.approx(1.0, abs=1e-9)


def test_hash_embedder_stopword_only_maps_to_basis():
    emb = HashEmbedder(dim=16, seed=0)
    empty, stops = emb.embed(["", "the of and"])
    expected = np.zeros(16)
    expected[0] = 1.0
    assert np.array_equal(empty, expected)
    assert np.array_equal(stops, expected)


def test_hash_embedder_duplicates_in_batch_identical():
    emb = HashEmbedder(dim=64, seed=9)
    vecs = emb.embed(["dup", "other", "dup"])
    assert np.array_equal(vecs[0], vecs[2])
    assert len(vecs) == 3


def test_hash_embedder_empty_batch():
    assert HashEmbedder(dim=8).embed([]) == []


def test_hash_embedder_rejects_tiny_dim():
    with pytest.raises(UsageError):
        HashEmbedder(dim=1)


# ---------------------------------------------------------------------------
# remote backend against a fixture server


class _EmbedHandler(BaseHTTPRequestHandler):
    vectors = {}
    fail_first = 0
    calls = 0

    def do_POST(self):
        cls = type(self)
        cls.calls += 1
        body = json.loads(self.rfile.read(int(self.headers["Content-Length"])))
        if cls.fail_first > 0:
            cls.fail_first -= 1
            self.send_response(503)
            self.end_headers()
            return
        data = [{"index": i, "embedding": cls.vectors[t]} for i, t in enumerate(body["input"])]
        payload = json.dumps({"data": data}).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, *args):
        pass


@pytest.fixture
def embed_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _EmbedHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    _EmbedHandler.vectors = {}
    _EmbedHandler.fail_first = 0
    _EmbedHandler.calls = 0
    yield f"http://127.0.0.1:{server.server_port}"
    server.shutdown()


def test_remote_passthrough_and_normalization(embed_server):
    _EmbedHandler.vectors = {"a": [3.0, 0.0], "b": [0.0, 5.0]}
    emb = RemoteEmbedder(embed_server, model="test-embed")
    va, vb = emb.embed(["a", "b"])
    assert np.allclose(va, [1.0, 0.0])
    assert np.allclose(vb, [0.0, 1.0])


def test_remote_empty_batch(embed_server):
    emb = RemoteEmbedder(embed_server, model="test-embed")
    assert emb.embed([]) == []


def test_remote_retries_transient_failures(embed_server):
    _EmbedHandler.vectors = {"a": [1.0, 0.0]}
    _EmbedHandler.fail_first = 2
    emb = RemoteEmbedder(embed_server, model="test-embed")
    vecs = emb.embed(["a"])
    assert np.allclose(vecs[0], [1.0, 0.0])
    assert _EmbedHandler.calls == 3


def test_remote_dimension_change_is_fatal(embed_server):
    _EmbedHandler.vectors = {"a": [1.0, 0.0], "b": [1.0, 0.0, 0.0]}
    emb = RemoteEmbedder(embed_server, model="test-embed")
    emb.embed(["a"])
    with pytest.raises(EndpointError):
        emb.embed(["b"])


def test_remote_gives_up_after_retries(embed_server):
    _EmbedHandler.fail_first = 99
    emb = RemoteEmbedder(embed_server, model="test-embed")
    with pytest.raises(EndpointError):
        emb.embed(["a"])
    assert _EmbedHandler.calls == 3


# ---------------------------------------------------------------------------
# cache


def test_cache_hits_avoid_provider_calls(tmp_path):
    class CountingEmbedder(HashEmbedder):
        calls = 0

        def embed(self, texts):
            type(self).calls += len(texts)
            return super().embed(texts)

    path = str(tmp_path / "cache.jsonl")
    emb = CachedEmbedder(CountingEmbedder(dim=16, seed=0), path)
    first = emb.embed(["x", "y"])
    assert CountingEmbedder.calls == 2
    second = emb.embed(["x", "y"])
    assert CountingEmbedder.calls == 2
    assert all(np.array_equal(a, b) for a, b in zip(first, second))
    # a fresh instance reads the sidecar back
    emb2 = CachedEmbedder(CountingEmbedder(dim=16, seed=0), path)
    third = emb2.embed(["y", "x"])
    assert CountingEmbedder.calls == 2
    assert np.array_equal(third[0], first[1])


def test_cache_is_keyed_by_backend(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    a = CachedEmbedder(HashEmbedder(dim=16, seed=0), path)
    a.embed(["x"])
    b = CachedEmbedder(HashEmbedder(dim=16, seed=1), path)
    vec_b = b.embed(["x"])[0]
    assert np.array_equal(vec_b, HashEmbedder(dim=16, seed=1).embed(["x"])[0])
