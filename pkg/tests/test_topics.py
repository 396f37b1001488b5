import numpy as np
import pytest

from slangbench.errors import UsageError
from slangbench.topics import fit_lda, top_words

VOCAB_A = ["apple", "banana", "cherry", "date", "elder", "fig",
           "grape", "kiwi", "lemon", "mango", "nectar", "olive"]
VOCAB_B = ["quartz", "topaz", "onyx", "jasper", "agate", "beryl",
           "coral", "diamond", "emerald", "flint", "garnet", "zircon"]


def synthetic_corpus(n_per_side=100, words_per_doc=6, seed=0):
    rng = np.random.default_rng(seed)
    docs = []
    for vocab in (VOCAB_A, VOCAB_B):
        for _ in range(n_per_side):
            docs.append(" ".join(rng.choice(vocab, size=words_per_doc)))
    return docs


def test_k1_reproduces_term_frequencies():
    docs = ["apple banana apple", "cherry banana", "apple cherry cherry"]
    model = fit_lda(docs, k=1, iters=10, seed=0)
    counts = {"apple": 3, "banana": 2, "cherry": 3}
    total = sum(counts.values())
    for word, weight in zip(model.vocabulary, model.topic_word_weights[0]):
        assert weight == pytest.approx(counts[word] / total, abs=1e-6)


def test_two_vocabulary_separation():
    model = fit_lda(synthetic_corpus(), k=2, iters=200, seed=1)
    memberships = []
    for topic in range(2):
        words = [w for w, _ in top_words(model, topic, 5)]
        in_a = all(w in VOCAB_A for w in words)
        in_b = all(w in VOCAB_B for w in words)
        assert in_a or in_b
        memberships.append("A" if in_a else "B")
    assert set(memberships) == {"A", "B"}


def test_seed_determinism():
    docs = synthetic_corpus(n_per_side=20)
    a = fit_lda(docs, k=3, iters=50, seed=42)
    b = fit_lda(docs, k=3, iters=50, seed=42)
    assert a.vocabulary == b.vocabulary
    assert np.array_equal(a.topic_word_weights, b.topic_word_weights)
    c = fit_lda(docs, k=3, iters=50, seed=43)
    assert not np.array_equal(a.topic_word_weights, c.topic_word_weights)


def test_rows_stochastic_and_nonnegative():
    model = fit_lda(synthetic_corpus(n_per_side=30), k=4, iters=50, seed=7)
    weights = model.topic_word_weights
    assert np.all(weights >= 0)
    assert np.allclose(weights.sum(axis=1), 1.0, atol=1e-9)


def test_document_order_permutation_same_topic_sets():
    docs = synthetic_corpus(n_per_side=50)
    model_a = fit_lda(docs, k=2, iters=150, seed=3)
    rng = np.random.default_rng(9)
    shuffled = list(docs)
    rng.shuffle(shuffled)
    model_b = fit_lda(shuffled, k=2, iters=150, seed=3)
    sets_a = {frozenset(w for w, _ in top_words(model_a, t, 5)) for t in range(2)}
    sets_b = {frozenset(w for w, _ in top_words(model_b, t, 5)) for t in range(2)}
    assert sets_a == sets_b


def test_top_words_full_vocabulary_sorted():
    docs = ["apple banana apple", "cherry banana apple"]
    model = fit_lda(docs, k=1, iters=10, seed=0)
    ranked = top_words(model, 0, n=len(model.vocabulary))
    weights = [wt for _, wt in ranked]
    assert weights == sorted(weights, reverse=True)
    assert ranked[0][0] == "apple"  # modal word of the corpus


def test_top_words_ties_lexicographic():
    docs = ["banana apple", "apple banana"]
    model = fit_lda(docs, k=1, iters=10, seed=0)
    assert [w for w, _ in top_words(model, 0, 2)] == ["apple", "banana"]


def test_top_words_default_is_twenty():
    model = fit_lda(synthetic_corpus(n_per_side=20), k=1, iters=10, seed=0)
    assert len(model.vocabulary) >= 20
    assert len(top_words(model, 0)) == 20


def test_top_words_bounds():
    docs = ["apple banana", "cherry banana"]
    model = fit_lda(docs, k=1, iters=10, seed=0)
    with pytest.raises(UsageError):
        top_words(model, 0, n=99)
    with pytest.raises(UsageError):
        top_words(model, 5, n=1)


def test_needs_enough_documents():
    with pytest.raises(UsageError):
        fit_lda(["apple banana"], k=2, iters=10, seed=0)
    # stopword-only docs are dropped before the check
    with pytest.raises(UsageError):
        fit_lda(["the of and", "apple banana", "cherry date"], k=3, iters=10, seed=0)


def test_empty_vocabulary_rejected():
    with pytest.raises(UsageError):
        fit_lda(["the of", "and or"], k=1, iters=10, seed=0)
