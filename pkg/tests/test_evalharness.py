import json
import random
from collections import Counter

import pytest

from slangbench.embedding import HashEmbedder
from slangbench.errors import UsageError
from slangbench.evalharness import (
    LABELS,
    build_cloze_item,
    build_freeform_item,
    build_interpretation_item,
    grade_freeform,
    grade_mcq,
    mask_term,
    sample_eval_set,
)

from conftest import make_usage


@pytest.fixture
def pool():
    return [
        make_usage("bruddah", "alternate spelling of brother.", ("Safe, my bruddah.",)),
        make_usage("cuckoo", "crazy.", ("He's cuckoo.",)),
        make_usage("glorp", "a sticky situation.", ("What a glorp we're in.",)),
        make_usage("zingfoot", "sudden joy in the legs.", ("The music made her feel zingfoot.",)),
        make_usage("snurfle", "to search distractedly.", ("Don't snurfle my desk.",)),
    ]


# ---------------------------------------------------------------------------
# masking


def test_mask_replaces_every_occurrence_case_insensitive():
    masked = mask_term("Glorp here, GLORP there, and glorp again.", "glorp")
    assert masked == "___ here, ___ there, and ___ again."
    assert "glorp" not in masked.lower()


def test_masked_usage_from_bruddah_entry(pool):
    item = build_cloze_item(pool[0], pool, random.Random(0))
    assert item.masked_usage == "Safe, my ___."


# ---------------------------------------------------------------------------
# item construction


def test_cloze_pool_of_four_forces_distractors(pool):
    entry = pool[0]
    quartet = pool[:4]
    item = build_cloze_item(entry, quartet, random.Random(1))
    assert sorted(item.options) == sorted([u.term for u in quartet])
    assert item.options[LABELS.index(item.correct_label)] == entry.term


def test_cloze_requires_enough_distractors(pool):
    with pytest.raises(UsageError):
        build_cloze_item(pool[0], pool[:3], random.Random(0))


def test_cloze_requires_term_in_context(pool):
    odd = make_usage("ghostly", "unseen.", ("nothing here",))
    with pytest.raises(UsageError):
        build_cloze_item(odd, pool + [odd], random.Random(0))


def test_options_all_distinct_many_seeds(pool):
    for seed in range(200):
        item = build_cloze_item(pool[1], pool, random.Random(seed))
        assert len(set(item.options)) == 4
        masked = item.masked_usage
        assert pool[1].term.lower() not in masked.lower()


def test_interpretation_item_options_are_definitions(pool):
    item = build_interpretation_item(pool[2], pool, random.Random(3))
    assert item.word == "glorp"
    assert item.usage == "What a glorp we're in."
    gold = item.options[LABELS.index(item.correct_label)]
    assert gold == pool[2].definition
    assert all(opt != gold for i, opt in enumerate(item.options)
               if LABELS[i] != item.correct_label)


def test_interpretation_prompt_uses_bundled_template(pool):
    item = build_interpretation_item(pool[2], pool, random.Random(3))
    prompt = item.render_prompt()
    assert "choose the correct definition of the slang word" in prompt
    assert "Word:\nglorp" in prompt
    assert f"A. {item.options[0]}" in prompt


def test_distractors_never_equal_gold_casefolded(pool):
    lookalike = make_usage("GLORP", "a different meaning.", ("Pure GLORP energy.",))
    extended = pool + [lookalike]
    for seed in range(100):
        item = build_cloze_item(pool[2], extended, random.Random(seed))
        assert sum(1 for o in item.options if o.lower() == "glorp") == 1


def test_gold_label_roughly_uniform(pool):
    counts = Counter(
        build_cloze_item(pool[1], pool, random.Random(seed)).correct_label
        for seed in range(1000)
    )
    for label in LABELS:
        assert 0.21 <= counts[label] / 1000 <= 0.29


def test_freeform_item_renders_template(pool):
    item = build_freeform_item(pool[3])
    prompt = item.render_prompt()
    assert "write a concise definition of the slang word" in prompt
    assert "Word:\nzingfoot" in prompt
    assert "Usage:\nThe music made her feel zingfoot." in prompt


def test_freeform_unicode_term_roundtrip():
    entry = make_usage("café-crawl", "visiting many cafés.", ("We did a café-crawl downtown.",))
    item = build_freeform_item(entry)
    assert "café-crawl" in item.render_prompt()


def test_freeform_requires_usable_context():
    entry = make_usage("ghostly", "unseen.", ("no match",))
    with pytest.raises(UsageError):
        build_freeform_item(entry)


# ---------------------------------------------------------------------------
# grading


def answer(letter):
    return json.dumps({"answer": letter})


def test_grade_mcq_counts(pool):
    items = [build_cloze_item(e, pool, random.Random(i)) for i, e in enumerate(pool[:4])]
    responses = [answer(items[0].correct_label),
                 answer(items[1].correct_label),
                 answer(items[2].correct_label),
                 answer("A" if items[3].correct_label != "A" else "B")]
    report = grade_mcq(items, responses)
    assert report.n == 4
    assert report.score == 0.75
    assert report.parse_failures == 0


def test_grade_mcq_whitespace_and_case_invariance(pool):
    item = build_cloze_item(pool[0], pool, random.Random(0))
    raw = json.dumps({"answer": f"  {item.correct_label.lower()}  "})
    assert grade_mcq([item], [raw]).score == 1.0


def test_grade_mcq_parse_failures_count_wrong(pool):
    item = build_cloze_item(pool[0], pool, random.Random(0))
    for raw in ["not json at all", json.dumps({"answer": "E"}),
                json.dumps({"answer": 3}), json.dumps({"choice": "A"})]:
        report = grade_mcq([item], [raw])
        assert report.score == 0.0
        assert report.parse_failures == 1


def test_grade_mcq_constant_answer_scores_quarter(pool):
    items = [build_cloze_item(pool[1], pool, random.Random(seed))
             for seed in range(10_000)]
    report = grade_mcq(items, [answer("A")] * len(items))
    assert abs(report.score - 0.25) < 0.02


def test_grade_mcq_all_correct(pool):
    items = [build_cloze_item(e, pool, random.Random(i)) for i, e in enumerate(pool[:4])]
    report = grade_mcq(items, [answer(i.correct_label) for i in items])
    assert report.score == 1.0


def test_grade_freeform_verbatim_answer(pool):
    item = build_freeform_item(pool[2])
    raw = json.dumps({"answer": pool[2].definition})
    report = grade_freeform([item], [raw], HashEmbedder(dim=128))
    assert report.score == pytest.approx(1.0, abs=1e-9)


def test_grade_freeform_disjoint_tokens_near_zero(pool):
    item = build_freeform_item(pool[2])
    raw = json.dumps({"answer": "marble quartz granite pebble"})
    report = grade_freeform([item], [raw], HashEmbedder(dim=1024))
    assert abs(report.score) < 0.15


def test_grade_freeform_parse_failure_scores_zero(pool):
    item = build_freeform_item(pool[2])
    report = grade_freeform([item], ["total garbage"], HashEmbedder(dim=64))
    assert report.score == 0.0
    assert report.parse_failures == 1


# ---------------------------------------------------------------------------
# sampling


def test_sample_whole_corpus(pool):
    assert sorted(u.term for u in sample_eval_set(pool, len(pool), random.Random(0))) == \
        sorted(u.term for u in pool)


def test_sample_seeded_identical(pool):
    a = sample_eval_set(pool, 3, random.Random(9))
    b = sample_eval_set(pool, 3, random.Random(9))
    assert [u.term for u in a] == [u.term for u in b]


def test_sample_too_large_rejected(pool):
    with pytest.raises(UsageError):
        sample_eval_set(pool, 6, random.Random(0))


def test_sample_uniformity_over_seeds():
    corpus = [make_usage(f"term{i}", contexts=(f"use of term{i}",)) for i in range(10)]
    counts = Counter()
    n_draws = 10_000
    for seed in range(n_draws):
        for u in sample_eval_set(corpus, 3, random.Random(seed)):
            counts[u.term] += 1
    expected = n_draws * 3 / 10
    chi2 = sum((counts[f"term{i}"] - expected) ** 2 / expected for i in range(10))
    # 9 dof: the 0.999 quantile is ~27.9
    assert chi2 < 27.9
