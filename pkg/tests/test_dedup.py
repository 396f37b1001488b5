import math
import random

import numpy as np
import pytest

from slangbench.dedup import (
    DedupState,
    cluster_representative,
    cluster_senses,
    dbscan_labels,
    is_duplicate,
)
from slangbench.embedding import HashEmbedder
from slangbench.errors import UsageError

from conftest import StaticEmbedder, make_usage


# ---------------------------------------------------------------------------
# duplicate rule


def test_unseen_term_is_not_duplicate():
    emb = HashEmbedder(dim=64, seed=0)
    state = DedupState()
    assert not is_duplicate(make_usage("fresh", "a new idea"), state, emb)


def test_same_term_identical_definition_is_duplicate():
    emb = HashEmbedder(dim=64, seed=0)
    state = DedupState()
    usage = make_usage("glorp", "a sticky situation")
    state.add(usage, emb)
    assert is_duplicate(make_usage("glorp", "a sticky situation"), state, emb)


def test_same_term_distinct_sense_kept():
    # cosine 0 between the two definitions by construction
    emb = StaticEmbedder({"sense one": [1.0, 0.0], "sense two": [0.0, 1.0]})
    state = DedupState()
    state.add(make_usage("glorp", "sense one"), emb)
    assert not is_duplicate(make_usage("glorp", "sense two"), state, emb)


def test_threshold_boundary_inclusive():
    # cosine((1,0),(4,3)) = 4/5 = 0.8 exactly
    emb = StaticEmbedder({"base": [1.0, 0.0], "at bound": [4.0, 3.0], "just under": None})
    theta = math.acos(0.8 - 1e-6)
    emb.mapping["just under"] = np.array([math.cos(theta), math.sin(theta)])
    state = DedupState()
    state.add(make_usage("glorp", "base"), emb)
    assert is_duplicate(make_usage("glorp", "at bound"), state, emb)
    assert not is_duplicate(make_usage("glorp", "just under"), state, emb)


def test_dedup_pipeline_idempotent():
    emb = HashEmbedder(dim=128, seed=2)
    corpus = [
        make_usage("alpha", "first greek letter"),
        make_usage("alpha", "a dominant person"),
        make_usage("beta", "second greek letter"),
        make_usage("alpha", "first greek letter"),  # exact repeat
    ]
    state = DedupState()
    accepted = []
    for usage in corpus:
        if not is_duplicate(usage, state, emb):
            state.add(usage, emb)
            accepted.append(usage)
    assert len(accepted) == 3
    # second pass accepts nothing
    for usage in corpus:
        assert is_duplicate(usage, state, emb) or usage not in accepted


# ---------------------------------------------------------------------------
# DBSCAN against a brute-force reference


def brute_force_dbscan(points, eps, min_pts):
    """Straight-from-the-definition DBSCAN: quadratic loops, closure by fixpoint."""
    n = len(points)
    dist = [[math.dist(points[i], points[j]) for j in range(n)] for i in range(n)]
    core = [sum(1 for j in range(n) if dist[i][j] <= eps) >= min_pts for i in range(n)]
    # transitive closure over core-core eps links, iterated until stable
    comp = [i if core[i] else -1 for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            if not core[i]:
                continue
            for j in range(n):
                if core[j] and dist[i][j] <= eps and comp[j] != comp[i]:
                    new = min(comp[i], comp[j])
                    if comp[i] != new or comp[j] != new:
                        comp[i] = comp[j] = new
                        changed = True
    labels = comp[:]
    for i in range(n):
        if core[i]:
            continue
        best, best_d = -1, None
        for j in range(n):
            if core[j] and dist[i][j] <= eps and (best_d is None or dist[i][j] < best_d):
                best, best_d = comp[j], dist[i][j]
        labels[i] = best
    return labels


def as_partition(labels):
    clusters = {}
    singletons = []
    for idx, label in enumerate(labels):
        if label == -1:
            singletons.append(frozenset([idx]))
        else:
            clusters.setdefault(label, set()).add(idx)
    return frozenset(list(map(frozenset, clusters.values())) + singletons)


def random_instance(rng, n, dim=3):
    # a few tight blobs on the unit sphere plus scattered isolated points
    centers = rng.normal(size=(rng.integers(1, 4), dim))
    centers /= np.linalg.norm(centers, axis=1, keepdims=True)
    points = []
    for _ in range(n):
        if rng.random() < 0.8:
            c = centers[rng.integers(len(centers))]
            p = c + rng.normal(scale=0.08, size=dim)
        else:
            p = rng.normal(size=dim)
        points.append(p / np.linalg.norm(p))
    return np.array(points)


def test_dbscan_matches_brute_force_on_random_instances():
    rng = np.random.default_rng(42)
    for trial in range(20):
        n = int(rng.integers(5, 65))
        pts = random_instance(rng, n)
        eps = float(rng.choice([0.3, 0.5, 0.8]))
        min_pts = int(rng.choice([3, 5]))
        mine = dbscan_labels(pts, eps, min_pts)
        ref = brute_force_dbscan([tuple(p) for p in pts], eps, min_pts)
        assert as_partition(mine) == as_partition(ref), f"trial {trial}"


def test_dbscan_permutation_invariant():
    rng = np.random.default_rng(7)
    pts = random_instance(rng, 40)
    base = as_partition(dbscan_labels(pts, 0.5, 5))
    for seed in range(5):
        perm = np.random.default_rng(seed).permutation(len(pts))
        labels = dbscan_labels(pts[perm], 0.5, 5)
        # map back to original indices
        back = [None] * len(pts)
        for new_idx, old_idx in enumerate(perm):
            back[old_idx] = labels[new_idx]
        relabeled = {}
        canon = []
        for old_idx, lab in enumerate(back):
            canon.append(relabeled.setdefault(lab, len(relabeled)) if lab != -1 else -1)
        assert as_partition(canon) == base


# ---------------------------------------------------------------------------
# cluster_senses


def test_identical_definitions_single_cluster():
    emb = HashEmbedder(dim=64, seed=0)
    clusters = cluster_senses(["the same sense"] * 10, emb)
    assert len(clusters) == 1
    assert sorted(clusters[0].member_ids) == list(range(10))
    assert clusters[0].representative == "the same sense"


def test_two_groups_plus_singleton():
    # two tight groups of 6 far apart, plus one isolated point
    mapping = {}
    group_a = [f"a{i}" for i in range(6)]
    group_b = [f"b{i}" for i in range(6)]
    rng = np.random.default_rng(3)
    for i, name in enumerate(group_a):
        mapping[name] = np.array([1.0, 0.0, 0.0]) + rng.normal(scale=0.02, size=3)
    for name in group_b:
        mapping[name] = np.array([0.0, 1.0, 0.0]) + rng.normal(scale=0.02, size=3)
    mapping["lonely"] = np.array([0.0, 0.0, 1.0])
    emb = StaticEmbedder(mapping, unit=True)
    definitions = group_a + group_b + ["lonely"]
    clusters = cluster_senses(definitions, emb, eps=0.5, min_pts=5)
    sizes = sorted(len(c.member_ids) for c in clusters)
    assert sizes == [1, 6, 6]
    partition = {frozenset(c.member_ids) for c in clusters}
    assert frozenset(range(6)) in partition
    assert frozenset(range(6, 12)) in partition


def test_clusters_cover_inputs_and_are_disjoint():
    emb = HashEmbedder(dim=64, seed=1)
    defs = [f"definition number {i}" for i in range(25)]
    clusters = cluster_senses(defs, emb)
    seen = []
    for c in clusters:
        seen.extend(c.member_ids)
        assert defs[c.member_ids[0]] is not None
        assert c.representative in [defs[i] for i in c.member_ids]
    assert sorted(seen) == list(range(25))


def test_cluster_senses_requires_input():
    with pytest.raises(UsageError):
        cluster_senses([], HashEmbedder(dim=8))


# ---------------------------------------------------------------------------
# representative selection


def test_representative_majority():
    rng = random.Random(0)
    assert cluster_representative(["a", "a", "a", "b"], {"a": 3, "b": 1}, rng) == "a"


def test_representative_tie_is_seeded():
    picks = {cluster_representative(["a", "b"], {"a": 2, "b": 2}, random.Random(5))
             for _ in range(10)}
    assert len(picks) == 1
    assert picks.pop() in {"a", "b"}


def test_representative_tie_uniform_over_seeds():
    members = [f"m{i}" for i in range(5)]
    counts = {m: 1 for m in members}
    draws = [cluster_representative(members, counts, random.Random(seed))
             for seed in range(10_000)]
    for m in members:
        freq = draws.count(m) / len(draws)
        assert abs(freq - 0.2) < 0.02


def test_representative_requires_covering_counts():
    with pytest.raises(UsageError):
        cluster_representative(["a", "b"], {"a": 1}, random.Random(0))
