"""Command-line surface: ingest, classify, cluster, metrics, topics, generate, exam, report.

Every command writes its artifact files plus a machine-readable manifest
(inputs with content hashes, config hash, seed, versions) so any output
can be reproduced without shell history. Commands that involve randomness
refuse to run without an explicit ``--seed``. Secrets are environment-only
(``SLANGBENCH_EMBED_TOKEN`` / ``SLANGBENCH_CHAT_TOKEN``); the JSON config
file holds everything else.

Exit codes: 0 success, 1 usage error, 2 data error, 3 endpoint error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import math
import os
import platform
import random
import sys
from collections import Counter

import numpy as np
import scipy

from . import __version__
from . import corpus as corpus_mod
from . import dedup as dedup_mod
from . import evalharness as eval_mod
from . import genpipe as gen_mod
from . import metrics as metrics_mod
from . import morph as morph_mod
from . import topics as topics_mod
from .corpus import COINAGE, REUSE, SlangUsage
from .embedding import CachedEmbedder, HashEmbedder, RemoteEmbedder
from .errors import DataError, EndpointError, SlangbenchError, UsageError
from .lexicon import read_lexicon
from .textutil import load_stopwords

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_ENDPOINT = 3


# ---------------------------------------------------------------------------
# config / manifest plumbing


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from exc


def build_embedder(config: dict):
    emb = config.get("embedding", {})
    backend = emb.get("backend", "local")
    if backend == "local":
        provider = HashEmbedder(dim=int(emb.get("dim", 256)), seed=int(emb.get("seed", 0)))
    elif backend == "remote":
        for key in ("url", "model"):
            if key not in emb:
                raise UsageError(f"embedding config needs {key!r} for the remote backend")
        provider = RemoteEmbedder(url=emb["url"], model=emb["model"],
                                  max_batch=int(emb.get("batch", 64)))
    else:
        raise UsageError(f"unknown embedding backend {backend!r}")
    cache = emb.get("cache")
    return CachedEmbedder(provider, cache) if cache else provider


def build_chat_client(config: dict, replay: str | None):
    if replay:
        return gen_mod.ReplayChatClient(replay)
    chat = config.get("chat", {})
    for key in ("url", "model"):
        if key not in chat:
            raise UsageError("chat config needs 'url' and 'model' (or pass --replay)")
    return gen_mod.HttpChatClient(url=chat["url"], model=chat["model"])


def build_scorer(config: dict):
    scorer = config.get("scorer")
    if not scorer:
        return None
    for key in ("url", "model"):
        if key not in scorer:
            raise UsageError(f"scorer config needs {key!r}")
    return metrics_mod.RemoteLmScorer(url=scorer["url"], model=scorer["model"])


def build_segmenter(config: dict, usages: list[SlangUsage], lexicon_words, seed: int):
    table = config.get("segmenter", {}).get("table")
    if table:
        return morph_mod.read_segmentation_table(table)
    wordlist = [u.term for u in usages]
    extra = config.get("segmenter", {}).get("train_on_lexicon", False)
    if extra:
        wordlist.extend(lexicon_words)
    return morph_mod.train_baseline_segmenter(wordlist, seed=seed)


def _sha256_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(out_dir: str, command: str, args: argparse.Namespace, config: dict) -> None:
    inputs = {}
    for attr in ("lexicon", "corpus", "clusters", "replay", "responses"):
        path = getattr(args, attr, None)
        if path and os.path.exists(path):
            inputs[path] = _sha256_file(path)
    manifest = {
        "command": command,
        "inputs": inputs,
        "config": config,
        "config_hash": hashlib.sha256(
            json.dumps(config, sort_keys=True).encode()).hexdigest(),
        "seed": getattr(args, "seed", None),
        "versions": {
            "slangbench": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
        },
    }
    with open(os.path.join(out_dir, f"manifest_{command}.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _fmt(value: float) -> str:
    return "NaN" if isinstance(value, float) and math.isnan(value) else f"{value:.6f}"


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _summary_fields(values: list[float]) -> list[str]:
    if len(values) >= 2:
        s = metrics_mod.summarize(values)
        return [str(s.n), _fmt(s.mean), _fmt(s.std), _fmt(s.iqr), _fmt(s.excess_kurtosis)]
    if len(values) == 1:
        return ["1", _fmt(values[0]), "NaN", "NaN", "NaN"]
    return ["0", "NaN", "NaN", "NaN", "NaN"]


SUMMARY_HEADER = ["source", "n", "mean", "std", "iqr", "kurtosis"]


def _group_label(usage: SlangUsage) -> str:
    source = usage.source
    if source.startswith("model:"):
        source = source[len("model:"):]
    return f"{source} {usage.condition}" if usage.condition else source


def _grouped(usages_with_values) -> list[tuple[str, list[float]]]:
    groups: dict[str, list[float]] = {}
    for usage, value in usages_with_values:
        groups.setdefault(_group_label(usage), []).append(value)
    return sorted(groups.items())


# ---------------------------------------------------------------------------
# commands


def cmd_ingest(args, config) -> int:
    lex = read_lexicon(args.lexicon)
    report = {
        "entries": len(lex),
        "records": lex.stats.records,
        "skipped": lex.stats.skipped,
        "malformed_lines": lex.stats.malformed_lines,
    }
    with open(os.path.join(args.out, "lexicon_report.json"), "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"ingested {report['entries']} entries ({report['skipped']} records skipped)")
    return EXIT_OK


def cmd_classify(args, config) -> int:
    lex = read_lexicon(args.lexicon)
    usages, skipped = corpus_mod.read_corpus(args.corpus)
    if not usages:
        raise DataError("corpus is empty")
    stopwords = load_stopwords(config.get("stopwords"))
    rows = []
    for idx, usage in enumerate(usages):
        usage_type = corpus_mod.classify_usage_type(usage.term, lex)
        conv = corpus_mod.conventionalization(usage, lex, stopwords)
        rows.append([idx, usage.term, usage_type, conv.level.value, conv.matched_gloss or ""])
    _write_csv(os.path.join(args.out, "classify.csv"),
               ["id", "term", "usage_type", "conventionalization", "matched_gloss"], rows)
    proportions = corpus_mod.usage_type_proportions(usages, lex)
    proportions["n"] = len(usages)
    proportions["skipped_records"] = skipped
    with open(os.path.join(args.out, "proportions.json"), "w", encoding="utf-8") as fh:
        json.dump(proportions, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"classified {len(usages)} usages "
          f"(reuse {proportions['reuse_fraction']:.3f} / coinage {proportions['coinage_fraction']:.3f})")
    return EXIT_OK


def cmd_cluster(args, config) -> int:
    usages, _ = corpus_mod.read_corpus(args.corpus)
    if not usages:
        raise DataError("corpus is empty")
    embedder = build_embedder(config)
    clustering = config.get("clustering", {})
    clusters = dedup_mod.cluster_senses(
        [u.definition for u in usages],
        embedder,
        eps=float(clustering.get("eps", dedup_mod.DEFAULT_EPS)),
        min_pts=int(clustering.get("min_pts", dedup_mod.DEFAULT_MIN_PTS)),
        rng=random.Random(args.seed),
    )
    payload = [{"representative": c.representative, "members": c.member_ids} for c in clusters]
    with open(os.path.join(args.out, "clusters.json"), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    print(f"{len(usages)} definitions -> {len(clusters)} sense clusters")
    return EXIT_OK


def _metric_values(metric: str, usages, lex, embedder, segmenter, scorer, config):
    """Yield (index, usage, value) for usages the metric applies to."""
    aggregate = config.get("metrics", {}).get("surprisal_aggregate", "mean")
    for idx, usage in enumerate(usages):
        usage_type = corpus_mod.classify_usage_type(usage.term, lex)
        try:
            if metric == "complexity":
                if usage_type != COINAGE:
                    continue
                value = float(morph_mod.complexity(usage.term, segmenter))
            elif metric == "coherence":
                if usage_type != COINAGE:
                    continue
                formation = morph_mod.classify_formation(usage.term, segmenter, lex)
                if formation.label != morph_mod.COMPOUND:
                    continue
                value = metrics_mod.coherence(usage, segmenter, lex, embedder)
            elif metric == "novelty":
                if usage_type != REUSE or lex.lookup_exact(usage.term) is None:
                    continue
                value = metrics_mod.novelty(usage, lex, embedder)
            elif metric == "surprisal":
                if usage_type != REUSE:
                    continue
                value = metrics_mod.surprisal(usage, scorer, aggregate)
            else:
                raise UsageError(f"unknown metric {metric!r}")
        except metrics_mod.MetricInputError as exc:
            logger.warning("metric %s skipped usage %r: %s", metric, usage.term, exc)
            continue
        yield idx, usage, value


def cmd_metrics(args, config) -> int:
    lex = read_lexicon(args.lexicon)
    usages, _ = corpus_mod.read_corpus(args.corpus)
    if not usages:
        raise DataError("corpus is empty")
    embedder = build_embedder(config)
    scorer = build_scorer(config)
    if args.metric == "surprisal" and scorer is None:
        raise UsageError("surprisal requires a scorer endpoint in the config")
    segmenter = build_segmenter(config, usages, lex.headwords(), seed=args.seed)
    triples = list(_metric_values(args.metric, usages, lex, embedder, segmenter, scorer, config))
    if not triples:
        raise DataError(f"no usages qualify for metric {args.metric}")
    _write_csv(os.path.join(args.out, f"{args.metric}.csv"),
               ["id", "term", "metric", "value"],
               [[idx, u.term, args.metric, _fmt(v)] for idx, u, v in triples])
    rows = [[label, *_summary_fields(vals)]
            for label, vals in _grouped((u, v) for _, u, v in triples)]
    _write_csv(os.path.join(args.out, f"{args.metric}_summary.csv"), SUMMARY_HEADER, rows)
    print(f"{args.metric}: {len(triples)} usages scored across {len(rows)} groups")
    return EXIT_OK


def cmd_topics(args, config) -> int:
    usages, _ = corpus_mod.read_corpus(args.corpus)
    if not usages:
        raise DataError("corpus is empty")
    stopwords = load_stopwords(config.get("stopwords"))
    lda_cfg = config.get("lda", {})
    model = topics_mod.fit_lda(
        [u.definition for u in usages],
        k=args.k,
        stopwords=stopwords,
        iters=int(lda_cfg.get("iters", topics_mod.DEFAULT_ITERS)),
        seed=args.seed,
    )
    n_words = min(args.words, len(model.vocabulary))
    payload = {"topics": [
        {"id": t, "words": [[w, round(wt, 6)] for w, wt in topics_mod.top_words(model, t, n_words)]}
        for t in range(model.k)
    ]}
    with open(os.path.join(args.out, "topics.json"), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    print(f"fit {model.k} topics over {len(model.vocabulary)} vocabulary types")
    return EXIT_OK


def cmd_generate(args, config) -> int:
    lex = read_lexicon(args.lexicon)
    embedder = build_embedder(config)
    client = build_chat_client(config, args.replay)
    if args.transcript:
        client = gen_mod.TranscriptRecorder(client, args.transcript)
    setting = "uncontrolled" if args.mode.startswith("U-") else "controlled"
    mode = {"F": gen_mod.MODE_FREEFORM, "R": gen_mod.MODE_REUSE, "C": gen_mod.MODE_COINAGE}[args.mode[-1]]
    gen_cfg = config.get("generation", {})
    job = gen_mod.GenerationJob(
        mode=mode,
        n=args.n,
        temperature=float(gen_cfg.get("temperature", gen_mod.DEFAULT_TEMPERATURE)),
        top_p=float(gen_cfg.get("top_p", gen_mod.DEFAULT_TOP_P)),
        max_rounds=int(gen_cfg.get("max_rounds", gen_mod.DEFAULT_MAX_ROUNDS)),
        per_round=int(gen_cfg.get("per_round", gen_mod.DEFAULT_PER_ROUND)),
    )
    if setting == "uncontrolled":
        result = gen_mod.generate_uncontrolled(job, client, lex, embedder)
        usages, provenance = result.usages, {
            "rounds": result.rounds,
            "complete": result.complete,
            "rejections": dict(result.rejections),
            "parse_failures": result.parse_failures,
            "accepted": result.provenance,
        }
    else:
        if not args.clusters or not args.corpus:
            raise UsageError("controlled generation needs --clusters and --corpus")
        usages_in, _ = corpus_mod.read_corpus(args.corpus)
        with open(args.clusters, encoding="utf-8") as fh:
            cluster_rows = json.load(fh)
        targets = []
        for row in cluster_rows:
            members = row["members"]
            targets.append(gen_mod.ControlledTarget(
                definition=row["representative"],
                count=len(members),
                existing_terms=tuple(usages_in[i].term for i in members),
            ))
        controlled = gen_mod.generate_controlled(targets, job, client, lex, embedder)
        usages = controlled.usages
        provenance = {
            "clusters": len(targets),
            "complete": controlled.complete,
            "per_cluster": [{
                "rounds": r.rounds, "complete": r.complete,
                "rejections": dict(r.rejections), "parse_failures": r.parse_failures,
            } for r in controlled.per_cluster],
        }
    corpus_mod.save_corpus(usages, os.path.join(args.out, "generated.jsonl"))
    with open(os.path.join(args.out, "generation_report.json"), "w", encoding="utf-8") as fh:
        json.dump(provenance, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"accepted {len(usages)} usages under {args.mode}")
    return EXIT_OK


def _build_items(task: str, sample, rng):
    if task == "cloze":
        return [eval_mod.build_cloze_item(e, sample, rng, entry_id=i)
                for i, e in enumerate(sample)]
    if task == "interpretation":
        return [eval_mod.build_interpretation_item(e, sample, rng, entry_id=i)
                for i, e in enumerate(sample)]
    return [eval_mod.build_freeform_item(e, entry_id=i) for i, e in enumerate(sample)]


def cmd_exam(args, config) -> int:
    usages, _ = corpus_mod.read_corpus(args.corpus)
    rng = random.Random(args.seed)
    sample = eval_mod.sample_eval_set(usages, min(args.n, len(usages)), rng)
    items = _build_items(args.task, sample, rng)
    exam_path = os.path.join(args.out, f"exam_{args.task}.jsonl")
    eval_mod.write_exam(items, exam_path)
    if args.responses:
        responses = eval_mod.read_responses(args.responses, [i.item_id for i in items])
        if args.task == "freeform":
            report = eval_mod.grade_freeform(items, responses, build_embedder(config))
        else:
            report = eval_mod.grade_mcq(items, responses)
        with open(os.path.join(args.out, f"grade_{args.task}.json"), "w", encoding="utf-8") as fh:
            json.dump({
                "task": report.task, "n": report.n, "score": report.score,
                "parse_failures": report.parse_failures, "items": report.per_item,
            }, fh, indent=2, sort_keys=True)
            fh.write("\n")
        metric = "similarity" if args.task == "freeform" else "accuracy"
        _write_csv(os.path.join(args.out, f"grade_{args.task}.csv"),
                   ["task", "metric", "n", "score", "parse_failures"],
                   [[report.task, metric, report.n, _fmt(report.score), report.parse_failures]])
        print(f"{args.task}: n={report.n} score={report.score:.4f} "
              f"parse_failures={report.parse_failures}")
    else:
        print(f"wrote {len(items)} {args.task} items to {exam_path}")
    return EXIT_OK


def cmd_report(args, config) -> int:
    lex = read_lexicon(args.lexicon)
    usages, _ = corpus_mod.read_corpus(args.corpus)
    if not usages:
        raise DataError("corpus is empty")
    stopwords = load_stopwords(config.get("stopwords"))
    embedder = build_embedder(config)
    scorer = build_scorer(config)
    segmenter = build_segmenter(config, usages, lex.headwords(), seed=args.seed)

    # usage-type proportions per group, with conventionalization sub-rows for humans
    type_groups: dict[str, Counter] = {}
    formation_groups: dict[str, Counter] = {}
    for usage in usages:
        label = _group_label(usage)
        usage_type = corpus_mod.classify_usage_type(usage.term, lex)
        type_groups.setdefault(label, Counter())[usage_type] += 1
        if usage.source == corpus_mod.HUMAN_SOURCE:
            conv = corpus_mod.conventionalization(usage, lex, stopwords)
            sub = f"{label}/{conv.level.value}"
            type_groups.setdefault(sub, Counter())[usage_type] += 1
        if usage_type == COINAGE:
            formation = morph_mod.classify_formation(usage.term, segmenter, lex)
            formation_groups.setdefault(label, Counter())[formation.label] += 1

    rows = []
    for label in sorted(type_groups):
        counts = type_groups[label]
        total = counts[COINAGE] + counts[REUSE]
        rows.append([label, total, _fmt(counts[COINAGE] / total), _fmt(counts[REUSE] / total)])
    _write_csv(os.path.join(args.out, "usage_type_proportions.csv"),
               ["source", "n", "coinage_fraction", "reuse_fraction"], rows)

    rows = []
    for label in sorted(formation_groups):
        counts = formation_groups[label]
        total = sum(counts.values())
        rows.append([label, total,
                     _fmt(counts[morph_mod.COMPOUND] / total),
                     _fmt(counts[morph_mod.BLEND] / total),
                     _fmt(counts[morph_mod.OTHER] / total)])
    _write_csv(os.path.join(args.out, "formation_distribution.csv"),
               ["source", "n", "compound_fraction", "blend_fraction", "other_fraction"], rows)

    metric_names = ["complexity", "coherence", "novelty"]
    if scorer is not None:
        metric_names.append("surprisal")
    value_rows = []
    for metric in metric_names:
        triples = list(_metric_values(metric, usages, lex, embedder, segmenter, scorer, config))
        groups: dict[str, list[float]] = {}
        for idx, usage, value in triples:
            value_rows.append([idx, usage.term, metric, _fmt(value)])
            label = _group_label(usage)
            groups.setdefault(label, []).append(value)
            if usage.source == corpus_mod.HUMAN_SOURCE:
                conv = corpus_mod.conventionalization(usage, lex, stopwords)
                groups.setdefault(f"{label}/{conv.level.value}", []).append(value)
        summary = [[label, *_summary_fields(vals)] for label, vals in sorted(groups.items())]
        _write_csv(os.path.join(args.out, f"{metric}_summary.csv"), SUMMARY_HEADER, summary)
    _write_csv(os.path.join(args.out, "metric_values.csv"),
               ["id", "term", "metric", "value"], value_rows)
    print(f"report over {len(usages)} usages -> {args.out} "
          f"({', '.join(metric_names)}; surprisal {'on' if scorer else 'off — no scorer configured'})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="slangbench",
                     description="Compare human and LLM-generated slang usages.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, lexicon=False, corpus=False, seed=False):
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--out", required=True, help="output directory")
        if lexicon:
            p.add_argument("--lexicon", required=True, help="lexicon JSONL (.gz ok)")
        if corpus:
            p.add_argument("--corpus", required=True, help="corpus JSONL")
        if seed:
            p.add_argument("--seed", type=int, required=True,
                           help="RNG seed (mandatory: runs must be reproducible)")

    p = sub.add_parser("ingest", help="index a lexicon dump and report stats")
    common(p, lexicon=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("classify", help="usage types and conventionalization")
    common(p, lexicon=True, corpus=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("cluster", help="DBSCAN sense clusters over definitions")
    common(p, corpus=True, seed=True)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("metrics", help="one creativity metric over a corpus")
    common(p, lexicon=True, corpus=True, seed=True)
    p.add_argument("--metric", required=True,
                   choices=["complexity", "coherence", "novelty", "surprisal"])
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("topics", help="LDA topics over definition sentences")
    common(p, corpus=True, seed=True)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--words", type=int, default=20, help="top words per topic")
    p.set_defaults(func=cmd_topics)

    p = sub.add_parser("generate", help="run a generation campaign")
    common(p, lexicon=True, seed=True)
    p.add_argument("--mode", required=True, choices=list(corpus_mod.CONDITIONS))
    p.add_argument("--n", type=int, default=10, help="target entries (uncontrolled)")
    p.add_argument("--corpus", help="source corpus (controlled modes)")
    p.add_argument("--clusters", help="clusters.json from the cluster command (controlled)")
    p.add_argument("--replay", help="replay a recorded transcript instead of a live endpoint")
    p.add_argument("--transcript", help="record request/response pairs to this JSONL")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("exam", help="build (and optionally grade) a downstream task")
    common(p, corpus=True, seed=True)
    p.add_argument("--task", required=True, choices=["cloze", "interpretation", "freeform"])
    p.add_argument("--n", type=int, default=eval_mod.DEFAULT_EVAL_N)
    p.add_argument("--responses", help="JSONL of {item_id, raw} model responses to grade")
    p.set_defaults(func=cmd_exam)

    p = sub.add_parser("report", help="full characteristic + creativity report tables")
    common(p, lexicon=True, corpus=True, seed=True)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("SLANGBENCH_LOGLEVEL", "WARNING"),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = load_config(args.config)
        os.makedirs(args.out, exist_ok=True)
        code = args.func(args, config)
        write_manifest(args.out, args.command, args, config)
        return code
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EndpointError as exc:
        print(f"endpoint error: {exc}", file=sys.stderr)
        return EXIT_ENDPOINT
    except (DataError, SlangbenchError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
