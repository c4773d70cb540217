"""``fedsent`` command-line interface.

Each pipeline stage is an individually invocable subcommand with file-based
handoffs; ``fedsent pipeline`` composes them end to end.  Configuration comes
from a TOML file with flag overrides (flags win).  Every artifact embeds a
meta block with the stage name, config hash, and seeds; wall-clock timestamps
go to a separate ``run_metadata.json`` so identical configs reproduce
byte-identical artifacts.

Exit codes: 0 success, 2 config error, 3 data error, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping, Sequence

try:
    import tomllib
except ImportError:  # Python 3.10
    import tomli as tomllib

from . import __version__, corpus, fednet, manifest, report, sentilex, shapx, synth, textclf, topicmodel
from .errors import ConfigError, DataError, FedsentError

logger = logging.getLogger(__name__)

LABEL_CHOICES = ("all", "negative", "neutral", "positive")


@dataclass(frozen=True)
class PipelineConfig:
    input_path: str = ""
    input_format: str = "jsonl"
    out_dir: str = "runs/latest"
    # asset overrides; None means the bundled file
    lexicon_path: str | None = None
    boosters_path: str | None = None
    negations_path: str | None = None
    stopwords_path: str | None = None
    whitelist_path: str | None = None
    emoji_path: str | None = None
    lemma_path: str | None = None
    topic_names_path: str | None = None
    # corpus
    min_tokens: int = 1
    # topics
    n_topics: int = 10
    alpha: float | None = None  # None -> 50/K
    beta: float = 0.01
    iterations: int = 500
    min_df: int = 2
    keywords: int = 10
    # classifier
    learning_rate: float = 0.1
    epochs: int = 10
    batch_size: int = 32
    l2: float = 1e-4
    val_fraction: float = 0.2
    max_tokens: int = 256
    # federation
    clients: tuple[int, ...] = (2, 4, 6)
    rounds: int = 5
    local_epochs: int = 1
    # explain
    subset: int = 500
    top: int = 15
    # global
    seed: int = 42

    def to_json(self) -> dict[str, Any]:
        payload = {}
        for f in fields(self):
            value = getattr(self, f.name)
            payload[f.name] = list(value) if isinstance(value, tuple) else value
        return payload

    def train_config(self) -> textclf.TrainConfig:
        return textclf.TrainConfig(
            learning_rate=self.learning_rate,
            epochs=self.epochs,
            batch_size=self.batch_size,
            l2=self.l2,
            seed=self.seed,
        )


_TOML_SECTIONS: dict[str, dict[str, str]] = {
    "input": {"path": "input_path", "format": "input_format"},
    "output": {"dir": "out_dir"},
    "paths": {
        "lexicon": "lexicon_path",
        "boosters": "boosters_path",
        "negations": "negations_path",
        "stopwords": "stopwords_path",
        "whitelist": "whitelist_path",
        "emoji": "emoji_path",
        "lemma": "lemma_path",
        "topic_names": "topic_names_path",
    },
    "corpus": {"min_tokens": "min_tokens"},
    "topics": {
        "k": "n_topics",
        "alpha": "alpha",
        "beta": "beta",
        "iterations": "iterations",
        "min_df": "min_df",
        "keywords": "keywords",
    },
    "classifier": {
        "learning_rate": "learning_rate",
        "epochs": "epochs",
        "batch_size": "batch_size",
        "l2": "l2",
        "val_fraction": "val_fraction",
        "max_tokens": "max_tokens",
    },
    "federation": {"clients": "clients", "rounds": "rounds", "local_epochs": "local_epochs"},
    "explain": {"subset": "subset", "top": "top"},
    "run": {"seed": "seed"},
}


def load_config(path: str | Path) -> PipelineConfig:
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed TOML in {path}: {exc}") from exc
    values: dict[str, Any] = {}
    for section, entries in raw.items():
        mapping = _TOML_SECTIONS.get(section)
        if mapping is None:
            raise ConfigError(f"unknown config section [{section}] in {path}")
        if not isinstance(entries, dict):
            raise ConfigError(f"config section [{section}] must be a table")
        for key, value in entries.items():
            if key not in mapping:
                raise ConfigError(f"unknown config key {section}.{key} in {path}")
            values[mapping[key]] = tuple(value) if isinstance(value, list) else value
    return PipelineConfig(**values)


def _resolve_config(args: argparse.Namespace) -> PipelineConfig:
    config = load_config(args.config) if getattr(args, "config", None) else PipelineConfig()
    overrides: dict[str, Any] = {}
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "out", None):
        overrides["out_dir"] = args.out
    if getattr(args, "in_path", None):
        overrides["input_path"] = args.in_path
    if getattr(args, "format", None):
        overrides["input_format"] = args.format
    return replace(config, **overrides) if overrides else config


# ---------------------------------------------------------------------------
# Shared loaders
# ---------------------------------------------------------------------------


def _load_lexicon(config: PipelineConfig) -> sentilex.Lexicon:
    return sentilex.load_lexicon(config.lexicon_path, config.boosters_path, config.negations_path)


def _load_preprocess_config(config: PipelineConfig) -> corpus.PreprocessConfig:
    asset = sentilex._asset_path
    return corpus.PreprocessConfig.from_files(
        config.stopwords_path or asset("stopwords_en.txt"),
        config.whitelist_path or asset("negation_whitelist.txt"),
        config.emoji_path or asset("emoji_map.tsv"),
        config.lemma_path or asset("lemma_table.tsv"),
        min_tokens=config.min_tokens,
    )


def _load_clean(path: str | Path) -> list[corpus.CleanComment]:
    records, _ = manifest.read_jsonl(path)
    return [corpus.CleanComment.from_json(r) for r in records]


def _load_labels(path: str | Path) -> list[sentilex.ScoredComment]:
    records, _ = manifest.read_jsonl(path)
    out = []
    for r in records:
        # Shares are not persisted in the label artifact; reconstruct a
        # placeholder score carrying the compound only.
        score = sentilex.SentimentScore(
            compound=float(r["compound"]), pos_share=0.0, neg_share=0.0, neu_share=1.0
        )
        out.append(
            sentilex.ScoredComment(
                comment_id=r["id"],
                score=score,
                label=sentilex.SentimentLabel.from_name(r["label"]),
            )
        )
    return out


def _load_assignments(path: str | Path) -> list[topicmodel.TopicAssignment]:
    records, _ = manifest.read_jsonl(path)
    return [
        topicmodel.TopicAssignment(
            comment_id=r["id"],
            dominant_topic=int(r["dominant_topic"]),
            topic_keywords=tuple(r["topic_keywords"]),
        )
        for r in records
    ]


def _load_features(path: str | Path) -> list[textclf.FeatureVector]:
    records, _ = manifest.read_jsonl(path)
    return [textclf.FeatureVector.from_json(r) for r in records]


def _save_feature_space(space: textclf.FeatureSpace, n_docs: int, path: Path, meta: dict) -> None:
    manifest.write_json(
        path,
        {
            "kind": "feature_space",
            "tokens": list(space.tokens),
            "idf": list(space.idf),
            "max_tokens": space.max_tokens,
            "n_docs": n_docs,
            "vocab_hash": space.vocab_hash,
        },
        meta=meta,
    )


def _load_feature_space(path: str | Path) -> textclf.FeatureSpace:
    payload = manifest.read_json(path)
    if payload.get("kind") != "feature_space":
        raise DataError(f"{path} is not a feature space file")
    return textclf.FeatureSpace(
        tokens=tuple(payload["tokens"]),
        idf=tuple(payload["idf"]),
        max_tokens=int(payload["max_tokens"]),
    )


def _load_topic_names(path: str | Path | None) -> dict[int, str]:
    if path is None:
        return {}
    names: dict[int, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise DataError(f"{path}:{lineno}: expected 'topic<TAB>name'")
                names[int(parts[0])] = parts[1]
    except OSError as exc:
        raise DataError(f"cannot read topic names {path}: {exc}") from exc
    except ValueError as exc:
        raise DataError(f"bad topic id in {path}: {exc}") from exc
    return names


def _parse_label(name: str) -> sentilex.SentimentLabel | None:
    return None if name == "all" else sentilex.SentimentLabel.from_name(name)


def _meta(stage: str, config: PipelineConfig) -> dict:
    return manifest.build_meta(stage, config.to_json(), seeds={"seed": config.seed})


# ---------------------------------------------------------------------------
# Stage implementations (shared by subcommands and `pipeline`)
# ---------------------------------------------------------------------------


def stage_ingest(config: PipelineConfig, in_path: str, fmt: str, out_path: Path) -> corpus.IngestResult:
    result = corpus.ingest(in_path, fmt)
    records = [
        {
            "id": c.id,
            "channel": c.channel,
            "video_id": c.video_id,
            "published_at": c.published_at.isoformat().replace("+00:00", "Z"),
            "text": c.text,
            "lang": c.lang,
        }
        for c in result.comments
    ]
    manifest.write_jsonl(out_path, records, meta=_meta("ingest", config))
    errors_path = out_path.with_name(out_path.stem + ".errors.jsonl")
    manifest.write_jsonl(errors_path, [e.to_json() for e in result.errors], meta=_meta("ingest", config))
    logger.info("ingest: %d comments, %d row errors", len(result.comments), len(result.errors))
    return result


def stage_preprocess(
    config: PipelineConfig, comments: Sequence[corpus.RawComment], out_path: Path
) -> list[corpus.CleanComment]:
    pcfg = _load_preprocess_config(config)
    cleaned = corpus.dedupe(corpus.preprocess_corpus(comments, pcfg))
    manifest.write_jsonl(out_path, [c.to_json() for c in cleaned], meta=_meta("preprocess", config))
    kept = sum(1 for c in cleaned if not c.dropped)
    logger.info("preprocess: %d raw -> %d retained (+%d dropped)",
                len(comments), kept, len(cleaned) - kept)
    return cleaned


def stage_label(
    config: PipelineConfig, comments: Sequence[corpus.RawComment], out_path: Path
) -> list[sentilex.ScoredComment]:
    lex = _load_lexicon(config)
    pcfg = _load_preprocess_config(config)
    scored = sentilex.label_corpus(comments, lex, emoji_map=pcfg.emoji_map)
    records = [
        {"id": s.comment_id, "compound": s.score.compound, "label": s.label.json_name}
        for s in scored
    ]
    manifest.write_jsonl(out_path, records, meta=_meta("label", config))
    logger.info("label: %d comments scored", len(scored))
    return scored


def stage_topics(
    config: PipelineConfig,
    cleaned: Sequence[corpus.CleanComment],
    model_path: Path,
    assign_path: Path,
) -> tuple[topicmodel.TopicModel, list[topicmodel.TopicAssignment]]:
    active = [c for c in cleaned if not c.dropped]
    vocab = topicmodel.build_vocab(active, min_df=config.min_df)
    model = topicmodel.fit_lda(
        active,
        vocab,
        n_topics=config.n_topics,
        alpha=config.alpha,
        beta=config.beta,
        iterations=config.iterations,
        seed=config.seed,
    )
    topicmodel.save_model(model, model_path, meta=_meta("topics", config))
    assignments = topicmodel.assign_all(model, m=config.keywords)
    manifest.write_jsonl(assign_path, [a.to_json() for a in assignments], meta=_meta("topics", config))
    logger.info("topics: K=%d over %d docs, vocab %d", model.n_topics, len(active), vocab.size)
    return model, assignments


def stage_featurize(
    config: PipelineConfig,
    cleaned: Sequence[corpus.CleanComment],
    labels: Sequence[sentilex.ScoredComment],
    assignments: Sequence[topicmodel.TopicAssignment],
    out_dir: Path,
) -> tuple[textclf.FeatureSpace, list[textclf.FeatureVector], list[textclf.FeatureVector]]:
    active = [c for c in cleaned if not c.dropped]
    if not active:
        raise DataError("no retained comments to featurize")
    vocab = topicmodel.build_vocab(active, min_df=config.min_df)
    space = textclf.space_from_vocabulary(vocab, n_docs=len(active), max_tokens=config.max_tokens)
    label_by_id = {s.comment_id: s.label for s in labels}
    keywords_by_id = {a.comment_id: a.topic_keywords for a in assignments}
    features = []
    for comment in active:
        label = label_by_id.get(comment.id)
        if label is None:
            raise DataError(f"comment {comment.id!r} has no sentiment label")
        features.append(
            textclf.featurize(comment, keywords_by_id.get(comment.id, ()), space, label=label)
        )
    train_fv, val_fv = textclf.train_val_split(features, config.val_fraction, seed=config.seed)
    meta = _meta("featurize", config)
    _save_feature_space(space, len(active), out_dir / "feature_space.json", meta)
    manifest.write_jsonl(out_dir / "features_train.jsonl", [fv.to_json() for fv in train_fv], meta=meta)
    manifest.write_jsonl(out_dir / "features_val.jsonl", [fv.to_json() for fv in val_fv], meta=meta)
    logger.info("featurize: %d train / %d val over %d features",
                len(train_fv), len(val_fv), space.size)
    return space, train_fv, val_fv


def stage_train(
    config: PipelineConfig,
    train_fv: Sequence[textclf.FeatureVector],
    space: textclf.FeatureSpace,
    out_path: Path,
) -> textclf.LinearModel:
    model = textclf.train(train_fv, config.train_config(), n_features=space.size)
    model = replace(model, vocab_hash=space.vocab_hash)
    textclf.save_model(model, out_path, meta=_meta("train", config))
    logger.info("train: %d examples, %d features", len(train_fv), space.size)
    return model


def stage_eval(
    config: PipelineConfig,
    model: textclf.LinearModel,
    val_fv: Sequence[textclf.FeatureVector],
    out_path: Path,
) -> textclf.EvalReport:
    eval_report = textclf.evaluate(model, val_fv)
    manifest.write_json(out_path, eval_report.to_json(), meta=_meta("eval", config))
    logger.info("eval: accuracy %.4f macro-F1 %.4f weighted-F1 %.4f",
                eval_report.accuracy, eval_report.macro_f1, eval_report.weighted_f1)
    return eval_report


def stage_federate(
    config: PipelineConfig,
    train_fv: Sequence[textclf.FeatureVector],
    val_fv: Sequence[textclf.FeatureVector],
    n_clients: int,
    out_path: Path,
    n_features: int | None = None,
) -> fednet.FederatedRun:
    run = fednet.run_federated(
        train_fv,
        val_fv,
        n_clients=n_clients,
        rounds=config.rounds,
        local_epochs=config.local_epochs,
        config=config.train_config(),
        seed=config.seed,
        n_features=n_features,
    )
    manifest.write_json(out_path, run.to_json(), meta=_meta("federate", config))
    logger.info("federate: N=%d R=%d E=%d -> accuracy %.4f",
                n_clients, config.rounds, config.local_epochs, run.final_report.accuracy)
    return run


def stage_explain(
    config: PipelineConfig,
    model: textclf.LinearModel,
    features: Sequence[textclf.FeatureVector],
    space: textclf.FeatureSpace,
    class_label: sentilex.SentimentLabel | None,
    out_path: Path,
    summary_path: Path,
) -> None:
    if model.vocab_hash is not None and model.vocab_hash != space.vocab_hash:
        raise DataError("model vocab hash does not match the feature space")
    attributions, summaries = shapx.explain_corpus(
        model,
        features,
        space,
        class_label=class_label,
        subset=config.subset,
        seed=config.seed,
        top=config.top,
    )
    meta = _meta("explain", config)
    manifest.write_jsonl(out_path, [a.to_json() for a in attributions], meta=meta)
    manifest.write_json(summary_path, {"summaries": [s.to_json() for s in summaries]}, meta=meta)
    logger.info("explain: %d attributions, %d class summaries", len(attributions), len(summaries))


def stage_report(
    config: PipelineConfig,
    labels: Sequence[sentilex.ScoredComment],
    assignments: Sequence[topicmodel.TopicAssignment],
    cleaned: Sequence[corpus.CleanComment] | None,
    out_dir: Path,
) -> report.TopicSentimentTable:
    out_dir.mkdir(parents=True, exist_ok=True)
    names = _load_topic_names(config.topic_names_path)
    table = report.crosstab(assignments, labels, topic_names=names)
    report.write_topic_sentiment_csv(table, out_dir / "topic_sentiment.csv")
    report.write_topic_bar_svg(table, out_dir / "topic_sentiment.svg")
    distribution = report.topic_distribution(assignments) if assignments else {}
    manifest.write_json(
        out_dir / "topic_distribution.json",
        {"shares": {str(k): v for k, v in distribution.items()}},
        meta=_meta("report", config),
    )
    if cleaned is not None:
        for label in textclf.CLASSES:
            table_for_class = report.word_frequencies(cleaned, labels, label, top=50)
            report.write_wordfreq_csv(table_for_class, out_dir / f"wordfreq_{label.json_name}.csv")
    else:
        logger.warning("report: no clean corpus supplied, skipping word-frequency tables")
    logger.info("report: %d topics, %d joined comments", len(table.rows), table.total)
    return table


def run_pipeline(config: PipelineConfig) -> int:
    if not config.input_path:
        raise ConfigError("pipeline requires an input corpus (set input.path or --in)")
    for name in ("lexicon_path", "boosters_path", "negations_path", "stopwords_path",
                 "whitelist_path", "emoji_path", "lemma_path", "topic_names_path"):
        value = getattr(config, name)
        if value is not None and not Path(value).exists():
            raise ConfigError(f"configured {name} does not exist: {value}")
    if not Path(config.input_path).exists():
        raise DataError(f"input corpus does not exist: {config.input_path}")

    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    started = time.time()
    artifacts: list[Path] = []

    def _run_stage(name: str, fn, *args):
        try:
            return fn(config, *args)
        except FedsentError as exc:
            raise type(exc)(f"stage {name} failed: {exc}") from exc

    result = _run_stage("ingest", stage_ingest, config.input_path, config.input_format,
                        out / "comments_valid.jsonl")
    artifacts += [out / "comments_valid.jsonl", out / "comments_valid.errors.jsonl"]
    if not result.comments:
        raise DataError("stage ingest failed: no valid comments in input")

    cleaned = _run_stage("preprocess", stage_preprocess, result.comments, out / "clean.jsonl")
    artifacts.append(out / "clean.jsonl")

    scored = _run_stage("label", stage_label, result.comments, out / "labels.jsonl")
    artifacts.append(out / "labels.jsonl")

    model_path = out / "topic_model.json"
    assign_path = out / "topic_assignments.jsonl"
    _, assignments = _run_stage("topics", stage_topics, cleaned, model_path, assign_path)
    artifacts += [model_path, assign_path]

    space, train_fv, val_fv = _run_stage("featurize", stage_featurize, cleaned, scored,
                                         assignments, out)
    artifacts += [out / "feature_space.json", out / "features_train.jsonl", out / "features_val.jsonl"]

    model = _run_stage("train", stage_train, train_fv, space, out / "model.json")
    artifacts.append(out / "model.json")

    _run_stage("eval", stage_eval, model, val_fv, out / "eval_report.json")
    artifacts.append(out / "eval_report.json")

    for n_clients in config.clients:
        fed_path = out / f"fedrun_N{n_clients}_R{config.rounds}.json"
        _run_stage("federate", stage_federate, train_fv, val_fv, n_clients, fed_path, space.size)
        artifacts.append(fed_path)

    _run_stage("explain", stage_explain, model, val_fv, space, None,
               out / "attributions.jsonl", out / "shap_summary.json")
    artifacts += [out / "attributions.jsonl", out / "shap_summary.json"]

    _run_stage("report", stage_report, scored, assignments, cleaned, out / "report")
    artifacts += [
        out / "report" / "topic_sentiment.csv",
        out / "report" / "topic_sentiment.svg",
        out / "report" / "topic_distribution.json",
        out / "report" / "wordfreq_negative.csv",
        out / "report" / "wordfreq_neutral.csv",
        out / "report" / "wordfreq_positive.csv",
    ]

    manifest.write_json(
        out / "pipeline_manifest.json",
        {
            "config": config.to_json(),
            "artifacts": {
                str(path.relative_to(out)): manifest.sha256_file(path) for path in artifacts
            },
        },
        meta=_meta("pipeline", config),
    )
    # Wall-clock data lives outside the deterministic artifact set.
    manifest.write_json(
        out / "run_metadata.json",
        {"tool_version": __version__, "started_at": started, "duration_s": time.time() - started},
    )
    logger.info("pipeline: complete in %.1fs, artifacts in %s", time.time() - started, out)
    return 0


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def cmd_ingest(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    stage_ingest(config, args.in_path, args.format or config.input_format, Path(args.out_file))
    return 0


def cmd_preprocess(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    result = corpus.ingest(args.in_path, "jsonl")
    stage_preprocess(config, result.comments, Path(args.out_file))
    return 0


def cmd_label(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    if args.lexicon:
        config = replace(config, lexicon_path=args.lexicon)
    result = corpus.ingest(args.in_path, "jsonl")
    stage_label(config, result.comments, Path(args.out_file))
    return 0


def cmd_topics(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    config = replace(
        config,
        n_topics=args.k if args.k is not None else config.n_topics,
        iterations=args.iters if args.iters is not None else config.iterations,
    )
    cleaned = _load_clean(args.in_path)
    model_path = Path(args.out_file)
    assign_path = Path(args.assign) if args.assign else model_path.with_name("topic_assignments.jsonl")
    stage_topics(config, cleaned, model_path, assign_path)
    return 0


def cmd_featurize(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    cleaned = _load_clean(args.in_path)
    labels = _load_labels(args.labels)
    assignments = _load_assignments(args.assign)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stage_featurize(config, cleaned, labels, assignments, out_dir)
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    train_fv = _load_features(args.in_path)
    space = _load_feature_space(args.space)
    stage_train(config, train_fv, space, Path(args.out_file))
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    model = textclf.load_model(args.model)
    val_fv = _load_features(args.in_path)
    stage_eval(config, model, val_fv, Path(args.report))
    return 0


def cmd_federate(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    config = replace(
        config,
        rounds=args.rounds if args.rounds is not None else config.rounds,
        local_epochs=args.epochs if args.epochs is not None else config.local_epochs,
    )
    train_fv = _load_features(args.in_path)
    val_fv = _load_features(args.val)
    out_path = Path(args.out_file) if args.out_file else Path(
        f"fedrun_N{args.clients}_R{config.rounds}.json"
    )
    stage_federate(config, train_fv, val_fv, args.clients, out_path)
    return 0


def cmd_explain(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    if args.top is not None:
        config = replace(config, top=args.top)
    if args.subset is not None:
        config = replace(config, subset=args.subset)
    model = textclf.load_model(args.model)
    features = _load_features(args.in_path)
    space = _load_feature_space(args.space)
    out_path = Path(args.out_file)
    summary_path = Path(args.summary) if args.summary else out_path.with_name("shap_summary.json")
    stage_explain(config, model, features, space, _parse_label(args.class_name),
                  out_path, summary_path)
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    if args.names:
        config = replace(config, topic_names_path=args.names)
    labels = _load_labels(args.labels)
    assignments = _load_assignments(args.topics)
    cleaned = _load_clean(args.corpus) if args.corpus else None
    stage_report(config, labels, assignments, cleaned, Path(args.out_dir))
    return 0


def cmd_pipeline(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    return run_pipeline(config)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fedsent",
        description="Topic-wise sentiment pipeline with federated training simulation.",
    )
    parser.add_argument("--version", action="version", version=f"fedsent {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="override the run seed")
    common.add_argument("--config", default=None, help="TOML config file")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[common], help="validate a raw comment file")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--format", choices=("jsonl", "csv"), default=None)
    p.add_argument("--out", dest="out_file", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("preprocess", parents=[common], help="clean and tokenize comments")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out", dest="out_file", required=True)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("label", parents=[common], help="rule-based sentiment labels")
    p.add_argument("--lexicon", default=None)
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out", dest="out_file", required=True)
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("topics", parents=[common], help="fit the LDA topic model")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--iters", type=int, default=None)
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out", dest="out_file", required=True)
    p.add_argument("--assign", default=None, help="assignments output (default: alongside model)")
    p.set_defaults(func=cmd_topics)

    p = sub.add_parser("featurize", parents=[common], help="tf-idf features + split")
    p.add_argument("--in", dest="in_path", required=True, help="clean corpus JSONL")
    p.add_argument("--labels", required=True)
    p.add_argument("--assign", required=True)
    p.add_argument("--out", dest="out_dir", required=True, help="output directory")
    p.set_defaults(func=cmd_featurize)

    p = sub.add_parser("train", parents=[common], help="train the centralized classifier")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--space", required=True)
    p.add_argument("--out", dest="out_file", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", parents=[common], help="evaluate a model snapshot")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("federate", parents=[common], help="run a FedAvg simulation")
    p.add_argument("--clients", type=int, required=True)
    p.add_argument("--rounds", type=int, default=None)
    p.add_argument("--epochs", type=int, default=None)
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--val", required=True)
    p.add_argument("--out", dest="out_file", default=None)
    p.set_defaults(func=cmd_federate)

    p = sub.add_parser("explain", parents=[common], help="Shapley token attributions")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--space", required=True)
    p.add_argument("--class", dest="class_name", choices=LABEL_CHOICES, default="all")
    p.add_argument("--top", type=int, default=None)
    p.add_argument("--subset", type=int, default=None)
    p.add_argument("--out", dest="out_file", required=True)
    p.add_argument("--summary", default=None)
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("report", parents=[common], help="topic/sentiment tables")
    p.add_argument("--labels", required=True)
    p.add_argument("--topics", required=True)
    p.add_argument("--corpus", default=None, help="clean corpus for word frequencies")
    p.add_argument("--names", default=None, help="topic-id to name TSV")
    p.add_argument("--out", dest="out_dir", required=True)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("pipeline", parents=[common], help="run every stage end to end")
    p.add_argument("--in", dest="in_path", default=None)
    p.add_argument("--format", choices=("jsonl", "csv"), default=None)
    p.add_argument("--out", dest="out", default=None, help="output directory")
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(
        level=logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return int(args.func(args) or 0)
    except FedsentError as exc:
        logger.error("%s", exc)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
