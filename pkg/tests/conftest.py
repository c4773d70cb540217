"""Shared fixtures: bundled corpora pushed through the pipeline stages once."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from fedsent import corpus, sentilex, textclf, topicmodel

settings.register_profile(
    "suite", deadline=None, max_examples=50, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"
FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def lexicon() -> sentilex.Lexicon:
    return sentilex.load_lexicon()


@pytest.fixture(scope="session")
def pre_config() -> corpus.PreprocessConfig:
    return corpus.PreprocessConfig.default()


@pytest.fixture(scope="session")
def demo_raw() -> list[corpus.RawComment]:
    return corpus.ingest(DATA / "synthetic_comments_1k.jsonl", "jsonl").comments


@pytest.fixture(scope="session")
def demo_clean(demo_raw, pre_config) -> list[corpus.CleanComment]:
    return corpus.dedupe(corpus.preprocess_corpus(demo_raw, pre_config))


@pytest.fixture(scope="session")
def demo_scored(demo_raw, lexicon, pre_config) -> list[sentilex.ScoredComment]:
    return sentilex.label_corpus(demo_raw, lexicon, emoji_map=pre_config.emoji_map)


def _featurize_corpus(cleaned, scored, max_tokens=256):
    active = [c for c in cleaned if not c.dropped]
    label_by_id = {s.comment_id: s.label for s in scored}
    vocab = topicmodel.build_vocab(active, min_df=2)
    space = textclf.space_from_vocabulary(vocab, n_docs=len(active), max_tokens=max_tokens)
    features = [textclf.featurize(c, (), space, label=label_by_id[c.id]) for c in active]
    train_fv, val_fv = textclf.train_val_split(features, 0.2, seed=42)
    return space, train_fv, val_fv


@pytest.fixture(scope="session")
def demo_features(demo_clean, demo_scored):
    """(space, train, val) tf-idf features over the bundled 1k corpus."""
    return _featurize_corpus(demo_clean, demo_scored)


@pytest.fixture(scope="session")
def big_features(lexicon, pre_config):
    """(space, train, val) features over the bundled 3k client-scaling corpus."""
    raw = corpus.ingest(DATA / "synthetic_comments_3k.jsonl", "jsonl").comments
    cleaned = corpus.dedupe(corpus.preprocess_corpus(raw, pre_config))
    scored = sentilex.label_corpus(raw, lexicon, emoji_map=pre_config.emoji_map)
    return _featurize_corpus(cleaned, scored)


@pytest.fixture(scope="session")
def planted_docs() -> list[corpus.CleanComment]:
    docs = []
    with open(DATA / "planted_topics.jsonl", "r", encoding="utf-8") as fh:
        for line in fh:
            docs.append(corpus.CleanComment.from_json(json.loads(line)))
    return docs
