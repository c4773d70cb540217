"""Latent Dirichlet Allocation via collapsed Gibbs sampling.

The sampler is deliberately single-threaded and list-based: the sequential
token-by-token dependence is what makes the chain deterministic for a given
seed, and at desk scale (a few hundred thousand token slots per sweep) the
pure-Python inner loop finishes a full default fit in seconds.  Per-sweep
uniform draws come from a seeded numpy generator in one batch.

phi and theta are the usual smoothed count estimates:

    phi[k, w]   = (n_kw + beta)  / (n_k + V*beta)
    theta[d, k] = (n_dk + alpha) / (n_d + K*alpha)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import manifest
from .corpus import CleanComment
from .errors import ConfigError, DataError, NumericError

logger = logging.getLogger(__name__)

DEFAULT_K = 10
DEFAULT_BETA = 0.01
DEFAULT_ITERATIONS = 500
DEFAULT_MIN_DF = 2
DEFAULT_KEYWORDS = 10

SweepCallback = Callable[[int, list, list, list], None]


def _rng(seed: int) -> np.random.RandomState:
    return np.random.RandomState(seed % (2**32))


@dataclass(frozen=True)
class Vocabulary:
    """Dense, lexicographically ordered token index with document frequencies."""

    tokens: tuple[str, ...]
    doc_freq: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.tokens) != len(set(self.tokens)):
            raise DataError("vocabulary tokens must be unique")
        if len(self.tokens) != len(self.doc_freq):
            raise DataError("doc_freq length must match token count")

    @property
    def index(self) -> dict[str, int]:
        cached = self.__dict__.get("_index")
        if cached is None:
            cached = {token: i for i, token in enumerate(self.tokens)}
            object.__setattr__(self, "_index", cached)
        return cached

    @property
    def size(self) -> int:
        return len(self.tokens)


def build_vocab(corpus: Sequence[CleanComment], min_df: int = DEFAULT_MIN_DF) -> Vocabulary:
    """Index tokens whose document frequency is at least ``min_df``."""
    if min_df < 1:
        raise ConfigError(f"min_df must be >= 1, got {min_df}")
    docs = [c for c in corpus if not c.dropped]
    if not docs:
        raise DataError("cannot build vocabulary from an empty corpus")
    df: dict[str, int] = {}
    for comment in docs:
        for token in set(comment.tokens):
            df[token] = df.get(token, 0) + 1
    kept = sorted(token for token, count in df.items() if count >= min_df)
    if not kept:
        raise DataError(
            f"vocabulary empty after min_df={min_df} filter "
            f"({len(df)} distinct tokens over {len(docs)} docs)"
        )
    return Vocabulary(tokens=tuple(kept), doc_freq=tuple(df[token] for token in kept))


@dataclass(frozen=True)
class TopicModel:
    n_topics: int
    alpha: float
    beta: float
    seed: int
    iterations: int
    vocab: Vocabulary
    doc_ids: tuple[str, ...]
    phi: np.ndarray  # K x V
    theta: np.ndarray  # D x K
    doc_topic_counts: np.ndarray  # D x K int64
    topic_word_counts: np.ndarray  # K x V int64
    topic_counts: np.ndarray  # K int64

    def __post_init__(self) -> None:
        if not (np.isfinite(self.phi).all() and np.isfinite(self.theta).all()):
            raise NumericError("non-finite topic distributions")
        if (self.phi <= 0).any() or (self.theta <= 0).any():
            raise NumericError("topic distributions must be strictly positive (smoothed)")
        for name, dist in (("phi", self.phi), ("theta", self.theta)):
            drift = np.abs(dist.sum(axis=1) - 1.0).max() if dist.size else 0.0
            if drift > 1e-9:
                raise NumericError(f"{name} rows deviate from 1 by {drift:.3e}")


@dataclass(frozen=True)
class TopicAssignment:
    comment_id: str
    dominant_topic: int
    topic_keywords: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "id": self.comment_id,
            "dominant_topic": self.dominant_topic,
            "topic_keywords": list(self.topic_keywords),
        }


def fit_lda(
    corpus: Sequence[CleanComment],
    vocab: Vocabulary,
    n_topics: int = DEFAULT_K,
    alpha: float | None = None,
    beta: float = DEFAULT_BETA,
    iterations: int = DEFAULT_ITERATIONS,
    seed: int = 42,
    sweep_callback: SweepCallback | None = None,
) -> TopicModel:
    """Collapsed Gibbs sampling for ``iterations`` full sweeps.

    ``sweep_callback(sweep, doc_topic, topic_word, topic_totals)`` is invoked
    after every sweep with live count lists (read-only by convention); it
    exists so tests can assert count conservation mid-chain.
    """
    if n_topics < 1:
        raise ConfigError(f"n_topics must be >= 1, got {n_topics}")
    if iterations < 1:
        raise ConfigError(f"iterations must be >= 1, got {iterations}")
    if alpha is None:
        alpha = 50.0 / n_topics
    if alpha <= 0 or beta <= 0:
        raise ConfigError(f"alpha and beta must be positive, got alpha={alpha}, beta={beta}")

    active = [c for c in corpus if not c.dropped]
    if not active:
        raise DataError("cannot fit LDA on an empty corpus")
    index = vocab.index
    docs = [[index[t] for t in c.tokens if t in index] for c in active]
    doc_ids = tuple(c.id for c in active)
    n_empty = sum(1 for d in docs if not d)
    if n_empty:
        logger.warning("fit_lda: %d of %d docs have no in-vocab tokens (uniform theta)",
                       n_empty, len(docs))

    K = n_topics
    V = vocab.size
    D = len(docs)
    total_tokens = sum(len(d) for d in docs)
    if K > total_tokens:
        logger.warning("fit_lda: K=%d exceeds total token occurrences (%d)", K, total_tokens)

    rng = _rng(seed)
    ndk = [[0] * K for _ in range(D)]
    nkw = [[0] * V for _ in range(K)]
    nk = [0] * K
    assignments: list[list[int]] = []

    init_u = rng.random_sample(total_tokens)
    pos = 0
    for d, words in enumerate(docs):
        zs = []
        row = ndk[d]
        for w in words:
            k = int(init_u[pos] * K)
            pos += 1
            if k >= K:
                k = K - 1
            zs.append(k)
            row[k] += 1
            nkw[k][w] += 1
            nk[k] += 1
        assignments.append(zs)

    v_beta = V * beta
    cumulative = [0.0] * K
    for sweep in range(iterations):
        sweep_u = rng.random_sample(total_tokens) if total_tokens else np.empty(0)
        pos = 0
        for d in range(D):
            words = docs[d]
            zs = assignments[d]
            row = ndk[d]
            for j in range(len(words)):
                w = words[j]
                k = zs[j]
                row[k] -= 1
                nkw[k][w] -= 1
                nk[k] -= 1
                total = 0.0
                for t in range(K):
                    total += (row[t] + alpha) * (nkw[t][w] + beta) / (nk[t] + v_beta)
                    cumulative[t] = total
                r = sweep_u[pos] * total
                pos += 1
                k = 0
                while cumulative[k] < r:
                    k += 1
                zs[j] = k
                row[k] += 1
                nkw[k][w] += 1
                nk[k] += 1
        if sweep_callback is not None:
            sweep_callback(sweep, ndk, nkw, nk)

    doc_topic = np.asarray(ndk, dtype=np.int64).reshape(D, K)
    topic_word = np.asarray(nkw, dtype=np.int64).reshape(K, V)
    topic_totals = np.asarray(nk, dtype=np.int64)
    phi = (topic_word + beta) / (topic_totals[:, None] + v_beta)
    doc_lengths = doc_topic.sum(axis=1)
    theta = (doc_topic + alpha) / (doc_lengths[:, None] + K * alpha)
    return TopicModel(
        n_topics=K,
        alpha=float(alpha),
        beta=float(beta),
        seed=int(seed),
        iterations=int(iterations),
        vocab=vocab,
        doc_ids=doc_ids,
        phi=phi,
        theta=theta,
        doc_topic_counts=doc_topic,
        topic_word_counts=topic_word,
        topic_counts=topic_totals,
    )


def top_keywords(model: TopicModel, topic: int, m: int = DEFAULT_KEYWORDS) -> tuple[str, ...]:
    """Top-``m`` tokens of a topic by phi, descending; ties lexicographic."""
    if not 0 <= topic < model.n_topics:
        raise ConfigError(f"topic {topic} out of range [0, {model.n_topics})")
    if m < 0:
        raise ConfigError(f"m must be >= 0, got {m}")
    row = model.phi[topic]
    order = sorted(range(model.vocab.size), key=lambda j: (-row[j], model.vocab.tokens[j]))
    return tuple(model.vocab.tokens[j] for j in order[:m])


def dominant_topic(model: TopicModel, doc_index: int, m: int = DEFAULT_KEYWORDS) -> TopicAssignment:
    """Hard topic assignment: argmax of theta, lowest index on ties."""
    if not 0 <= doc_index < len(model.doc_ids):
        raise DataError(f"doc_index {doc_index} out of range [0, {len(model.doc_ids)})")
    topic = int(np.argmax(model.theta[doc_index]))
    return TopicAssignment(
        comment_id=model.doc_ids[doc_index],
        dominant_topic=topic,
        topic_keywords=top_keywords(model, topic, m),
    )


def assign_all(model: TopicModel, m: int = DEFAULT_KEYWORDS) -> list[TopicAssignment]:
    keywords = [top_keywords(model, k, m) for k in range(model.n_topics)]
    topics = np.argmax(model.theta, axis=1)
    return [
        TopicAssignment(comment_id=cid, dominant_topic=int(k), topic_keywords=keywords[int(k)])
        for cid, k in zip(model.doc_ids, topics)
    ]


def log_likelihood(model: TopicModel, corpus: Sequence[CleanComment]) -> float:
    """Corpus log-likelihood under the fitted mixture, sum over token slots."""
    index = model.vocab.index
    by_id = {c.id: c for c in corpus}
    total = 0.0
    for d, cid in enumerate(model.doc_ids):
        comment = by_id.get(cid)
        if comment is None:
            raise DataError(f"comment {cid!r} missing from corpus")
        mix = model.theta[d] @ model.phi  # V-vector of token probabilities
        for token in comment.tokens:
            w = index.get(token)
            if w is not None:
                total += float(np.log(mix[w]))
    return total


def save_model(model: TopicModel, path: str | Path, meta: dict | None = None) -> None:
    payload = {
        "kind": "topic_model",
        "n_topics": model.n_topics,
        "alpha": model.alpha,
        "beta": model.beta,
        "seed": model.seed,
        "iterations": model.iterations,
        "vocab_tokens": list(model.vocab.tokens),
        "vocab_doc_freq": list(model.vocab.doc_freq),
        "doc_ids": list(model.doc_ids),
        "doc_topic_counts": model.doc_topic_counts.tolist(),
        "topic_word_counts": model.topic_word_counts.tolist(),
    }
    manifest.write_json(path, payload, meta=meta)


def load_model(path: str | Path) -> TopicModel:
    payload = manifest.read_json(path)
    if payload.get("kind") != "topic_model":
        raise DataError(f"{path} is not a topic model snapshot")
    vocab = Vocabulary(
        tokens=tuple(payload["vocab_tokens"]),
        doc_freq=tuple(payload["vocab_doc_freq"]),
    )
    K = int(payload["n_topics"])
    alpha = float(payload["alpha"])
    beta = float(payload["beta"])
    doc_topic = np.asarray(payload["doc_topic_counts"], dtype=np.int64).reshape(-1, K)
    topic_word = np.asarray(payload["topic_word_counts"], dtype=np.int64).reshape(K, vocab.size)
    topic_totals = topic_word.sum(axis=1)
    phi = (topic_word + beta) / (topic_totals[:, None] + vocab.size * beta)
    doc_lengths = doc_topic.sum(axis=1)
    theta = (doc_topic + alpha) / (doc_lengths[:, None] + K * alpha)
    return TopicModel(
        n_topics=K,
        alpha=alpha,
        beta=beta,
        seed=int(payload["seed"]),
        iterations=int(payload["iterations"]),
        vocab=vocab,
        doc_ids=tuple(payload["doc_ids"]),
        phi=phi,
        theta=theta,
        doc_topic_counts=doc_topic,
        topic_word_counts=topic_word,
        topic_counts=topic_totals,
    )
