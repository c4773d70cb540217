"""Sparse tf-idf features and a multinomial logistic-regression classifier.

The classifier is the desk-scale stand-in for a transformer fine-tune: a
convex softmax model trained by deterministic mini-batch gradient descent,
so federated-averaging properties can be tested exactly.  Class order is
fixed [Negative, Neutral, Positive] everywhere, matching the confusion-matrix
axes used in reporting.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import sparse

from . import manifest
from .corpus import CleanComment
from .errors import ConfigError, DataError, NumericError
from .sentilex import SentimentLabel
from .topicmodel import Vocabulary

CLASSES: tuple[SentimentLabel, ...] = (
    SentimentLabel.NEGATIVE,
    SentimentLabel.NEUTRAL,
    SentimentLabel.POSITIVE,
)
N_CLASSES = len(CLASSES)

DEFAULT_MAX_TOKENS = 256


def _rng(seed: int) -> np.random.RandomState:
    return np.random.RandomState(seed % (2**32))


@dataclass(frozen=True)
class FeatureSpace:
    """Token index plus smoothed idf weights; tokens beyond max_tokens are cut."""

    tokens: tuple[str, ...]
    idf: tuple[float, ...]
    max_tokens: int = DEFAULT_MAX_TOKENS

    def __post_init__(self) -> None:
        if self.max_tokens < 1:
            raise ConfigError(f"max_tokens must be >= 1, got {self.max_tokens}")
        if len(self.tokens) != len(self.idf):
            raise DataError("idf length must match token count")
        if any(w < 0 or not math.isfinite(w) for w in self.idf):
            raise NumericError("idf weights must be finite and >= 0")

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

    @property
    def vocab_hash(self) -> str:
        return hashlib.sha256("\n".join(self.tokens).encode("utf-8")).hexdigest()


def smoothed_idf(n_docs: int, doc_freq: Sequence[int]) -> tuple[float, ...]:
    return tuple(math.log((1 + n_docs) / (1 + df)) + 1.0 for df in doc_freq)


def build_feature_space(
    corpus: Sequence[CleanComment],
    min_df: int = 1,
    max_tokens: int = DEFAULT_MAX_TOKENS,
) -> FeatureSpace:
    if min_df < 1:
        raise ConfigError(f"min_df must be >= 1, got {min_df}")
    docs = [c for c in corpus if not c.dropped]
    if not docs:
        raise DataError("cannot build a feature space from an empty corpus")
    df: dict[str, int] = {}
    for comment in docs:
        for token in set(comment.tokens):
            df[token] = df.get(token, 0) + 1
    kept = sorted(token for token, count in df.items() if count >= min_df)
    if not kept:
        raise DataError(f"feature space empty after min_df={min_df} filter")
    return FeatureSpace(
        tokens=tuple(kept),
        idf=smoothed_idf(len(docs), [df[t] for t in kept]),
        max_tokens=max_tokens,
    )


def space_from_vocabulary(
    vocab: Vocabulary, n_docs: int, max_tokens: int = DEFAULT_MAX_TOKENS
) -> FeatureSpace:
    """Reuse the topic-model vocabulary so features and topics share tokens."""
    return FeatureSpace(
        tokens=vocab.tokens,
        idf=smoothed_idf(n_docs, vocab.doc_freq),
        max_tokens=max_tokens,
    )


@dataclass(frozen=True)
class FeatureVector:
    """Sparse L2-normalized tf-idf vector with an optional gold label."""

    indices: tuple[int, ...]
    weights: tuple[float, ...]
    label: SentimentLabel | None = None
    comment_id: str = ""

    def __post_init__(self) -> None:
        if len(self.indices) != len(self.weights):
            raise DataError("indices and weights must be parallel")
        if any(not math.isfinite(w) for w in self.weights):
            raise NumericError("feature weights must be finite")
        norm = math.sqrt(sum(w * w for w in self.weights))
        if norm > 1.0 + 1e-9:
            raise NumericError(f"feature vector norm {norm} exceeds 1")

    def to_json(self) -> dict:
        return {
            "id": self.comment_id,
            "indices": list(self.indices),
            "weights": list(self.weights),
            "label": self.label.json_name if self.label is not None else None,
        }

    @classmethod
    def from_json(cls, record: Mapping) -> "FeatureVector":
        label = record.get("label")
        return cls(
            indices=tuple(record["indices"]),
            weights=tuple(record["weights"]),
            label=SentimentLabel.from_name(label) if label is not None else None,
            comment_id=record.get("id", ""),
        )


def featurize(
    comment: CleanComment,
    topic_keywords: Sequence[str],
    space: FeatureSpace,
    label: SentimentLabel | None = None,
) -> FeatureVector:
    """tf-idf over the first max_tokens of (comment tokens ++ topic keywords)."""
    tokens = (list(comment.tokens) + list(topic_keywords))[: space.max_tokens]
    counts: dict[int, int] = {}
    index = space.index
    for token in tokens:
        j = index.get(token)
        if j is not None:
            counts[j] = counts.get(j, 0) + 1
    if not counts:
        return FeatureVector(indices=(), weights=(), label=label, comment_id=comment.id)
    items = sorted(counts.items())
    raw = [tf * space.idf[j] for j, tf in items]
    norm = math.sqrt(sum(w * w for w in raw))
    weights = [w / norm for w in raw] if norm > 0 else raw
    return FeatureVector(
        indices=tuple(j for j, _ in items),
        weights=tuple(weights),
        label=label,
        comment_id=comment.id,
    )


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.1
    epochs: int = 10
    batch_size: int = 32
    l2: float = 1e-4
    seed: int = 42

    def __post_init__(self) -> None:
        if self.learning_rate <= 0:
            raise ConfigError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.epochs < 0:
            raise ConfigError(f"epochs must be >= 0, got {self.epochs}")
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.l2 < 0:
            raise ConfigError(f"l2 must be >= 0, got {self.l2}")

    def to_json(self) -> dict:
        return {
            "learning_rate": self.learning_rate,
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "l2": self.l2,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, record: Mapping) -> "TrainConfig":
        return cls(**{k: record[k] for k in ("learning_rate", "epochs", "batch_size", "l2", "seed")})


@dataclass(frozen=True)
class LinearModel:
    """Softmax classifier; W is (3, V), b is (3,), class order fixed."""

    W: np.ndarray
    b: np.ndarray
    config: TrainConfig
    vocab_hash: str | None = None

    def __post_init__(self) -> None:
        if self.W.ndim != 2 or self.W.shape[0] != N_CLASSES or self.b.shape != (N_CLASSES,):
            raise DataError(f"bad parameter shapes W={self.W.shape}, b={self.b.shape}")
        if not (np.isfinite(self.W).all() and np.isfinite(self.b).all()):
            raise NumericError("model parameters must be finite")

    @property
    def n_features(self) -> int:
        return self.W.shape[1]


def zero_model(n_features: int, config: TrainConfig, vocab_hash: str | None = None) -> LinearModel:
    return LinearModel(
        W=np.zeros((N_CLASSES, n_features)),
        b=np.zeros(N_CLASSES),
        config=config,
        vocab_hash=vocab_hash,
    )


def _dimension(data: Sequence[FeatureVector]) -> int:
    return max((max(fv.indices) + 1 for fv in data if fv.indices), default=0)


def to_matrix(data: Sequence[FeatureVector], n_features: int) -> tuple[sparse.csr_matrix, np.ndarray]:
    """Stack feature vectors into a CSR matrix plus a class-index vector."""
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []
    y = np.empty(len(data), dtype=np.int64)
    for i, fv in enumerate(data):
        if fv.indices and fv.indices[-1] >= n_features:
            raise DataError(
                f"feature index {fv.indices[-1]} out of range for dimension {n_features}"
            )
        rows.extend([i] * len(fv.indices))
        cols.extend(fv.indices)
        vals.extend(fv.weights)
        y[i] = int(fv.label) if fv.label is not None else -1
    X = sparse.csr_matrix((vals, (rows, cols)), shape=(len(data), n_features))
    return X, y


def loss_and_grad(
    W: np.ndarray, b: np.ndarray, X: sparse.csr_matrix, y: np.ndarray, l2: float
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean softmax cross-entropy with L2 on W (bias unregularized)."""
    n = X.shape[0]
    logits = X @ W.T + b
    logits -= logits.max(axis=1, keepdims=True)
    exp = np.exp(logits)
    probs = exp / exp.sum(axis=1, keepdims=True)
    ce = -np.log(probs[np.arange(n), y]).mean()
    loss = float(ce + 0.5 * l2 * float((W * W).sum()))
    G = probs
    G[np.arange(n), y] -= 1.0
    G /= n
    gW = np.asarray((X.T @ G).T) + l2 * W
    gb = G.sum(axis=0)
    return loss, gW, gb


def train(
    data: Sequence[FeatureVector],
    config: TrainConfig | None = None,
    init: LinearModel | None = None,
    rng: np.random.RandomState | None = None,
    n_features: int | None = None,
) -> LinearModel:
    """Mini-batch gradient descent with a seed-fixed shuffle schedule.

    ``init`` warm-starts from existing parameters (used by federated local
    training); ``rng`` overrides the config-seeded generator so callers can
    thread a persistent per-client stream through repeated calls.
    """
    config = config or TrainConfig()
    if not data:
        raise DataError("cannot train on an empty dataset")
    counts = {label: 0 for label in CLASSES}
    for fv in data:
        if fv.label is None:
            raise DataError(f"unlabeled example {fv.comment_id!r} in training data")
        counts[fv.label] += 1
    missing = [label.json_name for label, c in counts.items() if c == 0]
    if missing:
        raise DataError(
            f"training data missing classes {missing}; "
            f"counts={{{', '.join(f'{k.json_name}: {v}' for k, v in counts.items())}}}"
        )
    if n_features is None:
        n_features = init.n_features if init is not None else _dimension(data)
    if init is not None and init.n_features != n_features:
        raise DataError(f"init has {init.n_features} features, data needs {n_features}")

    X, y = to_matrix(data, n_features)
    W = init.W.copy() if init is not None else np.zeros((N_CLASSES, n_features))
    b = init.b.copy() if init is not None else np.zeros(N_CLASSES)
    rng = rng if rng is not None else _rng(config.seed)

    n = len(data)
    for epoch in range(config.epochs):
        order = rng.permutation(n)
        for start in range(0, n, config.batch_size):
            batch = order[start : start + config.batch_size]
            _, gW, gb = loss_and_grad(W, b, X[batch], y[batch], config.l2)
            W -= config.learning_rate * gW
            b -= config.learning_rate * gb
        if not (np.isfinite(W).all() and np.isfinite(b).all()):
            raise NumericError(f"parameters diverged to non-finite values at epoch {epoch}")
    return LinearModel(W=W, b=b, config=config, vocab_hash=init.vocab_hash if init else None)


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max()
    exp = np.exp(shifted)
    return exp / exp.sum()


def predict(model: LinearModel, x: FeatureVector) -> tuple[SentimentLabel, np.ndarray]:
    """Label (argmax, lowest index on ties) plus the 3 class probabilities."""
    if x.indices and x.indices[-1] >= model.n_features:
        raise DataError(
            f"feature index {x.indices[-1]} out of range for model with "
            f"{model.n_features} features"
        )
    logits = model.b.copy()
    if x.indices:
        idx = np.fromiter(x.indices, dtype=np.int64)
        w = np.fromiter(x.weights, dtype=np.float64)
        logits += model.W[:, idx] @ w
    probs = _softmax(logits)
    return CLASSES[int(np.argmax(logits))], probs


def predict_batch(model: LinearModel, data: Sequence[FeatureVector]) -> np.ndarray:
    X, _ = to_matrix(data, model.n_features)
    logits = X @ model.W.T + model.b
    return np.argmax(logits, axis=1)


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class EvalReport:
    confusion: tuple[tuple[int, ...], ...]  # rows true, cols predicted
    accuracy: float
    macro_f1: float
    weighted_f1: float
    per_class: tuple[ClassMetrics, ...]
    undefined_classes: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "class_order": [label.json_name for label in CLASSES],
            "confusion": [list(row) for row in self.confusion],
            "accuracy": self.accuracy,
            "macro_f1": self.macro_f1,
            "weighted_f1": self.weighted_f1,
            "per_class": [
                {
                    "label": label.json_name,
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                    "support": m.support,
                }
                for label, m in zip(CLASSES, self.per_class)
            ],
            "undefined_classes": list(self.undefined_classes),
        }

    @classmethod
    def from_json(cls, record: Mapping) -> "EvalReport":
        return report_from_confusion(np.asarray(record["confusion"], dtype=np.int64))


def confusion_matrix(y_true: Sequence[int], y_pred: Sequence[int]) -> np.ndarray:
    matrix = np.zeros((N_CLASSES, N_CLASSES), dtype=np.int64)
    for t, p in zip(y_true, y_pred):
        matrix[t, p] += 1
    return matrix


def report_from_confusion(matrix: np.ndarray) -> EvalReport:
    matrix = np.asarray(matrix, dtype=np.int64)
    if matrix.shape != (N_CLASSES, N_CLASSES) or (matrix < 0).any():
        raise DataError(f"confusion matrix must be {N_CLASSES}x{N_CLASSES} non-negative")
    total = int(matrix.sum())
    if total == 0:
        raise DataError("confusion matrix is empty")
    supports = matrix.sum(axis=1)
    predicted = matrix.sum(axis=0)
    per_class = []
    undefined = []
    for c in range(N_CLASSES):
        tp = int(matrix[c, c])
        precision = tp / predicted[c] if predicted[c] else 0.0
        recall = tp / supports[c] if supports[c] else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        if supports[c] == 0 and predicted[c] == 0:
            undefined.append(c)
        per_class.append(
            ClassMetrics(precision=float(precision), recall=float(recall), f1=float(f1), support=int(supports[c]))
        )
    accuracy = float(np.trace(matrix) / total)
    # classes absent from both truth and prediction are flagged and left out
    # of the macro mean (their F1 would be 0/0, not a real score)
    defined = [c for c in range(N_CLASSES) if c not in undefined]
    macro_f1 = float(sum(per_class[c].f1 for c in defined) / len(defined))
    weighted_f1 = float(sum(m.f1 * m.support for m in per_class) / total)
    return EvalReport(
        confusion=tuple(tuple(int(v) for v in row) for row in matrix),
        accuracy=accuracy,
        macro_f1=macro_f1,
        weighted_f1=weighted_f1,
        per_class=tuple(per_class),
        undefined_classes=tuple(undefined),
    )


def evaluate(model: LinearModel, data: Sequence[FeatureVector]) -> EvalReport:
    if not data:
        raise DataError("cannot evaluate on an empty dataset")
    for fv in data:
        if fv.label is None:
            raise DataError(f"unlabeled example {fv.comment_id!r} in evaluation data")
    y_true = np.fromiter((int(fv.label) for fv in data), dtype=np.int64)
    y_pred = predict_batch(model, data)
    return report_from_confusion(confusion_matrix(y_true, y_pred))


def train_val_split(
    data: Sequence[FeatureVector], val_fraction: float = 0.2, seed: int = 42
) -> tuple[list[FeatureVector], list[FeatureVector]]:
    """Stratified split; per class, a seeded shuffle then the tail goes to val."""
    if not 0.0 <= val_fraction < 1.0:
        raise ConfigError(f"val_fraction must be in [0, 1), got {val_fraction}")
    rng = _rng(seed)
    by_class: dict[SentimentLabel, list[int]] = {label: [] for label in CLASSES}
    for i, fv in enumerate(data):
        if fv.label is None:
            raise DataError("cannot stratify unlabeled data")
        by_class[fv.label].append(i)
    train_idx: list[int] = []
    val_idx: list[int] = []
    for label in CLASSES:
        members = by_class[label]
        order = rng.permutation(len(members))
        n_val = int(round(len(members) * val_fraction))
        n_val = min(n_val, max(len(members) - 1, 0))
        shuffled = [members[j] for j in order]
        val_idx.extend(shuffled[: n_val])
        train_idx.extend(shuffled[n_val:])
    train_idx.sort()
    val_idx.sort()
    return [data[i] for i in train_idx], [data[i] for i in val_idx]


def save_model(model: LinearModel, path: str | Path, meta: dict | None = None) -> None:
    payload = {
        "kind": "linear_model",
        "class_order": [label.json_name for label in CLASSES],
        "vocab_hash": model.vocab_hash,
        "config": model.config.to_json(),
        "W": model.W.tolist(),
        "b": model.b.tolist(),
    }
    manifest.write_json(path, payload, meta=meta)


def load_model(path: str | Path) -> LinearModel:
    payload = manifest.read_json(path)
    if payload.get("kind") != "linear_model":
        raise DataError(f"{path} is not a linear model snapshot")
    if payload.get("class_order") != [label.json_name for label in CLASSES]:
        raise DataError(f"unexpected class order in {path}")
    return LinearModel(
        W=np.asarray(payload["W"], dtype=np.float64),
        b=np.asarray(payload["b"], dtype=np.float64),
        config=TrainConfig.from_json(payload["config"]),
        vocab_hash=payload.get("vocab_hash"),
    )
