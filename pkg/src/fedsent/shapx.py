"""Shapley-value token attributions for classifier predictions.

Three paths with one contract (efficiency: contributions plus the baseline
value reconstruct the prediction value):

* ``shapley_exact_linear`` — closed form for the linear model's class logit,
  phi_j = W[class, j] * (x_j - baseline_j).
* ``shapley_sampled`` — permutation-sampling Monte Carlo estimator for any
  value function, with per-feature standard errors.
* ``shapley_brute`` — exact coalition enumeration for small d; the test
  oracle the other two are checked against.

The value function is the pre-softmax class logit (additive, so the linear
path is exact) and the baseline is the zero vector: in tf-idf space zero
means "token absent".
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import ConfigError, DataError, NumericError
from .sentilex import SentimentLabel
from .textclf import CLASSES, FeatureSpace, FeatureVector, LinearModel, predict

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 2000
DEFAULT_SUBSET = 500
DEFAULT_TOP = 15

EFFICIENCY_TOL = 1e-6

ValueFn = Callable[[np.ndarray], float]


def _rng(seed: int) -> np.random.RandomState:
    return np.random.RandomState(seed % (2**32))


@dataclass(frozen=True)
class Attribution:
    comment_id: str
    label: SentimentLabel
    phi: Mapping[str, float]  # token -> signed contribution
    baseline_value: float
    prediction_value: float

    def validate(self, tol: float = EFFICIENCY_TOL) -> None:
        gap = abs(sum(self.phi.values()) + self.baseline_value - self.prediction_value)
        if gap > tol:
            raise NumericError(f"efficiency violated by {gap:.3e} for {self.comment_id!r}")

    def to_json(self) -> dict:
        ordered = sorted(self.phi.items(), key=lambda kv: (-abs(kv[1]), kv[0]))
        return {
            "id": self.comment_id,
            "class": self.label.json_name,
            "tokens": [{"token": token, "phi": value} for token, value in ordered],
            "baseline_value": self.baseline_value,
            "prediction_value": self.prediction_value,
        }

    @classmethod
    def from_json(cls, record: Mapping) -> "Attribution":
        return cls(
            comment_id=record["id"],
            label=SentimentLabel.from_name(record["class"]),
            phi={entry["token"]: entry["phi"] for entry in record["tokens"]},
            baseline_value=record["baseline_value"],
            prediction_value=record["prediction_value"],
        )


@dataclass(frozen=True)
class SampledAttribution:
    """Estimator output on raw feature indices, with per-feature stderr."""

    phi: np.ndarray
    stderr: np.ndarray
    baseline_value: float
    prediction_value: float
    samples: int


@dataclass(frozen=True)
class ClassSummary:
    label: SentimentLabel
    top_positive: tuple[tuple[str, float], ...]  # (token, mean |phi|), descending
    top_negative: tuple[tuple[str, float], ...]

    def to_json(self) -> dict:
        return {
            "class": self.label.json_name,
            "top_positive": [[token, value] for token, value in self.top_positive],
            "top_negative": [[token, value] for token, value in self.top_negative],
        }


def _sparse_to_map(fv: FeatureVector) -> dict[int, float]:
    return dict(zip(fv.indices, fv.weights))


def shapley_exact_linear(
    model: LinearModel,
    x: FeatureVector,
    class_label: SentimentLabel,
    baseline: FeatureVector | None = None,
    space: FeatureSpace | None = None,
) -> Attribution:
    """Exact attribution of the class logit for the linear model."""
    c = int(class_label)
    x_map = _sparse_to_map(x)
    base_map = _sparse_to_map(baseline) if baseline is not None else {}
    support = sorted(set(x_map) | set(base_map))
    if support and support[-1] >= model.n_features:
        raise DataError(
            f"feature index {support[-1]} out of range for model with "
            f"{model.n_features} features"
        )
    if space is not None and support and support[-1] >= space.size:
        raise DataError(f"feature index {support[-1]} outside feature space of {space.size}")
    w_row = model.W[c]
    phi: dict[str, float] = {}
    base_value = float(model.b[c])
    pred_value = float(model.b[c])
    for j in support:
        xj = x_map.get(j, 0.0)
        bj = base_map.get(j, 0.0)
        name = space.tokens[j] if space is not None else f"f{j}"
        phi[name] = float(w_row[j] * (xj - bj))
        base_value += float(w_row[j] * bj)
        pred_value += float(w_row[j] * xj)
    attribution = Attribution(
        comment_id=x.comment_id,
        label=class_label,
        phi=phi,
        baseline_value=base_value,
        prediction_value=pred_value,
    )
    attribution.validate()
    return attribution


def shapley_sampled(
    value_fn: ValueFn,
    d: int,
    x: np.ndarray,
    baseline: np.ndarray,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> SampledAttribution:
    """Permutation-sampling Shapley estimator.

    For each sampled permutation, features are switched from baseline to x in
    permutation order and the marginal change in ``value_fn`` is credited to
    the switched feature; ``value_fn`` receives the hybrid vector (a feature
    coalition in vector form).  Telescoping makes efficiency hold exactly for
    every sample, hence also for the mean.
    """
    if d < 1:
        raise ConfigError(f"d must be >= 1, got {d}")
    if samples < 1:
        raise ConfigError(f"samples must be >= 1, got {samples}")
    x = np.asarray(x, dtype=np.float64)
    baseline = np.asarray(baseline, dtype=np.float64)
    if x.shape != (d,) or baseline.shape != (d,):
        raise DataError(f"x and baseline must have shape ({d},)")
    rng = _rng(seed)
    mean = np.zeros(d)
    m2 = np.zeros(d)
    base_value = float(value_fn(baseline.copy()))
    pred_value = float(value_fn(x.copy()))
    for s in range(1, samples + 1):
        order = rng.permutation(d)
        z = baseline.copy()
        prev = base_value
        for j in order:
            z[j] = x[j]
            cur = float(value_fn(z))
            delta = cur - prev
            step = delta - mean[j]
            mean[j] += step / s
            m2[j] += step * (delta - mean[j])
            prev = cur
    variance = m2 / (samples - 1) if samples > 1 else np.zeros(d)
    stderr = np.sqrt(np.maximum(variance, 0.0) / samples)
    return SampledAttribution(
        phi=mean,
        stderr=stderr,
        baseline_value=base_value,
        prediction_value=pred_value,
        samples=samples,
    )


def shapley_brute(
    value_fn: ValueFn, d: int, x: np.ndarray, baseline: np.ndarray
) -> np.ndarray:
    """Exact Shapley values by full coalition enumeration (test oracle)."""
    if not 1 <= d <= 20:
        raise ConfigError(f"brute-force path supports 1 <= d <= 20, got {d}")
    x = np.asarray(x, dtype=np.float64)
    baseline = np.asarray(baseline, dtype=np.float64)
    values = np.empty(1 << d)
    for mask in range(1 << d):
        z = baseline.copy()
        for j in range(d):
            if mask >> j & 1:
                z[j] = x[j]
        values[mask] = value_fn(z)
    fact = [math.factorial(i) for i in range(d + 1)]
    phi = np.zeros(d)
    for j in range(d):
        bit = 1 << j
        for mask in range(1 << d):
            if mask & bit:
                continue
            s = bin(mask).count("1")
            weight = fact[s] * fact[d - s - 1] / fact[d]
            phi[j] += weight * (values[mask | bit] - values[mask])
    return phi


def logit_value_fn(model: LinearModel, class_label: SentimentLabel) -> ValueFn:
    """Pre-softmax class logit over a dense feature vector."""
    c = int(class_label)
    w_row = model.W[c]
    bias = float(model.b[c])

    def value(z: np.ndarray) -> float:
        return bias + float(w_row[: len(z)] @ z) if len(z) else bias

    return value


def class_summary(
    attributions: Sequence[Attribution],
    class_label: SentimentLabel,
    k: int = DEFAULT_TOP,
) -> ClassSummary:
    """Corpus-level top tokens for one class.

    Token rank = mean signed contribution over the attributions (for that
    class) in which the token appears; zero-mean tokens are excluded.
    """
    if k < 0:
        raise ConfigError(f"k must be >= 0, got {k}")
    sums: dict[str, float] = {}
    counts: dict[str, int] = {}
    for attribution in attributions:
        if attribution.label != class_label:
            continue
        for token, value in attribution.phi.items():
            sums[token] = sums.get(token, 0.0) + value
            counts[token] = counts.get(token, 0) + 1
    means = {token: sums[token] / counts[token] for token in sums}
    positive = sorted(
        ((t, m) for t, m in means.items() if m > 0), key=lambda kv: (-kv[1], kv[0])
    )
    negative = sorted(
        ((t, m) for t, m in means.items() if m < 0), key=lambda kv: (kv[1], kv[0])
    )
    return ClassSummary(
        label=class_label,
        top_positive=tuple((t, m) for t, m in positive[:k]),
        top_negative=tuple((t, abs(m)) for t, m in negative[:k]),
    )


def explain_corpus(
    model: LinearModel,
    features: Sequence[FeatureVector],
    space: FeatureSpace,
    class_label: SentimentLabel | None = None,
    subset: int = DEFAULT_SUBSET,
    seed: int = 42,
    top: int = DEFAULT_TOP,
) -> tuple[list[Attribution], list[ClassSummary]]:
    """Exact attributions over a seed-selected subset, plus class summaries.

    With ``class_label=None`` ("all"), each comment is attributed with
    respect to its predicted class; otherwise every comment is attributed
    with respect to the requested class.
    """
    if not features:
        raise DataError("cannot explain an empty feature set")
    if subset < 1:
        raise ConfigError(f"subset must be >= 1, got {subset}")
    if len(features) > subset:
        rng = _rng(seed)
        chosen = sorted(rng.choice(len(features), size=subset, replace=False).tolist())
        selected = [features[i] for i in chosen]
    else:
        selected = list(features)
    attributions: list[Attribution] = []
    for fv in selected:
        if class_label is None:
            target, _ = predict(model, fv)
        else:
            target = class_label
        attributions.append(shapley_exact_linear(model, fv, target, baseline=None, space=space))
    wanted = CLASSES if class_label is None else (class_label,)
    summaries = [class_summary(attributions, label, k=top) for label in wanted]
    return attributions, summaries
