"""Federated training simulation: stratified shards, local SGD, FedAvg.

Privacy is enforced structurally: ``fedavg`` accepts only parameter sets and
shard sizes, never examples, and ``local_train`` returns parameters only.
Clients run in-process; per-client RNG streams are derived as seed XOR
client_id once per run, so multi-round schedules are reproducible regardless
of execution order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from .errors import ConfigError, DataError
from .sentilex import SentimentLabel
from .textclf import (
    CLASSES,
    EvalReport,
    FeatureVector,
    LinearModel,
    TrainConfig,
    evaluate,
    loss_and_grad,
    to_matrix,
    train,
    zero_model,
)

logger = logging.getLogger(__name__)

DEFAULT_ROUNDS = 5
DEFAULT_LOCAL_EPOCHS = 1


def _rng(seed: int) -> np.random.RandomState:
    return np.random.RandomState(seed % (2**32))


@dataclass(frozen=True)
class ClientShard:
    client_id: int
    examples: tuple[FeatureVector, ...]

    @property
    def class_counts(self) -> dict[SentimentLabel, int]:
        counts = {label: 0 for label in CLASSES}
        for fv in self.examples:
            if fv.label is not None:
                counts[fv.label] += 1
        return counts


@dataclass
class GlobalModel:
    model: LinearModel
    round_index: int = 0


@dataclass(frozen=True)
class ClientRoundStats:
    client_id: int
    n_examples: int
    loss: float
    accuracy: float

    def to_json(self) -> dict:
        return {
            "client_id": self.client_id,
            "n_examples": self.n_examples,
            "loss": self.loss,
            "accuracy": self.accuracy,
        }


@dataclass(frozen=True)
class RoundLog:
    round_index: int
    clients: tuple[ClientRoundStats, ...]
    val_accuracy: float
    val_macro_f1: float
    val_weighted_f1: float

    def to_json(self) -> dict:
        return {
            "round": self.round_index,
            "clients": [c.to_json() for c in self.clients],
            "val_accuracy": self.val_accuracy,
            "val_macro_f1": self.val_macro_f1,
            "val_weighted_f1": self.val_weighted_f1,
        }


@dataclass(frozen=True)
class FederatedRun:
    n_clients: int
    rounds: int
    local_epochs: int
    seed: int
    round_logs: tuple[RoundLog, ...]
    final_report: EvalReport
    final_model: LinearModel

    def to_json(self) -> dict:
        return {
            "n_clients": self.n_clients,
            "rounds": self.rounds,
            "local_epochs": self.local_epochs,
            "seed": self.seed,
            "round_logs": [log.to_json() for log in self.round_logs],
            "final_report": self.final_report.to_json(),
        }


def partition_stratified(
    data: Sequence[FeatureVector], n_clients: int, seed: int
) -> list[ClientShard]:
    """Per class: seeded shuffle, then round-robin deal to clients.

    With N=1 the partition is the identity (original order preserved), which
    keeps single-client federation bit-compatible with centralized training.
    """
    if n_clients < 1:
        raise ConfigError(f"n_clients must be >= 1, got {n_clients}")
    if not data:
        raise DataError("cannot partition an empty dataset")
    if n_clients == 1:
        return [ClientShard(client_id=0, examples=tuple(data))]
    by_class: dict[SentimentLabel, list[int]] = {label: [] for label in CLASSES}
    for i, fv in enumerate(data):
        if fv.label is None:
            raise DataError("cannot stratify unlabeled data")
        by_class[fv.label].append(i)
    rng = _rng(seed)
    buckets: list[list[int]] = [[] for _ in range(n_clients)]
    for label in CLASSES:
        members = by_class[label]
        if 0 < len(members) < n_clients:
            logger.warning(
                "partition_stratified: class %s has %d examples for %d clients",
                label.json_name, len(members), n_clients,
            )
        order = rng.permutation(len(members))
        for slot, j in enumerate(order):
            buckets[slot % n_clients].append(members[j])
    shards = []
    for cid, bucket in enumerate(buckets):
        bucket.sort()
        shards.append(ClientShard(client_id=cid, examples=tuple(data[i] for i in bucket)))
    return shards


def local_train(
    global_model: LinearModel,
    shard: ClientShard,
    epochs: int,
    rng: np.random.RandomState,
) -> LinearModel:
    """Fine-tune a copy of the global parameters on one shard.

    Only parameters leave this function; shard examples stay local.
    """
    if not shard.examples:
        raise DataError(f"client {shard.client_id} has an empty shard")
    if epochs == 0:
        return replace(global_model)
    local_config = replace(global_model.config, epochs=epochs)
    return train(shard.examples, config=local_config, init=global_model, rng=rng)


def fedavg(models: Sequence[LinearModel], sizes: Sequence[int]) -> LinearModel:
    """Size-weighted parameter mean, summed in fixed client-index order."""
    if not models:
        raise DataError("fedavg needs at least one model")
    if len(models) != len(sizes):
        raise DataError(f"{len(models)} models vs {len(sizes)} sizes")
    if any(s < 0 for s in sizes):
        raise DataError("shard sizes must be >= 0")
    total = sum(sizes)
    if total == 0:
        raise DataError("all shard sizes are zero")
    shape = models[0].W.shape
    for m in models[1:]:
        if m.W.shape != shape:
            raise DataError(f"model dimension mismatch: {m.W.shape} vs {shape}")
    W = np.zeros_like(models[0].W)
    b = np.zeros_like(models[0].b)
    for model, size in zip(models, sizes):
        weight = size / total
        W += weight * model.W
        b += weight * model.b
    return LinearModel(W=W, b=b, config=models[0].config, vocab_hash=models[0].vocab_hash)


def _shard_stats(model: LinearModel, shard: ClientShard) -> ClientRoundStats:
    X, y = to_matrix(shard.examples, model.n_features)
    loss, _, _ = loss_and_grad(model.W, model.b, X, y, model.config.l2)
    logits = X @ model.W.T + model.b
    accuracy = float((np.argmax(logits, axis=1) == y).mean())
    return ClientRoundStats(
        client_id=shard.client_id,
        n_examples=len(shard.examples),
        loss=loss,
        accuracy=accuracy,
    )


def run_federated(
    train_data: Sequence[FeatureVector],
    val_data: Sequence[FeatureVector],
    n_clients: int,
    rounds: int = DEFAULT_ROUNDS,
    local_epochs: int = DEFAULT_LOCAL_EPOCHS,
    config: TrainConfig | None = None,
    seed: int | None = None,
    n_features: int | None = None,
) -> FederatedRun:
    """Full FedAvg schedule; returns the trajectory and final evaluation."""
    if rounds < 0:
        raise ConfigError(f"rounds must be >= 0, got {rounds}")
    if local_epochs < 0:
        raise ConfigError(f"local_epochs must be >= 0, got {local_epochs}")
    config = config or TrainConfig()
    if seed is None:
        seed = config.seed
    if n_features is None:
        n_features = max((max(fv.indices) + 1 for fv in list(train_data) + list(val_data) if fv.indices), default=0)

    shards = partition_stratified(train_data, n_clients, seed)
    _check_partition(shards, len(train_data))
    client_rngs = [_rng(seed ^ shard.client_id) for shard in shards]
    global_model = GlobalModel(model=zero_model(n_features, replace(config, seed=seed)))

    logs: list[RoundLog] = []
    for round_index in range(1, rounds + 1):
        local_models: list[LinearModel] = []
        local_sizes: list[int] = []
        stats: list[ClientRoundStats] = []
        for shard in shards:
            if not shard.examples:
                logger.warning("round %d: skipping empty client %d", round_index, shard.client_id)
                continue
            local = local_train(global_model.model, shard, local_epochs, client_rngs[shard.client_id])
            local_models.append(local)
            local_sizes.append(len(shard.examples))
            stats.append(_shard_stats(local, shard))
        global_model = GlobalModel(model=fedavg(local_models, local_sizes), round_index=round_index)
        val_report = evaluate(global_model.model, val_data)
        logs.append(
            RoundLog(
                round_index=round_index,
                clients=tuple(stats),
                val_accuracy=val_report.accuracy,
                val_macro_f1=val_report.macro_f1,
                val_weighted_f1=val_report.weighted_f1,
            )
        )
    final_report = evaluate(global_model.model, val_data)
    return FederatedRun(
        n_clients=n_clients,
        rounds=rounds,
        local_epochs=local_epochs,
        seed=seed,
        round_logs=tuple(logs),
        final_report=final_report,
        final_model=global_model.model,
    )


def _check_partition(shards: Sequence[ClientShard], n_total: int) -> None:
    """Exhaustiveness and per-class balance <= 1 (disjoint by construction)."""
    n_covered = sum(len(shard.examples) for shard in shards)
    if n_covered != n_total:
        raise DataError(f"partition covers {n_covered} of {n_total} examples")
    for label in CLASSES:
        counts = [shard.class_counts[label] for shard in shards]
        if counts and max(counts) - min(counts) > 1:
            raise DataError(
                f"stratification broken for {label.json_name}: counts {counts}"
            )
