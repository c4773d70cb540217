"""Acceptance suite: ten go/no-go checks for the full artifact.

Each test prints one `[criterion N] PASS — ...` line (visible with `pytest -s`
or on failure) and enforces both the correctness tolerance and the runtime
budget stated for that criterion.
"""

from __future__ import annotations

import json
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
import pytest
from scipy import sparse

from fedsent import cli, fednet, sentilex, shapx, textclf, topicmodel
from fedsent.corpus import RawComment
from fedsent.sentilex import SentimentLabel
from fedsent.synth import PLANTED_GROUP_A, PLANTED_GROUP_B

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"
FIXTURES = Path(__file__).parent / "fixtures"


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def report_line(n, elapsed, detail):
    print(f"[criterion {n:>2}] PASS ({elapsed:6.2f}s) — {detail}")


def test_criterion_01_metric_oracle_from_published_counts():
    with Timer() as t:
        confusion = np.array([[1543, 16, 77], [64, 658, 54], [88, 14, 1090]])
        result = textclf.report_from_confusion(confusion)
        assert result.accuracy == pytest.approx(0.9132, abs=1e-4)
    assert t.elapsed < 1.0
    report_line(1, t.elapsed, f"confusion-matrix accuracy {result.accuracy:.6f} ≈ 0.9132")


def test_criterion_02_threshold_conformance():
    with Timer() as t:
        rng = np.random.RandomState(20220905)
        compounds = rng.uniform(-1.0, 1.0, size=10_000)
        # force exact boundary coverage alongside the random draw
        compounds[:4] = (0.05, -0.05, 0.049999, -0.049999)
        for compound in compounds:
            label = sentilex.label_from_score(float(compound))
            if compound >= 0.05:
                assert label is SentimentLabel.POSITIVE
            elif compound <= -0.05:
                assert label is SentimentLabel.NEGATIVE
            else:
                assert label is SentimentLabel.NEUTRAL
    assert t.elapsed < 1.0
    report_line(2, t.elapsed, "10,000 compounds partition exactly at ±0.05")


def test_criterion_03_reference_fixture_parity(lexicon, pre_config):
    with Timer() as t:
        records = []
        with open(FIXTURES / "vader_reference_fixture.jsonl", "r", encoding="utf-8") as fh:
            for line in fh:
                record = json.loads(line)
                if "_meta" not in record:
                    records.append(record)
        assert len(records) == 200
        raws = [
            RawComment(
                id=r["id"], channel="fixture", video_id="v0",
                published_at=datetime(2022, 9, 1, tzinfo=timezone.utc),
                text=r["text"],
            )
            for r in records
        ]
        ours = sentilex.label_corpus(raws, lexicon, emoji_map=pre_config.emoji_map)
        agree = 0
        max_delta = 0.0
        for record, scored in zip(records, ours):
            delta = abs(scored.score.compound - record["compound"])
            max_delta = max(max_delta, delta)
            assert delta <= 1e-3, f"{record['id']}: |Δcompound| = {delta}"
            agree += scored.label.json_name == record["label"]
        agreement = agree / len(records)
        assert agreement >= 0.99
    assert t.elapsed < 5.0
    report_line(3, t.elapsed,
                f"label agreement {agreement:.1%}, max |Δcompound| {max_delta:.2e}")


def test_criterion_04_lda_invariants(planted_docs):
    with Timer() as t:
        vocab = topicmodel.build_vocab(planted_docs, min_df=2)
        token_total = sum(len(d.tokens) for d in planted_docs)
        doc_lengths = [len(d.tokens) for d in planted_docs]
        sweeps_checked = []

        def conservation(sweep, ndk, nkw, nk):
            assert sum(nk) == token_total, f"sweep {sweep}: token total drifted"
            for d, row in enumerate(ndk):
                assert sum(row) == doc_lengths[d], f"sweep {sweep}: doc {d} count drifted"
            for k in range(2):
                assert sum(nkw[k]) == nk[k], f"sweep {sweep}: topic {k} count drifted"
            sweeps_checked.append(sweep)

        model = topicmodel.fit_lda(
            planted_docs, vocab, n_topics=2, iterations=500, seed=42,
            sweep_callback=conservation,
        )
        assert len(sweeps_checked) == 500

        assert np.abs(model.phi.sum(axis=1) - 1.0).max() < 1e-9
        assert np.abs(model.theta.sum(axis=1) - 1.0).max() < 1e-9

        refit = topicmodel.fit_lda(planted_docs, vocab, n_topics=2, iterations=500, seed=42)
        assert np.array_equal(model.phi, refit.phi)
        assert np.array_equal(model.theta, refit.theta)

        group_a = [vocab.index[t] for t in PLANTED_GROUP_A if t in vocab.index]
        group_b = [vocab.index[t] for t in PLANTED_GROUP_B if t in vocab.index]
        purities = []
        for k in range(2):
            mass_a = model.phi[k, group_a].sum()
            mass_b = model.phi[k, group_b].sum()
            purities.append(max(mass_a, mass_b))
        assert min(purities) >= 0.9
    assert t.elapsed < 30.0
    report_line(4, t.elapsed,
                f"500 conserved sweeps, bit-identical refit, purity {min(purities):.3f}")


def test_criterion_05_fedavg_algebra():
    with Timer() as t:
        config = textclf.TrainConfig()

        def model_of(value):
            return textclf.LinearModel(
                W=np.full((3, 2), float(value)), b=np.full(3, float(value)), config=config
            )

        rng = np.random.RandomState(0)
        random_model = textclf.LinearModel(W=rng.randn(3, 2), b=rng.randn(3), config=config)
        merged = fednet.fedavg([random_model] * 3, [7, 2, 11])
        assert np.abs(merged.W - random_model.W).max() <= 1e-12
        assert np.abs(merged.b - random_model.b).max() <= 1e-12

        weighted = fednet.fedavg([model_of(0), model_of(4)], [1, 3])
        assert np.abs(weighted.W - 3.0).max() <= 1e-12

        models = [
            textclf.LinearModel(W=rng.randn(3, 2), b=rng.randn(3), config=config)
            for _ in range(3)
        ]
        sizes = [3, 1, 6]
        base = fednet.fedavg(models, sizes)
        scaled = fednet.fedavg(
            [textclf.LinearModel(W=5.0 * m.W, b=5.0 * m.b, config=config) for m in models],
            sizes,
        )
        assert np.abs(scaled.W - 5.0 * base.W).max() <= 1e-12
        assert np.abs(scaled.b - 5.0 * base.b).max() <= 1e-12
    assert t.elapsed < 1.0
    report_line(5, t.elapsed, "idempotence, 1:3 weighted mean, scaling linearity ≤ 1e-12")


def test_criterion_06_degenerate_federation_equivalence(demo_features):
    space, train_fv, val_fv = demo_features
    with Timer() as t:
        config = textclf.TrainConfig(epochs=10, seed=42)
        federated = fednet.run_federated(
            train_fv, val_fv, n_clients=1, rounds=1, local_epochs=10,
            config=config, seed=42, n_features=space.size,
        )
        centralized = textclf.train(train_fv, config, n_features=space.size)
        central_report = textclf.evaluate(centralized, val_fv)
        assert np.array_equal(federated.final_model.W, centralized.W)
        assert np.array_equal(federated.final_model.b, centralized.b)
        assert federated.final_report.accuracy == central_report.accuracy
        assert federated.final_report.macro_f1 == central_report.macro_f1
        assert federated.final_report.weighted_f1 == central_report.weighted_f1
    assert t.elapsed < 30.0
    report_line(6, t.elapsed,
                f"N=1,R=1,E=10 bit-identical to centralized (acc {central_report.accuracy:.4f})")


def test_criterion_07_client_scaling_trend(big_features):
    space, train_fv, val_fv = big_features
    with Timer() as t:
        config = textclf.TrainConfig(seed=42)
        accuracy = {}
        for n_clients in (2, 4, 6):
            run = fednet.run_federated(
                train_fv, val_fv, n_clients=n_clients, rounds=20, local_epochs=2,
                config=config, seed=42, n_features=space.size,
            )
            accuracy[n_clients] = run.final_report.accuracy
        assert accuracy[2] >= accuracy[4] - 0.005, accuracy
        assert accuracy[4] >= accuracy[6] - 0.010, accuracy
    assert t.elapsed < 300.0
    report_line(7, t.elapsed,
                "N=2/4/6 accuracies "
                + " ≥ ".join(f"{accuracy[n]:.4f}" for n in (2, 4, 6))
                + " (tolerances 0.5pp, 1.0pp)")


def test_criterion_08_shapley_correctness(demo_features):
    space, train_fv, val_fv = demo_features
    with Timer() as t:
        rng = np.random.RandomState(11)
        config = textclf.TrainConfig()

        # exact linear vs brute force for d up to 12
        for d in (2, 5, 12):
            model = textclf.LinearModel(W=rng.randn(3, d), b=rng.randn(3), config=config)
            x_dense = rng.rand(d)
            x_dense /= max(1.0, np.linalg.norm(x_dense) * 1.01)
            x = textclf.FeatureVector(indices=tuple(range(d)), weights=tuple(x_dense))
            for label in textclf.CLASSES:
                value_fn = shapx.logit_value_fn(model, label)
                brute = shapx.shapley_brute(value_fn, d, x_dense, np.zeros(d))
                exact = shapx.shapley_exact_linear(model, x, label)
                for j in range(d):
                    assert abs(exact.phi[f"f{j}"] - brute[j]) <= 1e-12

        # permutation sampling vs brute force at d=10 (nonlinear value fn)
        W = rng.randn(3, 10)
        b = rng.randn(3)

        def prob_fn(v):
            logits = W @ v + b
            exp = np.exp(logits - logits.max())
            return float(exp[2] / exp.sum())

        x10 = rng.rand(10)
        brute10 = shapx.shapley_brute(prob_fn, 10, x10, np.zeros(10))
        sampled = shapx.shapley_sampled(prob_fn, 10, x10, np.zeros(10), samples=2000, seed=0)
        sample_gap = float(np.max(np.abs(sampled.phi - brute10)))
        assert sample_gap < 0.05

        # efficiency on every attribution emitted by the corpus explainer
        model = textclf.train(train_fv, textclf.TrainConfig(epochs=5), n_features=space.size)
        attributions, _ = shapx.explain_corpus(model, val_fv, space, subset=100, seed=1)
        worst = 0.0
        for attribution in attributions:
            gap = abs(
                sum(attribution.phi.values())
                - (attribution.prediction_value - attribution.baseline_value)
            )
            worst = max(worst, gap)
            assert gap <= 1e-6
    assert t.elapsed < 60.0
    report_line(8, t.elapsed,
                f"exact=brute ≤1e-12; sampled gap {sample_gap:.4f} < 0.05; "
                f"efficiency residual ≤ {worst:.2e} over {len(attributions)} attributions")


def test_criterion_09_gradient_check():
    with Timer() as t:
        rng = np.random.RandomState(3)
        worst = 0.0
        for _ in range(100):
            n, d = rng.randint(3, 8), rng.randint(2, 6)
            X = sparse.csr_matrix(rng.rand(n, d))
            y = rng.randint(0, 3, size=n)
            W = rng.randn(3, d)
            b = rng.randn(3)
            l2 = float(rng.choice([0.0, 1e-4, 1e-2]))
            _, gW, gb = textclf.loss_and_grad(W, b, X, y, l2)
            analytic = np.concatenate([gW.ravel(), gb.ravel()])
            numeric = np.empty_like(analytic)
            h = 1e-6

            def loss_at(Wf, bf):
                return textclf.loss_and_grad(Wf, bf, X, y, l2)[0]

            k = 0
            for i in range(3):
                for j in range(d):
                    Wp, Wm = W.copy(), W.copy()
                    Wp[i, j] += h
                    Wm[i, j] -= h
                    numeric[k] = (loss_at(Wp, b) - loss_at(Wm, b)) / (2 * h)
                    k += 1
            for i in range(3):
                bp, bm = b.copy(), b.copy()
                bp[i] += h
                bm[i] -= h
                numeric[k] = (loss_at(W, bp) - loss_at(W, bm)) / (2 * h)
                k += 1
            rel = np.linalg.norm(analytic - numeric) / max(
                np.linalg.norm(analytic), np.linalg.norm(numeric), 1e-12
            )
            worst = max(worst, rel)
            assert rel <= 1e-4
    assert t.elapsed < 10.0
    report_line(9, t.elapsed, f"100 random instances, worst relative error {worst:.2e}")


def test_criterion_10_end_to_end_pipeline(tmp_path):
    out = tmp_path / "run"
    args = [
        "pipeline",
        "--config", str(DATA / "pipeline.toml"),
        "--in", str(DATA / "synthetic_comments_1k.jsonl"),
        "--out", str(out),
    ]
    with Timer() as t:
        assert cli.main(args) == 0
    assert t.elapsed < 60.0

    payload = json.loads((out / "eval_report.json").read_text())
    supports = [sum(row) for row in payload["confusion"]]
    majority = max(supports) / sum(supports)
    margin = payload["accuracy"] - majority
    assert margin >= 0.10, f"accuracy {payload['accuracy']:.4f} vs majority {majority:.4f}"

    before = {
        p.relative_to(out): p.read_bytes()
        for p in out.rglob("*")
        if p.is_file() and p.name != "run_metadata.json"
    }
    assert cli.main(args) == 0
    for rel, blob in sorted(before.items()):
        assert (out / rel).read_bytes() == blob, f"{rel} not byte-identical on rerun"
    report_line(10, t.elapsed,
                f"pipeline {t.elapsed:.1f}s < 60s; accuracy {payload['accuracy']:.4f} "
                f"(majority +{margin * 100:.1f}pp); rerun byte-identical over "
                f"{len(before)} files")
