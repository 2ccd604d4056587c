"""Smoke tests for the ldts python module."""

import math

import numpy as np
import pytest

import ldts


def test_pacing_fraction_boundaries():
    assert ldts.pacing_fraction("linear", 0.2, 100, 0) == 0.2
    assert ldts.pacing_fraction("linear", 0.2, 100, 100) == 1.0
    assert ldts.pacing_fraction("root", 0.2, 100, 50) == pytest.approx(
        math.sqrt(0.04 + 0.96 * 0.5), abs=1e-14
    )
    assert ldts.pacing_fraction("geom", 0.25, 100, 50) == pytest.approx(0.5, abs=1e-14)
    table = ldts.pacing_table("linear", 0.25, 10)
    assert len(table) == 11
    assert table == sorted(table)


def test_pacing_rejects_bad_config():
    with pytest.raises(ValueError):
        ldts.pacing_fraction("linear", 0.0, 100, 0)
    with pytest.raises(ValueError):
        ldts.pacing_fraction("cubic", 0.5, 100, 0)


def test_sample_count():
    assert ldts.sample_count(10, 1.0) == 10
    assert ldts.sample_count(10, 0.35) == 3
    assert ldts.sample_count(5, 0.01) == 1


def test_loss_decrease_and_probability():
    decrease = ldts.loss_decrease([1.0, 0.5], [0.4, 0.5])
    assert decrease == [pytest.approx(0.6), pytest.approx(0.0)]

    probs = ldts.to_probability([math.log(2.0), 0.0])
    assert probs[0] == pytest.approx(2.0 / 3.0, abs=1e-14)
    assert probs[1] == pytest.approx(1.0 / 3.0, abs=1e-14)
    assert sum(probs) == pytest.approx(1.0, abs=1e-12)

    assert ldts.easiest_by_absolute_loss([0.9, 0.1, 0.5], 1) == [1]
    assert ldts.easiest_by_absolute_loss([0.5, 0.5, 0.9], 1) == [0]


def test_sampler_determinism():
    probs = [0.1, 0.2, 0.3, 0.4]
    first = ldts.sample_without_replacement(probs, 2, seed=9)
    second = ldts.sample_without_replacement(probs, 2, seed=9)
    assert first == second
    assert len(first) == 2
    assert ldts.sample_without_replacement(probs, 4, seed=1) == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        ldts.sample_without_replacement(probs, 5, seed=1)


def test_dataset_generation_and_aggregation(tmp_path):
    ds = ldts.generate_synthetic(n=200, classes=4, dim=6, noise=0.3, seed=7)
    assert ds.node_count() == 200
    assert ds.class_count == 4
    assert ds.features.shape == (200, 6)
    assert len(ds.split_indices("train")) == 120
    assert sum(ds.noisy_flags) == round(0.3 * 120)

    aggregated = ldts.aggregate_features(ds)
    assert aggregated.shape == (200, 6 * (1 + len(ds.relations)))
    np.testing.assert_array_equal(aggregated[:, :6], ds.features)

    ds.save(tmp_path / "ds")
    loaded = ldts.Dataset.load(tmp_path / "ds")
    np.testing.assert_array_equal(loaded.features, ds.features)
    assert loaded.labels == ds.labels
    assert loaded.split == ds.split


def test_train_and_evaluate(tmp_path):
    ds = ldts.generate_synthetic(n=300, classes=3, dim=8, noise=0.2, seed=3)
    result = ldts.train(
        ds,
        strategy="ldts",
        lambda0=0.25,
        epochs_to_full=15,
        max_epochs=40,
        patience=5,
        seed=1,
    )
    assert not result.diverged
    assert 0.0 <= result.best_val_accuracy <= 1.0
    assert len(result.reports) >= 16
    assert result.reports[0].sampled_count < result.reports[-1].sampled_count

    again = ldts.train(
        ds,
        strategy="ldts",
        lambda0=0.25,
        epochs_to_full=15,
        max_epochs=40,
        patience=5,
        seed=1,
    )
    assert again.best_val_accuracy == result.best_val_accuracy
    assert again.test_at_best_val == result.test_at_best_val

    accuracy = ldts.evaluate(result.params, ds, "val")
    assert accuracy == pytest.approx(result.best_val_accuracy)

    checkpoint = tmp_path / "model.ckpt"
    result.params.save(checkpoint)
    loaded = ldts.ModelParams.load(checkpoint)
    np.testing.assert_array_equal(loaded.w1, result.params.w1)
    assert ldts.evaluate(loaded, ds, "test") == ldts.evaluate(
        result.params, ds, "test"
    )


def test_degenerate_curriculum_equals_plain():
    ds = ldts.generate_synthetic(n=250, classes=3, dim=8, seed=5)
    shared = dict(epochs_to_full=8, max_epochs=30, patience=4, seed=9)
    plain = ldts.train(ds, strategy="plain", **shared)
    degenerate = ldts.train(ds, strategy="ldts", lambda0=1.0, **shared)
    assert plain.best_val_accuracy == degenerate.best_val_accuracy
    assert plain.test_at_best_val == degenerate.test_at_best_val
