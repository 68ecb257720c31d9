import math

import somm


def test_version():
    assert somm.__version__ == "0.1.0"


def test_oversample_balances_binary_data():
    feats, labels = somm.generate_synthetic("sd1", n_majority=60, n_minority=10, seed=3)
    assert len(feats) == 70 and labels.count(1) == 10

    synth = somm.oversample(feats, labels, minority_label=1, method="somm", seed=5)
    assert len(synth) == 50
    assert all(len(row) == 2 and all(math.isfinite(v) for v in row) for row in synth)

    again = somm.oversample(feats, labels, minority_label=1, method="somm", seed=5)
    assert synth == again


def test_smote_rows_lie_between_minority_points():
    feats = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [5.0, 5.0], [6.0, 5.0]]
    labels = [1, 1, 1, 1, 0, 0]
    synth = somm.oversample(feats, labels, minority_label=1, method="smote", k=2, n=8, seed=1)
    assert len(synth) == 8
    for x, y in synth:
        assert -1e-9 <= x <= 1.0 + 1e-9 and -1e-9 <= y <= 1.0 + 1e-9


def test_balance_multiclass_counts():
    feats, labels = somm.generate_synthetic("sd3", n_majority=30, n_minority=12, seed=9)
    out_feats, out_labels = somm.balance(feats, labels, seed=2)
    assert out_labels.count(0) == out_labels.count(1) == 30
    assert out_feats[: len(feats)] == feats


def test_metrics():
    assert somm.g_mean([0, 0, 1, 1], [0, 0, 1, 0]) == math.sqrt(0.5)
    assert somm.mg([0, 1, 2], [0, 1, 2], n_classes=3) == 1.0
    assert abs(somm.imbalance_ratio([431, 220, 195]) - 2.2976) < 1e-3

    u, p = somm.mann_whitney_u([1.0, 2.0, 3.0], [10.0, 20.0, 30.0])
    assert u == 0.0 and 0.0 < p < 0.15

    cov = somm.covdiv([[0.05], [0.95]], [[0.07]], cells=10)
    assert cov == 0.5
