"""End-to-end smoke tests for the Python bindings."""

import math
import random

import pytest

import kdda


def blobs(centers, per_class=8, spread=0.3, seed=7):
    """Well-separated Gaussian clusters labeled 1..len(centers)."""
    rng = random.Random(seed)
    samples, labels = [], []
    for label, center in enumerate(centers, start=1):
        for _ in range(per_class):
            samples.append([c + spread * rng.gauss(0.0, 1.0) for c in center])
            labels.append(label)
    return samples, labels


def test_version_string():
    assert kdda.__version__ == "0.1.0"


def test_make_rings_shape_and_radii():
    samples, labels = kdda.make_rings(classes=3, per_class=10, noise=0.0, seed=4)
    assert len(samples) == 30
    assert sorted(set(labels)) == [1, 2, 3]
    for point, label in zip(samples, labels):
        assert len(point) == 2
        assert math.hypot(*point) == pytest.approx(label, abs=1e-9)


def test_split_per_class_is_deterministic_and_disjoint():
    samples, labels = kdda.make_rings(classes=3, per_class=8, noise=0.1, seed=2)
    train_x, train_y, test_x, test_y = kdda.split_per_class(
        samples, labels, k_train=5, seed=11, repeat=0
    )
    assert len(train_x) == 15 and len(test_x) == 9
    for cls in (1, 2, 3):
        assert train_y.count(cls) == 5
        assert test_y.count(cls) == 3
    train_keys = {tuple(x) for x in train_x}
    test_keys = {tuple(x) for x in test_x}
    assert not train_keys & test_keys

    again = kdda.split_per_class(samples, labels, k_train=5, seed=11, repeat=0)
    assert again[0] == train_x and again[2] == test_x


def test_kdda_features_plus_ovr_classify_blobs():
    samples, labels = blobs([(0.0, 0.0), (10.0, 0.0), (0.0, 10.0)])
    model = kdda.kdda_fit(samples, labels, kernel="rbf", sigma2=8.0)
    assert model.m_features == 2
    assert not model.m_clamped

    features = model.transform_many(samples)
    assert all(len(f) == 2 for f in features)
    classifier = kdda.ovr_train(features, labels, kernel="rbf", sigma2=1.0, c=10.0)
    assert classifier.num_classes == 3
    assert classifier.predict_many(features) == labels


def test_pairwise_matches_labels_on_blobs():
    samples, labels = blobs([(0.0, 0.0), (8.0, 0.0), (0.0, 8.0)])
    model = kdda.pairwise_train(samples, labels, kernel="linear", c=10.0)
    assert model.n_pairs == 3
    assert [model.predict(x) for x in samples] == labels


def test_nearest_neighbor_baseline():
    model = kdda.nn_train([[0.0], [10.0]], [1, 2])
    assert model.predict([4.0]) == 1
    assert model.predict([6.0]) == 2


def test_svm_two_point_solution():
    model = kdda.svm_train([[1.0], [3.0]], [-1, 1], kernel="linear", tol=1e-6)
    assert model.converged
    assert model.n_support == 2
    assert model.decision([1.0]) == pytest.approx(-1.0, abs=1e-5)
    assert model.decision([3.0]) == pytest.approx(1.0, abs=1e-5)
    assert model.decision([2.0]) == pytest.approx(0.0, abs=1e-5)


def test_kpca_variances_are_descending():
    samples, _ = blobs([(0.0, 0.0), (6.0, 2.0)], per_class=10)
    model = kdda.kpca_fit(samples, kernel="linear", features=2)
    assert model.m_features == 2
    assert not model.degenerate
    variances = model.component_variances
    assert variances[0] >= variances[1] > 0.0
    assert len(model.transform(samples[0])) == 2


def test_model_persistence_round_trip(tmp_path):
    samples, labels = blobs([(0.0, 0.0), (6.0, 0.0)], per_class=6)
    extractor = kdda.kdda_fit(samples, labels, kernel="rbf", sigma2=4.0)
    extractor_path = str(tmp_path / "extractor.bin")
    kdda.save_kdda_model(extractor_path, extractor)
    reloaded = kdda.load_kdda_model(extractor_path)
    assert reloaded.transform(samples[0]) == extractor.transform(samples[0])

    svm = kdda.svm_train(samples, [1] * 6 + [-1] * 6, kernel="rbf", sigma2=4.0)
    svm_path = str(tmp_path / "svm.bin")
    kdda.save_svm_model(svm_path, svm)
    assert kdda.load_svm_model(svm_path).decision(samples[0]) == svm.decision(
        samples[0]
    )

    # Wrong kind and missing file surface as OSError.
    with pytest.raises(OSError):
        kdda.load_svm_model(extractor_path)
    with pytest.raises(OSError):
        kdda.load_kdda_model(str(tmp_path / "missing.bin"))


def test_invalid_input_raises_value_error():
    with pytest.raises(ValueError):
        kdda.svm_train([[0.0], [1.0]], [1, 1], kernel="linear")  # one class
    with pytest.raises(ValueError):
        kdda.kdda_fit([[0.0], [1.0]], [0, 1])  # labels must start at 1
    with pytest.raises(ValueError):
        kdda.kpca_fit([[0.0], [1.0]], features=0)
    with pytest.raises(ValueError):
        kdda.make_rings(classes=1)


def test_run_config_reports_cells():
    config = """
        dataset = rings
        rings.classes = 3
        rings.per_class = 8
        rings.noise = 0.05
        extractor = kdda
        extractor.kernel = rbf
        extractor.sigma2 = 2
        features = 2
        classifier = svm-ovr
        svm.kernel = rbf
        svm.sigma2 = 1
        svm.c = 10
        k_train = 4
        repeats = 2
        seed = 7
    """
    rows = kdda.run_config(config)
    assert len(rows) == 1
    row = rows[0]
    assert row["k_train"] == 4
    assert row["method"] == "kdda+svm-ovr"
    assert row["repeats"] == 2
    assert row["failures"] == []
    assert 0.0 <= row["mean_rate"] <= 1.0
    assert row["stddev"] >= 0.0

    with pytest.raises(ValueError):
        kdda.run_config("not a config")
