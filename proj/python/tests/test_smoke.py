# Copyright Contributors to the splatbench project
# SPDX-License-Identifier: Apache-2.0

import numpy as np
import pytest

import splatbench as sb


def random_cloud(n=256, seed=0):
    rng = np.random.default_rng(seed)
    points = rng.uniform(-1.0, 1.0, size=(n, 3))
    labels = (rng.uniform(size=n) > 0.7).astype(float)
    return points, labels


def test_golden_uniforms():
    expected = [line.strip() for line in open(_golden("rng_7_7_7.txt"))]
    got = sb.uniforms(7, 7, 7, 4)
    assert [float(x) for x in expected] == got


def _golden(name):
    import pathlib

    return pathlib.Path(__file__).resolve().parents[2] / "tests" / "golden" / name


def test_corrupt_counts():
    points, labels = random_cloud(2048)
    p, l = sb.corrupt(points, labels, "drop_global", 1, seed=3)
    assert p.shape == (1536, 3) and l.shape == (1536,)
    p, l = sb.corrupt(points, labels, "add_global", 5, seed=3)
    assert p.shape[0] == 2098
    assert np.all(l[2048:] == 0.0)
    assert np.all(np.linalg.norm(p[2048:], axis=1) <= 1.0)


def test_corrupt_is_deterministic():
    points, labels = random_cloud()
    a = sb.corrupt(points, labels, "jitter", 2, seed=9, sample_id=4)
    b = sb.corrupt(points, labels, "jitter", 2, seed=9, sample_id=4)
    assert np.array_equal(a[0], b[0])


def test_render_matches_reference():
    points, labels = random_cloud(200, seed=1)
    feats = np.stack([labels, 1.0 - labels], axis=1)
    tile = sb.render(points, labels, views=2, resolution=32, iso_scale=0.05, features=feats)
    ref = sb.render(points, labels, views=2, resolution=32, iso_scale=0.05, features=feats, reference=True)
    assert tile["color"].shape == (2, 1, 32, 32)
    assert tile["feature"].shape == (2, 2, 32, 32)
    for key in ("color", "depth", "alpha", "feature"):
        assert np.max(np.abs(tile[key] - ref[key])) <= 1e-5
    assert np.all((tile["alpha"] >= 0.0) & (tile["alpha"] <= 1.0))


def test_metrics():
    gt = np.array([0.0, 0.0, 1.0, 1.0])
    assert sb.auc(np.array([0.1, 0.2, 0.8, 0.9]), gt) == 1.0
    assert sb.aiou(gt, gt) == 1.0
    assert sb.mae(gt, gt) == 0.0
    report = sb.evaluate(np.full(4, 0.5), np.zeros(4))
    assert report["auc"] is None and "auc:undefined" in report["flags"]
    with pytest.raises(sb.Error):
        sb.auc(np.zeros(3), np.zeros(4))


def test_cloud_round_trip(tmp_path):
    points, labels = random_cloud(64)
    path = str(tmp_path / "c.pcaf")
    sb.write_cloud(path, points, labels)
    p, l = sb.read_cloud(path)
    assert np.array_equal(p, points.astype(np.float32).astype(float))
    assert np.array_equal(l, labels)


def test_dataset_totals():
    assert sb.total_pairings("PIAD-C") == 2474
    assert sb.total_pairings("LASO-C") == 2416


def test_cli_selftest_and_json():
    code, out, _ = sb.run_cli(["selftest"])
    assert code == 0 and out.count("PASS") == 3
    code, out, err = sb.run_cli(["corrupt", "--input", "/nonexistent.jsonl", "--out", "x"])
    assert code == 1 and "error" in err
