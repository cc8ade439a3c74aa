import numpy as np
import pytest

import nlssc


def test_generate_and_cluster():
    x, labels = nlssc.generate_synthetic("2x2@10,n=15,noise=0.02", seed=3)
    assert x.shape == (30, 10)
    assert sorted(set(labels)) == [1, 2]

    out = nlssc.cluster(x, labels=labels, lambda_=10, k=3, n_clusters=2, repeats=3)
    res = out["results"]
    assert res["converged"]
    assert res["ce"] <= 0.1
    gamma = out["code"]
    assert gamma.shape == (30, 30)
    assert gamma.min() >= 0
    np.testing.assert_allclose(np.diag(gamma), 0)
    np.testing.assert_allclose(gamma.sum(axis=0), 1, atol=1e-8)
    assert len(out["assignments"]) == 3


def test_admm_solve_feasible():
    x, _ = nlssc.generate_synthetic("2x2@8,n=10,noise=0.05", seed=1)
    gram = nlssc.build_gram(x)
    np.testing.assert_allclose(gram, x @ x.T, atol=1e-12)
    gamma, report = nlssc.admm_solve(gram, k=3, mu=0.3)
    assert report["converged"]
    assert max(report["final_residuals"]) <= 1e-4
    np.testing.assert_allclose(gamma.sum(axis=0), 1, atol=1e-8)


def test_precomputed_gram_matches_linear():
    x, labels = nlssc.generate_synthetic("2x2@10,n=12,noise=0.02", seed=5)
    opts = dict(lambda_=10, k=3, n_clusters=2, repeats=2)
    a = nlssc.cluster(x, labels=labels, **opts)
    b = nlssc.cluster(gram=x @ x.T, labels=labels, mode="nlkssc", kernel="precomputed", **opts)
    np.testing.assert_allclose(a["code"], b["code"], atol=1e-6)


def test_numerics_and_metrics():
    np.testing.assert_array_equal(nlssc.svt(np.diag([3.0, 1.0]), 2.0), np.diag([1.0, 0.0]))
    rng = np.random.default_rng(0)
    a = rng.normal(size=(5, 5))
    a = a @ a.T + np.eye(5)
    b = np.eye(3) * 2
    c = rng.normal(size=(5, 3))
    xs = nlssc.sylvester_solve(a, b, c)
    np.testing.assert_allclose(a @ xs + xs @ b, c, atol=1e-10)
    assert nlssc.clustering_error([1, 1, 2, 2], [1, 2, 2, 2]) == 0.25
    assert nlssc.nmi([1, 1, 2], [1, 1, 2]) == 1.0


def test_errors_map_to_python():
    x, _ = nlssc.generate_synthetic("2x2@5,n=6", seed=0)
    with pytest.raises(nlssc.InputError):
        nlssc.cluster(x, lambda_=-1)
    with pytest.raises(ValueError):
        nlssc.cluster(x, no_such_option=1)
    with pytest.raises(ValueError):
        nlssc.build_gram(-np.abs(x) - 1, kernel="hik")
