import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gustsurf.errors import DegenerateColumn, DimensionMismatch
from gustsurf.features import (
    FeatureMap,
    build_feature_map,
    canonical_terms,
    destandardize,
    expand,
    expand_all,
    term_count,
)


@pytest.mark.parametrize("d,D", [(20, 231), (1, 3), (3, 10)])
def test_term_counts(d, D):
    assert term_count(d) == D
    assert len(canonical_terms(d)) == D


def test_term_count_formula_range():
    for d in range(1, 65):
        assert len(canonical_terms(d)) == (d * d + 3 * d + 2) // 2


def test_canonical_order():
    assert canonical_terms(2) == ((), (0,), (1,), (0, 0), (0, 1), (1, 1))


def test_expand_at_means_and_enumerated_case():
    pts = np.random.default_rng(0).normal(size=(30, 4))
    fmap = build_feature_map(pts)
    phi = expand(fmap, fmap.means)
    assert phi[0] == 1.0 and np.all(phi[1:] == 0.0)
    unit = FeatureMap(("a", "b"), np.zeros(2), np.ones(2))
    np.testing.assert_array_equal(expand(unit, np.array([1.0, 2.0])), [1, 1, 2, 1, 2, 4])
    assert unit.descriptors() == ["1", "x:a", "x:b", "x:a*x:a", "x:a*x:b", "x:b*x:b"]


def _naive(fmap, x):
    z = [(x[i] - fmap.means[i]) / fmap.scales[i] for i in range(fmap.d)]
    out = [1.0] + z
    for i in range(fmap.d):
        for j in range(i, fmap.d):
            out.append(z[i] * z[j])
    return np.array(out)


def test_expand_matches_naive_loop():
    rng = np.random.default_rng(1)
    pts = rng.uniform(-5, 50, size=(40, 7))
    fmap = build_feature_map(pts)
    for _ in range(20):
        x = rng.uniform(-5, 50, size=7)
        np.testing.assert_allclose(expand(fmap, x), _naive(fmap, x), rtol=1e-12, atol=1e-12)


def test_expand_all_rows_and_shape():
    rng = np.random.default_rng(2)
    pts = rng.normal(size=(1560, 20))
    fmap = build_feature_map(pts)
    phi = expand_all(fmap, pts)
    assert phi.shape == (1560, 231)
    assert np.all(phi[:, 0] == 1.0)
    np.testing.assert_array_equal(expand_all(fmap, pts[:1])[0], expand(fmap, pts[0]))
    lin = phi[:, 1:21]
    np.testing.assert_allclose(lin.mean(axis=0), 0.0, atol=1e-10)
    np.testing.assert_allclose(lin.var(axis=0, ddof=1), 1.0, atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 1000), st.integers(2, 6))
def test_permutation_consistency(seed, d):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(12, d))
    perm = rng.permutation(d)
    a = expand(build_feature_map(pts), pts[3])
    b = expand(build_feature_map(pts[:, perm]), pts[3, perm])
    np.testing.assert_allclose(np.sort(a), np.sort(b), rtol=1e-12, atol=1e-14)


def test_errors():
    pts = np.random.default_rng(3).normal(size=(10, 3))
    pts[:, 1] = 4.0
    with pytest.raises(DegenerateColumn):
        build_feature_map(pts)
    fmap = build_feature_map(np.random.default_rng(3).normal(size=(10, 3)))
    with pytest.raises(DimensionMismatch):
        expand(fmap, np.zeros(4))
    with pytest.raises(DimensionMismatch):
        expand_all(fmap, np.zeros((2, 2)))


def test_destandardize_reproduces_predictions():
    rng = np.random.default_rng(4)
    pts = rng.uniform([100, 0.5, 1e4], [200, 0.9, 3e4], size=(50, 3))
    fmap = build_feature_map(pts, ("a", "b", "c"))
    support = [0, 1, 3, 4, 6, 9]
    coef = rng.normal(size=len(support))
    raw = destandardize(fmap, support, coef)
    x = rng.uniform([100, 0.5, 1e4], [200, 0.9, 3e4])
    want = expand(fmap, x)[support] @ coef
    unit = FeatureMap(fmap.names, np.zeros(3), np.ones(3))
    labels = unit.descriptors()
    raw_phi = expand(unit, x)
    got = sum(raw[lab] * raw_phi[labels.index(lab)] for lab in raw)
    assert got == pytest.approx(want, rel=1e-9)
