"""Decomposition contract and the concept-count policy."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle_weighting as oracle
from lsasum.errors import ConfigError, DataError
from lsasum.lsa import RANK_RTOL, DimensionPolicy, choose_k, decompose, with_dimension

matrix_shapes = st.tuples(st.integers(1, 12), st.integers(1, 9))


def random_matrix(shape, seed):
    return np.random.default_rng(seed).standard_normal(shape)


# ---------------------------------------------------------------------------
# decomposition invariants


@settings(max_examples=40, deadline=None)
@given(matrix_shapes, st.integers(0, 2**31 - 1))
def test_reconstruction_and_orthonormality(shape, seed):
    a = random_matrix(shape, seed)
    result = decompose(a)
    approx = result.u @ np.diag(result.sigma) @ result.vt
    scale = np.linalg.norm(a) or 1.0
    assert np.linalg.norm(a - approx) / scale <= 1e-8
    r = result.rank
    np.testing.assert_allclose(result.u.T @ result.u, np.eye(r), atol=1e-8)
    np.testing.assert_allclose(result.vt @ result.vt.T, np.eye(r), atol=1e-8)


@settings(max_examples=40, deadline=None)
@given(matrix_shapes, st.integers(0, 2**31 - 1))
def test_singular_values_positive_and_sorted(shape, seed):
    result = decompose(random_matrix(shape, seed))
    assert (result.sigma > 0).all()
    assert (np.diff(result.sigma) <= 0).all()
    assert result.k == result.rank


def test_known_singular_values():
    # A = [[3, 0], [4, 5]]: gram eigenvalues 45 and 5
    result = decompose(np.array([[3.0, 0.0], [4.0, 5.0]]))
    np.testing.assert_allclose(
        result.sigma, [np.sqrt(45.0), np.sqrt(5.0)], rtol=1e-12
    )


def test_diagonal_matrix():
    result = decompose(np.diag([4.0, 2.0, 1.0]))
    np.testing.assert_allclose(result.sigma, [4.0, 2.0, 1.0], rtol=1e-12)


def test_rank_deficient_matrix_keeps_exactly_r_values():
    rng = np.random.default_rng(42)
    for r in (1, 2, 3):
        left = np.linalg.qr(rng.standard_normal((8, r)))[0]
        right = np.linalg.qr(rng.standard_normal((6, r)))[0]
        a = left @ np.diag(np.arange(r, 0, -1.0)) @ right.T
        result = decompose(a)
        assert result.rank == r
        np.testing.assert_allclose(result.sigma, np.arange(r, 0, -1.0), atol=1e-10)


def test_zero_matrix_has_rank_zero():
    result = decompose(np.zeros((3, 4)))
    assert result.rank == 0
    assert result.k == 0
    assert result.u.shape == (3, 0)
    assert result.sigma.shape == (0,)
    assert result.vt.shape == (0, 4)


def test_empty_matrix():
    result = decompose(np.zeros((0, 5)))
    assert result.rank == 0
    assert result.vt.shape == (0, 5)


def test_non_finite_raises():
    with pytest.raises(DataError):
        decompose(np.array([[1.0, np.nan]]))


def test_one_dimensional_input_raises():
    with pytest.raises(DataError):
        decompose(np.ones(4))


# ---------------------------------------------------------------------------
# invariances


def test_permutation_leaves_singular_values_alone():
    a = random_matrix((7, 5), seed=9)
    base = decompose(a).sigma
    row_perm = np.random.default_rng(1).permutation(7)
    col_perm = np.random.default_rng(2).permutation(5)
    np.testing.assert_allclose(decompose(a[row_perm]).sigma, base, atol=1e-9)
    np.testing.assert_allclose(decompose(a[:, col_perm]).sigma, base, atol=1e-9)


def test_scaling_scales_singular_values_only():
    a = random_matrix((6, 4), seed=33)
    base = decompose(a)
    gaps = np.diff(base.sigma)
    assert (gaps < -1e-6).all(), "fixture needs distinct singular values"
    scaled = decompose(2.5 * a)
    np.testing.assert_allclose(scaled.sigma, 2.5 * base.sigma, rtol=1e-9)
    # singular vectors agree up to a consistent per-concept sign flip
    for i in range(base.rank):
        sign = np.sign(base.u[:, i] @ scaled.u[:, i])
        np.testing.assert_allclose(scaled.u[:, i], sign * base.u[:, i], atol=1e-8)
        np.testing.assert_allclose(scaled.vt[i], sign * base.vt[i], atol=1e-8)


def test_gram_oracle_agreement():
    for seed in range(8):
        shape = ((seed % 5) + 2, (seed % 3) + 2)
        a = random_matrix(shape, seed)
        sigma = decompose(a).sigma
        expected = oracle.gram_singular_values(a.tolist())
        assert len(expected) >= len(sigma)
        for got, want in zip(sigma, expected):
            assert got == pytest.approx(want, rel=1e-6, abs=1e-9)


def test_oracle_on_known_values():
    got = oracle.gram_singular_values([[3.0, 0.0], [4.0, 5.0]])
    np.testing.assert_allclose(got, [np.sqrt(45.0), np.sqrt(5.0)], rtol=1e-10)


# ---------------------------------------------------------------------------
# concept-count policy


def test_ratio_policy_worked_example():
    sigma = np.array([10.0, 6.0, 4.0, 1.0])
    assert choose_k(sigma, DimensionPolicy.ratio(0.5)) == 2


def test_ratio_policy_boundary_inclusive():
    sigma = np.array([10.0, 5.0, 4.9])
    assert choose_k(sigma, DimensionPolicy.ratio(0.5)) == 2


def test_ratio_one_keeps_ties_with_top():
    assert choose_k(np.array([5.0, 5.0, 3.0]), DimensionPolicy.ratio(1.0)) == 2


def test_fixed_policy_caps_at_rank():
    sigma = np.array([3.0, 2.0])
    assert choose_k(sigma, DimensionPolicy.fixed(1)) == 1
    assert choose_k(sigma, DimensionPolicy.fixed(2)) == 2
    assert choose_k(sigma, DimensionPolicy.fixed(7)) == 2


def test_policies_on_rank_zero():
    assert choose_k(np.zeros(0), DimensionPolicy.fixed(3)) == 0
    assert choose_k(np.zeros(0), DimensionPolicy.ratio(0.5)) == 0


def test_invalid_policies():
    sigma = np.array([1.0])
    with pytest.raises(ConfigError):
        choose_k(sigma, DimensionPolicy.fixed(0))
    with pytest.raises(ConfigError):
        choose_k(sigma, DimensionPolicy(kind="fixed", value=2.5))
    with pytest.raises(ConfigError):
        choose_k(sigma, DimensionPolicy.ratio(0.0))
    with pytest.raises(ConfigError):
        choose_k(sigma, DimensionPolicy.ratio(1.5))
    with pytest.raises(ConfigError):
        choose_k(sigma, DimensionPolicy(kind="elbow", value=1.0))


def test_default_policy_is_half_ratio():
    policy = DimensionPolicy.default()
    assert policy.kind == "ratio"
    assert policy.value == 0.5


def test_with_dimension_returns_adjusted_copy():
    result = decompose(np.diag([10.0, 6.0, 4.0, 1.0]))
    narrowed = with_dimension(result, DimensionPolicy.ratio(0.5))
    assert narrowed.k == 2
    assert result.k == 4  # original untouched
    np.testing.assert_array_equal(narrowed.sigma, result.sigma)


def test_rank_cutoff_is_relative():
    # second value sits below RANK_RTOL * sigma_1 and must be discarded
    a = np.diag([1.0, RANK_RTOL / 10.0])
    assert decompose(a).rank == 1
