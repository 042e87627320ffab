import numpy as np
import pytest

from treeschur import ops
from treeschur.blaschke import (blaschke_data, blaschke_factor, blocks, factorize, l_c,
                                make_annihilating, neumann_inverse, psd_sqrt, r_c)
from treeschur.evaluation import cauchy_kernel, point_eval, zero_point
from treeschur.instances import random_causal, random_ctuple


def column(W, rng):
    return np.concatenate([random_causal(W, rng) for _ in range(W.q)])


def test_r_c_at_zero(w23):
    np.testing.assert_array_equal(r_c(w23, zero_point(w23)), np.eye(w23.N))


def test_r_c_cross_check(w23, rng):
    W = w23
    c = random_ctuple(W, rng)
    assert np.abs(r_c(W, c) - point_eval(W, cauchy_kernel(W, c), c)).max() <= 1e-12


def test_r_c_identity_and_bound(w23, rng):
    W = w23
    c = random_ctuple(W, rng)
    R = r_c(W, c)
    al, crow = ops.alpha_column(W), ops.c_row(c)
    res = R - np.eye(W.N) - crow @ al @ R @ ops.adjoint(al) @ ops.adjoint(crow)
    assert np.abs(ops.compress(W, res, 1)).max() <= 1e-10
    assert np.linalg.eigvalsh(R).min() >= 1 - 1e-10


def test_l_c_at_zero(w23):
    W = w23
    P = ops.level_projection(W, 0, W.depth - 1)
    np.testing.assert_allclose(l_c(W, zero_point(W)), np.kron(np.eye(2), P), atol=0)


def test_l_c_identities(w23, rng):
    W = w23
    B = blaschke_data(W, random_ctuple(W, rng))
    al, crow = ops.alpha_column(W), ops.c_row(B.c)
    inv = ops.adjoint(crow) @ crow + al @ B.R_c_inv @ ops.adjoint(al)
    assert np.abs(ops.compress(W, B.L_c @ inv - np.eye(2 * W.N), 1)).max() <= 1e-9
    lhs = crow @ B.L_c
    rhs = B.R_c_inv @ crow @ al @ B.R_c @ ops.adjoint(al)
    assert np.abs(ops.compress(W, lhs - rhs, 1)).max() <= 1e-9
    assert np.linalg.eigvalsh(B.L_c).min() >= -1e-10


def test_blaschke_factor_at_zero(w23):
    # reduces to the row of shift adjoints on levels <= L-1
    W = w23
    P = ops.level_projection(W, 0, W.depth - 1)
    expected = ops.adjoint(ops.alpha_column(W)) @ np.kron(np.eye(2), P)
    np.testing.assert_allclose(blaschke_factor(W, zero_point(W)), expected, atol=1e-15)


def test_blaschke_isometry_and_annihilation(window, rng):
    W = window
    B = blaschke_data(W, random_ctuple(W, rng))
    gram = ops.adjoint(B.B_c) @ B.B_c - np.eye(W.q * W.N)
    assert np.abs(ops.compress(W, gram, 1)).max() <= 1e-8
    for j in range(1, W.q + 1):
        assert ops.is_causal(W, B.block(j))
    assert np.abs(point_eval(W, B.B_c @ column(W, rng), B.point)).max() <= 1e-9


def test_make_annihilating(w23, rng):
    W = w23
    H = random_causal(W, rng)
    np.testing.assert_allclose(make_annihilating(W, H, zero_point(W)), H - ops.band(W, H, 0), atol=0)
    c = random_ctuple(W, rng)
    F = make_annihilating(W, H, c)
    assert np.abs(point_eval(W, F, c)).max() <= 1e-12
    np.testing.assert_allclose(make_annihilating(W, F, c), F, atol=1e-12)


def test_factorize_at_zero(w23, rng):
    W = w23
    F = random_causal(W, rng)
    F = F - ops.band(W, F, 0)
    G = factorize(W, F, zero_point(W))
    np.testing.assert_allclose(G, ops.alpha_column(W) @ F, atol=1e-15)
    P = ops.level_projection(W, 0, W.depth - 1)
    np.testing.assert_allclose(P @ ops.adjoint(ops.alpha_column(W)) @ G, P @ F, atol=1e-15)


def test_factorize_roundtrip(w23, rng):
    W = w23
    B = blaschke_data(W, random_ctuple(W, rng))
    for F in (B.B_c @ column(W, rng), make_annihilating(W, random_causal(W, rng), B.point)):
        G = factorize(W, F, B.point, B)
        assert all(ops.is_causal(W, X) for X in blocks(W, G))
        assert np.abs(ops.compress(W, B.B_c @ G - F, 2)).max() <= 1e-7
        assert abs(ops.hs_norm(G) - ops.hs_norm(F)) <= 1e-7


def test_factorize_rejects_nonvanishing(w22, rng):
    with pytest.raises(ValueError):
        factorize(w22, np.eye(w22.N, dtype=complex), random_ctuple(w22, rng))


def test_psd_sqrt(rng):
    X = rng.standard_normal((5, 3))
    A = X @ X.T
    r = psd_sqrt(A)
    np.testing.assert_allclose(r @ r, A, atol=1e-12)
    ri = psd_sqrt(A, inverse=True)
    P = A @ np.linalg.pinv(A)
    np.testing.assert_allclose(ri @ r, P, atol=1e-10)


def test_neumann_inverse(w22):
    T = ops.shift_adjoint(w22, 1)
    np.testing.assert_allclose(neumann_inverse(T, w22.depth) @ (np.eye(w22.N) - T), np.eye(w22.N), atol=0)
