import numpy as np
import pytest

from treeschur import ops
from treeschur.evaluation import (alpha_star_c_star, backward_shift, cauchy_kernel, check_ctuple,
                                  coeff_via_states, eval_point, growth_rate, point_eval,
                                  separating_point, zero_point)
from treeschur.instances import random_causal, random_constant, random_ctuple
from treeschur.series import NotCausalError, causal_expand
from treeschur.tree import make_window, words_of_length


def test_nilpotent(window, rng):
    p = eval_point(window, random_ctuple(window, rng))
    assert not np.any(p.powers[-1] @ p.calpha)
    for n, P in enumerate(p.powers):
        assert ops.is_causal(window, ops.adjoint(P))
        assert not np.any(P - ops.band(window, P, -n))


def test_growth_rate(w23, rng):
    W = w23
    assert growth_rate(W, zero_point(W), 2) == 0
    assert growth_rate(W, random_ctuple(W, rng), W.depth + 1) == 0
    P = make_window(1, 5)
    lam = 0.7 - 0.2j
    c = lam * np.eye(P.N)[None]
    for n in range(1, P.depth + 1):
        assert np.isclose(growth_rate(P, c, n), abs(lam))


def test_point_eval_at_zero(w23, rng):
    S = random_causal(w23, rng)
    np.testing.assert_array_equal(point_eval(w23, S, zero_point(w23)), ops.band(w23, S, 0))


def test_point_eval_of_word_adjoint(w23, rng):
    W = w23
    c = random_ctuple(W, rng)
    p = eval_point(W, c)
    for w in [(1,), (2, 1), (1, 2, 2)]:
        ws = ops.adjoint(ops.word_op(W, w))
        np.testing.assert_allclose(point_eval(W, ws, c), p.powers[len(w)] @ ws, atol=1e-15)


def test_point_eval_requires_causal(w22, rng):
    with pytest.raises(NotCausalError):
        point_eval(w22, ops.shift(w22, 1), random_ctuple(w22, rng))


def test_ctuple_validation(w22):
    with pytest.raises(ValueError):
        check_ctuple(w22, np.zeros((3, w22.N, w22.N)))
    bad = np.zeros((2, w22.N, w22.N), dtype=complex)
    bad[0] = ops.shift_adjoint(w22, 1)
    with pytest.raises(ValueError):
        check_ctuple(w22, bad)


def test_cauchy_kernel(w23, rng):
    W = w23
    np.testing.assert_array_equal(cauchy_kernel(W, zero_point(W)), np.eye(W.N))
    c = random_ctuple(W, rng)
    K = cauchy_kernel(W, c)
    np.testing.assert_allclose((np.eye(W.N) - alpha_star_c_star(W, c)) @ K, np.eye(W.N), atol=1e-12)


def test_cauchy_pairing(w23, rng):
    W = w23
    for _ in range(10):
        F, c, k = random_causal(W, rng), random_ctuple(W, rng), random_constant(W, rng)
        lhs = ops.hs_inner(point_eval(W, F, c), k)
        rhs = ops.hs_inner(F, cauchy_kernel(W, c) @ k)
        assert abs(lhs - rhs) <= 1e-10


def test_multiplicativity(w23, rng):
    W = w23
    for _ in range(10):
        F, G, c = random_causal(W, rng), random_causal(W, rng), random_ctuple(W, rng)
        lhs = point_eval(W, F @ G, c)
        rhs = point_eval(W, point_eval(W, F, c) @ G, c)
        assert np.abs(lhs - rhs).max() <= 1e-10


def test_backward_shift_examples(w23, rng):
    W = w23
    assert not np.any(backward_shift(W, np.eye(W.N), 1))
    a1s = ops.shift_adjoint(W, 1)
    np.testing.assert_array_equal(backward_shift(W, a1s, 1), a1s @ ops.shift(W, 1))
    F, G = random_causal(W, rng), random_causal(W, rng)
    for j in (1, 2):
        lhs = ops.hs_inner(backward_shift(W, F, j), G)
        rhs = ops.hs_inner(F, G @ ops.shift_adjoint(W, j))
        assert abs(lhs - rhs) <= 1e-12


def test_coeff_via_states_examples(w22, rng):
    W = w22
    np.testing.assert_array_equal(coeff_via_states(W, np.eye(W.N), (), ()), np.eye(W.N))
    a1s = ops.shift_adjoint(W, 1)
    np.testing.assert_array_equal(coeff_via_states(W, a1s, (1,), (1,)), causal_expand(W, a1s)[(1,)])
    F = random_causal(W, rng)
    C = causal_expand(W, F)
    for n in range(3):
        for w in words_of_length(2, n):
            for v in words_of_length(2, n):
                np.testing.assert_allclose(coeff_via_states(W, F, w, v), C[w], atol=1e-12)
    with pytest.raises(ValueError):
        coeff_via_states(W, F, (1,), ())


def test_separating_point(w23):
    W = w23
    # an operator whose only coefficient sits at one node of a deep word
    w = (2, 1)
    t0 = (1,)
    S = np.zeros((W.N, W.N), dtype=complex)
    S[W.index[t0 + w], W.index[t0]] = 1.0
    c = separating_point(W, w, t0)
    assert check_ctuple(W, c) is not None
    value = point_eval(W, S, c)
    assert value[W.index[t0], W.index[t0]] == 1.0
    # a generic point built for another path misses it
    assert not np.any(point_eval(W, S, separating_point(W, (1, 1), t0)))
