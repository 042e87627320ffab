"""Point evaluation of causal operators at q-tuples of constants.

For a tuple ``c = (c_1, ..., c_q)`` of constants, ``c alpha`` lowers the level
by one, so on a depth-``L`` window every series in ``(c alpha)^n`` stops at
``n = L``.  The sum over words of a fixed length ``n`` is never enumerated:
it is the band ``n`` of the operator.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import ops
from .series import NotCausalError
from .tree import TreeWindow, as_word


def _require_causal(W: TreeWindow, S: np.ndarray, tol: float) -> None:
    if not ops.is_causal(W, S, tol):
        raise NotCausalError("operator is not causal")


def check_ctuple(W: TreeWindow, c: np.ndarray, tol: float = 0.0) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    if c.shape != (W.q, W.N, W.N):
        raise ValueError(f"expected a q-tuple of shape {(W.q, W.N, W.N)}, got {c.shape}")
    if not all(ops.is_constant(W, cj, tol) for cj in c):
        raise ValueError("q-tuple components must be level-block-diagonal")
    return c


@dataclass(frozen=True, eq=False)
class EvalPoint:
    """A q-tuple of constants together with the powers of ``c alpha``."""

    window: TreeWindow
    c: np.ndarray
    powers: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def calpha(self) -> np.ndarray:
        return self.powers[1]


def eval_point(W: TreeWindow, c) -> EvalPoint:
    if isinstance(c, EvalPoint):
        return c
    c = check_ctuple(W, c)
    ca = ops.c_alpha(W, c)
    powers = [np.eye(W.N, dtype=complex)]
    for _ in range(W.depth):
        powers.append(powers[-1] @ ca)
    return EvalPoint(W, c, tuple(powers))


def zero_point(W: TreeWindow) -> EvalPoint:
    return eval_point(W, np.zeros((W.q, W.N, W.N), dtype=complex))


def growth_rate(W: TreeWindow, c, n: int) -> float:
    """``||(c alpha)^n||^(1/n)``; a diagnostic, every window tuple is nilpotent."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = eval_point(W, c)
    if n > W.depth:
        return 0.0
    return ops.op_norm(p.powers[n]) ** (1.0 / n)


def point_eval(W: TreeWindow, S: np.ndarray, c, tol: float = 0.0) -> np.ndarray:
    """``S^(c) = sum_n (c alpha)^n band(S, n)``; the result is a constant."""
    _require_causal(W, S, tol)
    p = eval_point(W, c)
    out = np.zeros((W.N, W.N), dtype=complex)
    for n in range(W.depth + 1):
        out += p.powers[n] @ ops.band(W, S, n)
    return out


def alpha_star_c_star(W: TreeWindow, c) -> np.ndarray:
    """``alpha^* c^* = sum_j alpha_j^* c_j^*``, the adjoint of ``c alpha``."""
    return ops.adjoint(eval_point(W, c).calpha)


def cauchy_kernel(W: TreeWindow, c) -> np.ndarray:
    """``(I - alpha^* c^*)^{-1}`` as the finite Neumann sum."""
    p = eval_point(W, c)
    return sum(ops.adjoint(P) for P in p.powers)


def backward_shift(W: TreeWindow, F: np.ndarray, j: int, tol: float = 0.0) -> np.ndarray:
    """``A_j F = (F - F^(0)) alpha_j``."""
    _require_causal(W, F, tol)
    return (F - ops.band(W, F, 0)) @ ops.shift(W, j)


def backward_shift_word(W: TreeWindow, F: np.ndarray, v) -> np.ndarray:
    """``A^v F = A_{i_k} ... A_{i_1} F`` for ``v = i_1 ... i_k``."""
    for j in as_word(v):
        F = (F - ops.band(W, F, 0)) @ ops.shift(W, j)
    return F


def coeff_via_states(W: TreeWindow, F: np.ndarray, w, v, tol: float = 0.0) -> np.ndarray:
    """Recover ``F_[w] = w (C A^v F) v^*`` from backward shifts, ``|v| = |w|``."""
    w, v = as_word(w), as_word(v)
    if len(w) != len(v):
        raise ValueError("coeff_via_states needs |v| = |w|")
    _require_causal(W, F, tol)
    state = backward_shift_word(W, F, v)
    return ops.word_op(W, w) @ ops.band(W, state, 0) @ ops.adjoint(ops.word_op(W, v))


def separating_point(W: TreeWindow, w, t0=()) -> np.ndarray:
    """Nilpotent tuple along the path ``t0, t0 w_1, ..., t0 w``.

    ``c_j`` maps the node ``t0 w_k`` to itself exactly when ``j`` is the next
    letter of ``w``; then ``(c alpha)^{|w|} w^* S_[w]`` isolates ``S_[w]`` at
    ``t0``.
    """
    w, t0 = as_word(w), as_word(t0)
    c = np.zeros((W.q, W.N, W.N), dtype=complex)
    for k, j in enumerate(w):
        i = W.index[t0 + w[:k]]
        c[j - 1, i, i] = 1.0
    return c
