"""Power series representations of window operators.

Two expansions are provided.  The two-index form writes any operator as a sum
of ``w1^* w2 D`` over irreducible word pairs with diagonal coefficients ``D``;
the causal form writes a causal operator as ``sum_w w^* S_[w]`` with constant
(level-block-diagonal) coefficients.  Both are exact rearrangements of the
matrix entries, so round trips lose nothing.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import ops
from .tree import TreeWindow, Word, as_word, decompose, is_reducible, words_of_length


class NotCausalError(ValueError):
    pass


@dataclass(frozen=True)
class TwoIndexRep:
    """Diagonal coefficients keyed by irreducible pairs; absent keys are zero."""

    window: TreeWindow
    coeffs: dict[tuple[Word, Word], np.ndarray] = field(default_factory=dict)


@dataclass(frozen=True)
class CausalSeries:
    """Constant coefficients ``S_[w]`` keyed by words; absent keys are zero.

    ``S_[w]`` is supported on levels ``<= depth - |w|``.
    """

    window: TreeWindow
    coeffs: dict[Word, np.ndarray] = field(default_factory=dict)

    def __getitem__(self, w) -> np.ndarray:
        w = as_word(w)
        if w in self.coeffs:
            return self.coeffs[w]
        return np.zeros((self.window.N, self.window.N), dtype=complex)


def two_index_rep(W: TreeWindow, S: np.ndarray) -> TwoIndexRep:
    coeffs: dict[tuple[Word, Word], np.ndarray] = {}
    rows, cols = np.nonzero(S)
    for a, b in zip(rows, cols):
        t, s = W.nodes[a], W.nodes[b]
        _, w1, w2 = decompose(t, s)
        D = coeffs.setdefault((w1, w2), np.zeros((W.N, W.N), dtype=complex))
        D[b, b] = S[a, b]
    return TwoIndexRep(W, coeffs)


def two_index_reconstruct(R: TwoIndexRep) -> np.ndarray:
    W = R.window
    out = np.zeros((W.N, W.N), dtype=complex)
    for (w1, w2), D in R.coeffs.items():
        if is_reducible(w1, w2):
            raise ValueError(f"reducible key pair {w1}|{w2}")
        out += ops.adjoint(ops.word_op(W, w1)) @ ops.word_op(W, w2) @ D
    return out


def causal_expand(W: TreeWindow, S: np.ndarray, tol: float = 0.0) -> CausalSeries:
    """Coefficients ``S_[w][s, t] = S[s w, t]`` for ``level(s) = level(t)``."""
    if not ops.is_causal(W, S, tol):
        raise NotCausalError("causal_expand requires a causal operator")
    coeffs: dict[Word, np.ndarray] = {}
    for n in range(W.depth + 1):
        for w in words_of_length(W.q, n):
            # w S keeps rows s w; the level-diagonal part is S_[w]
            C = ops.band(W, ops.word_op(W, w) @ S, 0)
            if np.any(C):
                coeffs[w] = C
    return CausalSeries(W, coeffs)


def causal_reconstruct(C: CausalSeries) -> np.ndarray:
    W = C.window
    out = np.zeros((W.N, W.N), dtype=complex)
    for w, Sw in C.coeffs.items():
        out += ops.adjoint(ops.word_op(W, w)) @ Sw
    return out


def commute_diag(W: TreeWindow, D: np.ndarray, w) -> tuple[np.ndarray, np.ndarray]:
    """Diagonals ``D1, D2`` with ``D w^* = w^* D1`` and ``D w = w D2``."""
    w = as_word(w)
    if not ops.is_diagonal(D):
        raise ValueError("commute_diag requires a diagonal operator")
    d = np.diag(D)
    d1 = np.zeros(W.N, dtype=complex)
    d2 = np.zeros(W.N, dtype=complex)
    for t, i in W.index.items():
        tw = t + w
        if tw in W.index:
            d1[i] = d[W.index[tw]]
            d2[W.index[tw]] = d[i]
    return np.diag(d1), np.diag(d2)


def constant_shift_expand(W: TreeWindow, C: np.ndarray, w) -> dict[Word, np.ndarray]:
    """Constants ``C_v = v C w^*`` over ``|v| = |w|``."""
    w = as_word(w)
    wstar = ops.adjoint(ops.word_op(W, w))
    return {v: ops.word_op(W, v) @ C @ wstar for v in words_of_length(W.q, len(w))}
