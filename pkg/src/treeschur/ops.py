"""Dense-matrix surrogates for bounded operators on the window.

An operator is an ``N x N`` complex array whose entry ``[t, s]`` is the value
at node ``t`` of the image of the basis vector at node ``s``.  Structural
masks (bands, causality, constants) are derived from node levels only.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .tree import TreeWindow, Word, as_word


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@lru_cache(maxsize=64)
def _level_diff(W: TreeWindow) -> np.ndarray:
    lv = W.levels
    return _frozen(lv[:, None] - lv[None, :])


def level_diff(W: TreeWindow) -> np.ndarray:
    """``level(row) - level(col)`` for every entry."""
    return _level_diff(W)


@lru_cache(maxsize=64)
def _shifts(W: TreeWindow) -> np.ndarray:
    a = np.zeros((W.q, W.N, W.N), dtype=complex)
    for u, i in W.index.items():
        if len(u) < W.depth:
            for j in range(1, W.q + 1):
                a[j - 1, i, W.index[u + (j,)]] = 1.0
    return _frozen(a)


def shift(W: TreeWindow, j: int) -> np.ndarray:
    """Primitive shift: ``(alpha_j f)(t) = f(t j)``."""
    if not 1 <= j <= W.q:
        raise ValueError(f"letter {j} outside 1..{W.q}")
    return _shifts(W)[j - 1]


def shift_adjoint(W: TreeWindow, j: int) -> np.ndarray:
    return shift(W, j).T.copy()


def shifts(W: TreeWindow) -> np.ndarray:
    """All primitive shifts stacked, shape ``(q, N, N)``."""
    return _shifts(W)


def alpha_column(W: TreeWindow) -> np.ndarray:
    """The column operator ``alpha = (alpha_1; ...; alpha_q)`` as a ``qN x N`` matrix."""
    return _shifts(W).reshape(W.q * W.N, W.N)


def word_op(W: TreeWindow, w) -> np.ndarray:
    w = as_word(w)
    out = np.eye(W.N, dtype=complex)
    if len(w) > W.depth:
        return np.zeros_like(out)
    for j in w:
        out = out @ shift(W, j)
    return out


def identity(W: TreeWindow) -> np.ndarray:
    return np.eye(W.N, dtype=complex)


def level_projection(W: TreeWindow, lo: int = 0, hi: int | None = None) -> np.ndarray:
    """Diagonal projection onto nodes with ``lo <= level <= hi``."""
    hi = W.depth if hi is None else hi
    lv = W.levels
    return np.diag(((lv >= lo) & (lv <= hi)).astype(complex))


def hs_inner(F: np.ndarray, G: np.ndarray) -> complex:
    """Hilbert-Schmidt pairing ``trace(G^* F)``."""
    return complex(np.vdot(G, F))


def hs_norm(F: np.ndarray) -> float:
    return float(np.linalg.norm(F))


def op_norm(S: np.ndarray) -> float:
    if S.size == 0:
        return 0.0
    return float(np.linalg.norm(S, 2))


def band(W: TreeWindow, S: np.ndarray, n: int) -> np.ndarray:
    """Part of ``S`` that raises the level by exactly ``n``."""
    return np.where(level_diff(W) == n, S, 0)


def causal_part(W: TreeWindow, S: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto causal matrices (lower level-triangular part)."""
    return np.where(level_diff(W) >= 0, S, 0)


def is_causal(W: TreeWindow, S: np.ndarray, tol: float = 0.0) -> bool:
    return bool(np.all(np.abs(S[level_diff(W) < 0]) <= tol))


def is_constant(W: TreeWindow, S: np.ndarray, tol: float = 0.0) -> bool:
    return bool(np.all(np.abs(S[level_diff(W) != 0]) <= tol))


def is_diagonal(S: np.ndarray, tol: float = 0.0) -> bool:
    off = S - np.diag(np.diag(S))
    return bool(np.all(np.abs(off) <= tol))


def compress(W: TreeWindow, S: np.ndarray, b: int) -> np.ndarray:
    """Interior compression ``P S P`` with ``P`` the projection onto levels ``<= depth - b``.

    Block operators whose sides are multiples of ``N`` (e.g. ``qN x N``) are
    compressed blockwise.
    """
    if not 0 <= b <= W.depth:
        raise ValueError(f"buffer {b} outside 0..{W.depth}")
    keep = W.levels <= W.depth - b
    rows = np.tile(keep, S.shape[0] // W.N)
    cols = np.tile(keep, S.shape[1] // W.N)
    return S * rows[:, None] * cols[None, :]


def adjoint(S: np.ndarray) -> np.ndarray:
    return S.conj().T


def c_alpha(W: TreeWindow, c: np.ndarray) -> np.ndarray:
    """``c alpha = sum_j c_j alpha_j`` for a q-tuple of constants ``c`` of shape (q, N, N)."""
    return np.einsum("jab,jbc->ac", c, shifts(W))


def c_row(c: np.ndarray) -> np.ndarray:
    """The row operator ``(c_1 ... c_q)`` as an ``N x qN`` matrix."""
    return np.concatenate(list(c), axis=1)


def kron_blocks(W: TreeWindow, X: np.ndarray) -> np.ndarray:
    """``I_q (x) X``: block-diagonal copy of ``X``."""
    return np.kron(np.eye(W.q), X)


def matrix_unit(W: TreeWindow, t: Word, s: Word) -> np.ndarray:
    E = np.zeros((W.N, W.N), dtype=complex)
    E[W.index[as_word(t)], W.index[as_word(s)]] = 1.0
    return E


@lru_cache(maxsize=64)
def _mask_index(W: TreeWindow, kind: str) -> tuple[np.ndarray, np.ndarray]:
    D = level_diff(W)
    r, c = np.nonzero(D >= 0) if kind == "causal" else np.nonzero(D == 0)
    return _frozen(r), _frozen(c)


def causal_coords(W: TreeWindow) -> tuple[np.ndarray, np.ndarray]:
    """Row/column indices of the causal entries, row-major."""
    return _mask_index(W, "causal")


def constant_coords(W: TreeWindow) -> tuple[np.ndarray, np.ndarray]:
    return _mask_index(W, "constant")


def vec(W: TreeWindow, F: np.ndarray, kind: str = "causal") -> np.ndarray:
    r, c = _mask_index(W, kind)
    return F[r, c]


def unvec(W: TreeWindow, x: np.ndarray, kind: str = "causal") -> np.ndarray:
    r, c = _mask_index(W, kind)
    F = np.zeros((W.N, W.N), dtype=complex)
    F[r, c] = x
    return F


def superoperator(W: TreeWindow, f, src: str = "causal", dst: str = "causal") -> np.ndarray:
    """Matrix of a linear map between causal or constant operator spaces.

    Coordinates are the masked entries in row-major order, which are
    orthonormal for the Hilbert-Schmidt inner product.
    """
    n = len(_mask_index(W, src)[0])
    cols = [vec(W, f(unvec(W, e, src)), dst) for e in np.eye(n)]
    return np.column_stack(cols) if cols else np.zeros((0, 0), dtype=complex)
