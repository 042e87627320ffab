"""Blaschke factors at a q-tuple of constants.

Block operators are flat matrices: an operator from the q-fold window space to
the window space is ``N x qN`` (block columns), the opposite direction is
``qN x N`` (block rows), and ``L_c`` is ``qN x qN``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import ops
from .evaluation import EvalPoint, cauchy_kernel, eval_point, point_eval
from .series import NotCausalError
from .tree import TreeWindow

PSD_CLIP = 1e-10
ANNIHILATION_TOL = 1e-8


def psd_sqrt(X: np.ndarray, inverse: bool = False, clip: float = PSD_CLIP) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues below ``clip`` are zeroed; with ``inverse`` the pseudo-inverse
    square root is returned.
    """
    lam, V = np.linalg.eigh((X + ops.adjoint(X)) / 2)
    keep = lam > clip
    f = np.zeros_like(lam)
    f[keep] = lam[keep] ** (-0.5 if inverse else 0.5)
    return (V * f) @ ops.adjoint(V)


def neumann_inverse(T: np.ndarray, order: int) -> np.ndarray:
    """``(I - T)^{-1}`` for nilpotent ``T`` with ``T^(order+1) = 0``."""
    out = np.eye(T.shape[0], dtype=complex)
    P = out
    for _ in range(order):
        P = P @ T
        out = out + P
    return out


@dataclass(frozen=True, eq=False)
class BlaschkeData:
    window: TreeWindow
    point: EvalPoint = field(repr=False)
    R_c: np.ndarray = field(repr=False)
    R_c_inv: np.ndarray = field(repr=False)
    L_c: np.ndarray = field(repr=False)
    sqrt_L_c: np.ndarray = field(repr=False)
    sqrt_L_c_inv: np.ndarray = field(repr=False)
    B_c: np.ndarray = field(repr=False)
    causal_leak: float = 0.0

    @property
    def c(self) -> np.ndarray:
        return self.point.c

    def block(self, j: int) -> np.ndarray:
        """Block column ``j`` (1-based) of the Blaschke factor."""
        N = self.window.N
        return self.B_c[:, (j - 1) * N: j * N]


def r_c(W: TreeWindow, c) -> np.ndarray:
    """``R_c = sum_n (c alpha)^n (alpha^* c^*)^n``."""
    p = eval_point(W, c)
    return sum(P @ ops.adjoint(P) for P in p.powers)


def l_c(W: TreeWindow, c, R: np.ndarray | None = None) -> np.ndarray:
    """``L_c = alpha (R_c - R_c alpha^* c^* R_c^{-1} c alpha R_c) alpha^*``."""
    p = eval_point(W, c)
    R = r_c(W, p) if R is None else R
    Rinv = _inverse(R)
    ca = p.calpha
    al = ops.alpha_column(W)
    L = al @ (R - R @ ops.adjoint(ca) @ Rinv @ ca @ R) @ ops.adjoint(al)
    return (L + ops.adjoint(L)) / 2


def _inverse(R: np.ndarray) -> np.ndarray:
    if np.linalg.cond(R) > 1e12:
        raise ArithmeticError("R_c is numerically singular")
    return np.linalg.inv(R)


def blaschke_data(W: TreeWindow, c) -> BlaschkeData:
    p = eval_point(W, c)
    R = r_c(W, p)
    Rinv = _inverse(R)
    L = l_c(W, p, R)
    sL, sLi = psd_sqrt(L), psd_sqrt(L, inverse=True)
    B = (_alpha_minus_c(W, p) @ neumann_inverse(_raising_part(W, p, L), W.depth) @ sL)
    # the blocks are causal in exact arithmetic; the square root leaks roundoff
    parts = [B[:, j * W.N:(j + 1) * W.N] for j in range(W.q)]
    causal = [ops.causal_part(W, X) for X in parts]
    leak = max(float(np.abs(X - C).max()) for X, C in zip(parts, causal))
    return BlaschkeData(W, p, R, Rinv, L, sL, sLi, np.hstack(causal), leak)


def _alpha_minus_c(W: TreeWindow, p: EvalPoint) -> np.ndarray:
    """The row operator ``alpha^* - c`` (``N x qN``)."""
    return ops.adjoint(ops.alpha_column(W)) - ops.c_row(p.c)


def _raising_part(W: TreeWindow, p: EvalPoint, L: np.ndarray) -> np.ndarray:
    """``L_c c^* alpha^*`` (``qN x qN``); it raises levels, hence is nilpotent."""
    return L @ ops.adjoint(ops.c_row(p.c)) @ ops.adjoint(ops.alpha_column(W))


def blaschke_factor(W: TreeWindow, c) -> np.ndarray:
    return blaschke_data(W, c).B_c


def make_annihilating(W: TreeWindow, H: np.ndarray, c) -> np.ndarray:
    """``H - K^c R_c^{-1} H^(c)``, which vanishes at ``c``."""
    if not ops.is_causal(W, H):
        raise NotCausalError("make_annihilating requires a causal operator")
    p = eval_point(W, c)
    return H - cauchy_kernel(W, p) @ _inverse(r_c(W, p)) @ point_eval(W, H, p)


def factorize(W: TreeWindow, F: np.ndarray, c, data: BlaschkeData | None = None,
              tol: float = ANNIHILATION_TOL) -> np.ndarray:
    """Block column ``G`` (``qN x N``) with ``F = B_c G`` for ``F`` vanishing at ``c``."""
    if not ops.is_causal(W, F):
        raise NotCausalError("factorize requires a causal operator")
    data = blaschke_data(W, c) if data is None else data
    p = data.point
    value = point_eval(W, F, p)
    if np.abs(value).max(initial=0.0) > tol:
        raise ValueError(f"F does not vanish at c (|F^(c)| = {np.abs(value).max():.3e})")
    al = ops.alpha_column(W)
    alpha_c = al @ ops.c_row(p.c)
    G1 = neumann_inverse(alpha_c, W.depth) @ al @ F
    T = _raising_part(W, p, data.L_c)
    G = data.sqrt_L_c_inv @ (np.eye(W.q * W.N) - T) @ G1
    causal = np.concatenate([ops.causal_part(W, X) for X in blocks(W, G)])
    leak = float(np.abs(G - causal).max(initial=0.0))
    if leak > tol:
        raise ArithmeticError(f"factor is not causal (leak {leak:.3e})")
    return causal


def blocks(W: TreeWindow, G: np.ndarray) -> list[np.ndarray]:
    """Split a ``qN x N`` block column into its ``q`` operators."""
    return [G[j * W.N:(j + 1) * W.N] for j in range(W.q)]
