"""Schur multipliers, de Branges-Rovnyak spaces and their realizations.

The Hardy-type space is the space of causal window matrices with the
Hilbert-Schmidt inner product; super-operators on it are assembled in the
orthonormal coordinates given by the causal entries (``ops.vec``).  The
de Branges-Rovnyak space of a Schur multiplier ``S`` is modelled as the range
of ``B_S = I - M_S M_S^*`` with the inner product making
``sqrt(lambda_i) u_i`` orthonormal for each eigenpair ``(lambda_i, u_i)`` of
``B_S`` with ``lambda_i`` above the kernel threshold.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import ops
from .evaluation import eval_point, cauchy_kernel, point_eval
from .series import CausalSeries, causal_reconstruct
from .tree import TreeWindow, Word, as_word, words_of_length

SCHUR_TOL = 1e-10
KERNEL_CLIP = 1e-10
INVARIANCE_TOL = 1e-8


class NotSchurError(ValueError):
    pass


class RealizationError(ArithmeticError):
    """Numerical failure of a structural identity (rank pathology)."""


def is_schur_multiplier(W: TreeWindow, S: np.ndarray, tol: float = SCHUR_TOL) -> bool:
    return ops.is_causal(W, S) and ops.op_norm(S) <= 1 + tol


def _require_schur(W: TreeWindow, S: np.ndarray) -> None:
    if not is_schur_multiplier(W, S):
        raise NotSchurError("expected a causal contraction")


def schur_kernel(W: TreeWindow, S: np.ndarray, c, d, require_schur: bool = True) -> np.ndarray:
    """``K_s(c, d) = sum_n (c alpha)^n (I - s(c) s(d)^*) (d alpha)^{n*}``.

    ``require_schur=False`` evaluates the same formula for any causal ``S``,
    which is how non-contractive witnesses are probed.
    """
    if require_schur:
        _require_schur(W, S)
    pc, pd = eval_point(W, c), eval_point(W, d)
    middle = np.eye(W.N) - point_eval(W, S, pc) @ ops.adjoint(point_eval(W, S, pd))
    return sum(Pc @ middle @ ops.adjoint(Pd) for Pc, Pd in zip(pc.powers, pd.powers))


def reproducing_kernel(W: TreeWindow, S: np.ndarray, d) -> np.ndarray:
    """``K_S^d = (I - S S^(d)^*) K^d``, an element of the causal algebra."""
    pd = eval_point(W, d)
    return (np.eye(W.N) - S @ ops.adjoint(point_eval(W, S, pd))) @ cauchy_kernel(W, pd)


def kernel_gram(W: TreeWindow, S: np.ndarray, points, ks, require_schur: bool = True) -> np.ndarray:
    if len(points) != len(ks):
        raise ValueError("points and ks must have equal length")
    m = len(points)
    G = np.empty((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            G[i, j] = ops.hs_inner(schur_kernel(W, S, points[i], points[j], require_schur) @ ks[j], ks[i])
    return G


def kernel_gram_psd(W: TreeWindow, S: np.ndarray, points, ks) -> float:
    """Smallest eigenvalue of the kernel Gram matrix over the sample."""
    G = kernel_gram(W, S, points, ks)
    return float(np.linalg.eigvalsh((G + ops.adjoint(G)) / 2).min())


def multiplication_superop(W: TreeWindow, S: np.ndarray) -> np.ndarray:
    """``M_S F = S F`` on causal coordinates."""
    return ops.superoperator(W, lambda F: S @ F)


@dataclass(frozen=True, eq=False)
class DBRSpace:
    window: TreeWindow
    S: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)
    eigenvalues: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)
    clip: float = KERNEL_CLIP

    @property
    def positive(self) -> np.ndarray:
        return self.eigenvalues > self.clip

    @property
    def rank(self) -> int:
        return int(self.positive.sum())

    @property
    def basis(self) -> np.ndarray:
        """Orthonormal eigenvectors spanning the range of ``B_S`` (HS coordinates)."""
        return self.eigenvectors[:, self.positive]

    @property
    def scales(self) -> np.ndarray:
        """``sqrt(lambda)`` for the retained eigenvalues."""
        return np.sqrt(self.eigenvalues[self.positive])

    @property
    def kernel_projector(self) -> np.ndarray:
        """``pi_S``, projection of the causal space onto ``ker B_S``."""
        K = self.eigenvectors[:, ~self.positive]
        return K @ ops.adjoint(K)

    def coords(self, F: np.ndarray) -> np.ndarray:
        """Coordinates of ``F`` in the orthonormal basis ``sqrt(lambda_i) u_i`` of H(S)."""
        return (ops.adjoint(self.basis) @ ops.vec(self.window, F)) / self.scales

    def from_coords(self, a: np.ndarray) -> np.ndarray:
        return ops.unvec(self.window, self.basis @ (self.scales * a))

    def residual(self, F: np.ndarray) -> float:
        """Distance of ``F`` from the range of ``B_S``."""
        x = ops.vec(self.window, F)
        return float(np.linalg.norm(x - self.basis @ (ops.adjoint(self.basis) @ x)))

    def dbr_inner(self, F: np.ndarray, G: np.ndarray) -> complex:
        return complex(np.vdot(self.coords(G), self.coords(F)))

    def dbr_norm(self, F: np.ndarray) -> float:
        return float(np.linalg.norm(self.coords(F)))

    def sqrt_B(self, F: np.ndarray) -> np.ndarray:
        """Apply ``sqrt(B_S)`` to a causal operator."""
        U, s = self.basis, self.scales
        return ops.unvec(self.window, U @ (s * (ops.adjoint(U) @ ops.vec(self.window, F))))


def dbr_space(W: TreeWindow, S: np.ndarray, clip: float = KERNEL_CLIP) -> DBRSpace:
    _require_schur(W, S)
    M = multiplication_superop(W, S)
    B = np.eye(M.shape[0]) - M @ ops.adjoint(M)
    B = (B + ops.adjoint(B)) / 2
    lam, U = np.linalg.eigh(B)
    if lam.size and lam.min() < -clip:
        raise NotSchurError(f"B_S is indefinite (min eigenvalue {lam.min():.3e})")
    lam = np.where(np.abs(lam) <= clip, 0.0, lam)
    return DBRSpace(W, S, B, lam, U, clip)


@dataclass(frozen=True, eq=False)
class Realization:
    """The colligation ``V_j = [[A_j, B_j], [C, D]]`` on ``H(S) + C_2``.

    The maps act on concrete window operators; ``matrices(j)`` expresses them
    in orthonormal coordinates of ``H(S)`` and ``C_2``.
    """

    window: TreeWindow
    S: np.ndarray = field(repr=False)
    space: DBRSpace = field(repr=False)
    invariance_residual: float = 0.0

    @property
    def S0(self) -> np.ndarray:
        return ops.band(self.window, self.S, 0)

    def A(self, j: int, F: np.ndarray) -> np.ndarray:
        return (F - ops.band(self.window, F, 0)) @ ops.shift(self.window, j)

    def A_word(self, v, F: np.ndarray) -> np.ndarray:
        for j in as_word(v):
            F = self.A(j, F)
        return F

    def B(self, j: int, d: np.ndarray) -> np.ndarray:
        return (self.S - self.S0) @ d @ ops.shift(self.window, j)

    def C(self, F: np.ndarray) -> np.ndarray:
        return ops.band(self.window, F, 0)

    def D(self, d: np.ndarray) -> np.ndarray:
        return self.S0 @ d

    def matrices(self, j: int) -> dict[str, np.ndarray]:
        W, H = self.window, self.space
        U, s = H.basis, H.scales
        A = ops.superoperator(W, lambda F: self.A(j, F))
        B = ops.superoperator(W, lambda d: self.B(j, d), src="constant")
        C = ops.superoperator(W, self.C, dst="constant")
        D = ops.superoperator(W, self.D, src="constant", dst="constant")
        M = ops.superoperator(W, lambda F: F @ ops.shift_adjoint(W, j) @ ops.shift(W, j))
        return {
            "A": (ops.adjoint(U) @ A @ U * s[None, :]) / s[:, None],
            "B": (ops.adjoint(U) @ B) / s[:, None],
            "C": C @ U * s[None, :],
            "D": D,
            "M": (ops.adjoint(U) @ M @ U * s[None, :]) / s[:, None],
        }

    def colligation(self, j: int) -> np.ndarray:
        m = self.matrices(j)
        return np.block([[m["A"], m["B"]], [m["C"], m["D"]]])

    def coisometry_defect(self, j: int) -> float:
        """``max |V_j V_j^* - diag(M_{alpha_j^* alpha_j}, I)|`` in orthonormal coordinates."""
        m = self.matrices(j)
        V = np.block([[m["A"], m["B"]], [m["C"], m["D"]]])
        r, k = m["A"].shape[0], m["D"].shape[0]
        target = np.block([[m["M"], np.zeros((r, k))], [np.zeros((k, r)), np.eye(k)]])
        return float(np.abs(V @ ops.adjoint(V) - target).max())


def realization_ops(W: TreeWindow, S: np.ndarray, space: DBRSpace | None = None) -> Realization:
    space = dbr_space(W, S) if space is None else space
    U = space.basis
    worst = 0.0
    for j in range(1, W.q + 1):
        A = ops.superoperator(W, lambda F: (F - ops.band(W, F, 0)) @ ops.shift(W, j))
        AU = A @ U
        worst = max(worst, float(np.linalg.norm(AU - U @ (ops.adjoint(U) @ AU), 2)) if U.size else 0.0)
    if worst > INVARIANCE_TOL:
        raise RealizationError(f"H(S) is not A_j-invariant (residual {worst:.3e})")
    return Realization(W, S, space, worst)


def coeffs_from_realization(R: Realization, w, v=None, j: int = 1, d: np.ndarray | None = None) -> np.ndarray:
    """``S_[w] d`` read off the colligation: ``w (C A^v B_j d) v^* alpha_j^*``.

    With ``d`` omitted the identity constant is used, which returns ``S_[w]``
    itself.
    """
    W = R.window
    w = as_word(w)
    d = np.eye(W.N, dtype=complex) if d is None else d
    if not w:
        return R.D(d)
    v = w[1:] if v is None else as_word(v)
    if len(w) != len(v) + 1:
        raise ValueError("coeffs_from_realization needs |w| = |v| + 1")
    inner = R.C(R.A_word(v, R.B(j, d)))
    return ops.word_op(W, w) @ inner @ ops.adjoint(ops.word_op(W, v)) @ ops.shift_adjoint(W, j)


def eval_operator(R: Realization, c, F: np.ndarray, j: int = 1) -> np.ndarray:
    """``E_c F = sum_n (c alpha)^n (C A_j^n F) alpha_j^{n*}``."""
    W = R.window
    p = eval_point(W, c)
    out = np.zeros((W.N, W.N), dtype=complex)
    state = F
    aj_star = ops.shift_adjoint(W, j)
    tail = np.eye(W.N, dtype=complex)
    for n in range(W.depth + 1):
        out += p.powers[n] @ R.C(state) @ tail
        state = R.A(j, state)
        tail = aj_star @ tail
    return out


def eval_operator_matrix(R: Realization, c, j: int = 1) -> np.ndarray:
    """``E_c`` from H(S) coordinates to constant coordinates."""
    H = R.space
    cols = [ops.vec(R.window, eval_operator(R, c, H.from_coords(e), j), "constant")
            for e in np.eye(H.rank)]
    n = len(ops.constant_coords(R.window)[0])
    return np.column_stack(cols) if cols else np.zeros((n, 0), dtype=complex)


def eval_adjoint(R: Realization, d, k: np.ndarray, j: int = 1) -> np.ndarray:
    """``E_d^* k`` as an element of H(S), adjoint taken in the H(S) inner product."""
    E = eval_operator_matrix(R, d, j)
    return R.space.from_coords(ops.adjoint(E) @ ops.vec(R.window, k, "constant"))


def _level_alternate(q: int, n: int) -> Word:
    return (q,) * n


def _transfer(R: Realization, U: CausalSeries) -> tuple[CausalSeries, float]:
    W = R.window
    Uop = causal_reconstruct(U)
    bands = [ops.band(W, Uop, n) for n in range(W.depth + 1)]

    def U_at(w: Word) -> np.ndarray:
        return bands[len(w)] @ ops.word_op(W, w)

    X: dict[Word, np.ndarray] = {(): np.zeros((W.N, W.N), dtype=complex)}
    for n in range(W.depth):
        for w in words_of_length(W.q, n):
            Uw = U_at(w)
            for j in range(1, W.q + 1):
                X[w + (j,)] = R.A(j, X[w]) + R.B(j, Uw)

    def output(w: Word, v: Word) -> np.ndarray:
        return ops.word_op(W, w) @ (R.C(X[v]) + R.D(U_at(v))) @ ops.adjoint(ops.word_op(W, v))

    coeffs: dict[Word, np.ndarray] = {}
    defect = 0.0
    for n in range(W.depth + 1):
        alt = _level_alternate(W.q, n)
        for w in words_of_length(W.q, n):
            Y = output(w, w)
            defect = max(defect, float(np.abs(Y - output(w, alt)).max()))
            if np.any(Y):
                coeffs[w] = Y
    return CausalSeries(W, coeffs), defect


def transfer_simulate(R: Realization, U: CausalSeries, tol: float = INVARIANCE_TOL) -> CausalSeries:
    """Output coefficients of ``S U`` from the state recursion ``X_{wj} = A_j X_w + B_j U_w``."""
    Y, defect = _transfer(R, U)
    if defect > tol:
        raise RealizationError(f"output depends on the choice of v (defect {defect:.3e})")
    return Y


def transfer_alternate_defect(R: Realization, U: CausalSeries) -> float:
    """Largest change in ``Y_[w]`` when the canonical ``v = w`` is replaced by one alternate per level."""
    return _transfer(R, U)[1]
