"""Executable invariants grouped into suites, and the report they produce.

Every check returns a measured defect that is compared against its
tolerance.  Each check draws from its own random stream derived from the
suite seed and the check name, so checks can run in any order.
"""
from __future__ import annotations

import json
import os
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import __version__, ops
from . import blaschke as bl
from . import evaluation as ev
from . import schur as sc
from . import series as ser
from .instances import (RNG_ALGORITHM, random_causal, random_constant, random_ctuple,
                        random_diagonal, random_schur, random_signal, rng_for)
from .tree import TreeWindow, make_window, words_of_length

SUITES = ("cuntz", "series", "eval", "schur", "realization", "transfer", "blaschke")
TOL_ENV = "TREESCHUR_TOL"


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    anchor: str
    tolerance: float | None
    func: Callable

    @property
    def key(self) -> str:
        return f"{self.suite}.{self.name}"


REGISTRY: dict[str, Check] = {}


def check(suite: str, name: str, anchor: str, tol: float | None):
    def deco(func):
        c = Check(suite, name, anchor, tol, func)
        REGISTRY[c.key] = c
        return func
    return deco


@dataclass
class Context:
    window: TreeWindow
    rng: np.random.Generator
    scale: float = 1.0

    def count(self, n: int) -> int:
        return max(1, int(round(n * self.scale)))


@dataclass
class SuiteConfig:
    q: int = 2
    depth: int = 3
    seed: int = 42
    suites: tuple[str, ...] = SUITES
    tol: float | None = None
    tolerance_overrides: dict[str, float] = field(default_factory=dict)
    out: str | None = None
    scale: float = 1.0

    def __post_init__(self):
        if self.q < 1 or self.depth < 1:
            raise ValueError("q and depth must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        suites = tuple(SUITES if s == "all" else (s,) for s in self.suites)
        self.suites = tuple(dict.fromkeys(x for group in suites for x in group))
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
        if self.tol is None and os.environ.get(TOL_ENV):
            self.tol = float(os.environ[TOL_ENV])


@dataclass
class Record:
    suite: str
    check: str
    anchor: str
    defect: float
    tolerance: float | None
    passed: bool
    note: str = ""


@dataclass
class Report:
    records: list[Record]
    metadata: dict

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_json(self) -> dict:
        return {"metadata": self.metadata, "passed": self.passed,
                "records": [asdict(r) for r in self.records]}

    def write(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def run_suite(cfg: SuiteConfig) -> Report:
    W = make_window(cfg.q, cfg.depth)
    records = []
    for key in sorted(REGISTRY):
        c = REGISTRY[key]
        if c.suite not in cfg.suites:
            continue
        ctx = Context(W, rng_for(cfg.seed, key), cfg.scale)
        out = c.func(ctx)
        defect, note = (out if isinstance(out, tuple) else (out, ""))
        defect = float(defect)
        tol = cfg.tolerance_overrides.get(key, c.tolerance if cfg.tol is None or c.tolerance is None else cfg.tol)
        passed = True if tol is None else bool(defect <= tol)
        records.append(Record(c.suite, c.name, c.anchor, defect, tol, passed, note))
    meta = {"q": cfg.q, "depth": cfg.depth, "seed": cfg.seed, "suites": list(cfg.suites),
            "version": __version__, "rng": RNG_ALGORITHM,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())}
    report = Report(records, meta)
    if cfg.out:
        report.write(cfg.out)
    return report


def _maxabs(X) -> float:
    return float(np.abs(X).max(initial=0.0))


def _letters(W):
    return range(1, W.q + 1)


# -- op-algebra ---------------------------------------------------------------

@check("cuntz", "orthogonality", "alpha_i alpha_j^* = delta_ij I (window: Pi_{<=L-1})", 0.0)
def _cuntz_orth(ctx):
    W = ctx.window
    P = ops.level_projection(W, 0, W.depth - 1)
    return max(_maxabs(ops.shift(W, i) @ ops.shift_adjoint(W, j) - (i == j) * P)
               for i in _letters(W) for j in _letters(W))


@check("cuntz", "completeness", "sum_j alpha_j^* alpha_j = I (window: Pi_{>=1})", 0.0)
def _cuntz_sum(ctx):
    W = ctx.window
    total = sum(ops.shift_adjoint(W, j) @ ops.shift(W, j) for j in _letters(W))
    return _maxabs(total - ops.level_projection(W, 1))


@check("cuntz", "last_letter_projection", "alpha_j^* alpha_j = projection onto nodes ending in j", 0.0)
def _cuntz_last(ctx):
    W = ctx.window
    worst = 0.0
    for j in _letters(W):
        P = np.diag([1.0 if t and t[-1] == j else 0.0 for t in W.nodes])
        worst = max(worst, _maxabs(ops.shift_adjoint(W, j) @ ops.shift(W, j) - P))
    return worst


@check("cuntz", "diagonal_commutation", "D w^* = w^* D', D w = w D''", 0.0)
def _cuntz_diag(ctx):
    W = ctx.window
    worst = 0.0
    for _ in range(ctx.count(5)):
        D = random_diagonal(W, ctx.rng)
        for n in range(W.depth + 1):
            for w in words_of_length(W.q, n):
                D1, D2 = ser.commute_diag(W, D, w)
                wop = ops.word_op(W, w)
                worst = max(worst, _maxabs(D @ ops.adjoint(wop) - ops.adjoint(wop) @ D1),
                            _maxabs(D @ wop - wop @ D2))
    return worst


@check("cuntz", "hs_multiplication_bound", "max(||SF||_2, ||FS||_2) <= ||S|| ||F||_2", 1e-12)
def _cuntz_trivest(ctx):
    W = ctx.window
    worst = 0.0
    for _ in range(ctx.count(20)):
        S, F = random_causal(W, ctx.rng), random_causal(W, ctx.rng)
        bound = ops.op_norm(S) * ops.hs_norm(F)
        worst = max(worst, ops.hs_norm(S @ F) - bound, ops.hs_norm(F @ S) - bound)
    return max(worst, 0.0)


@check("cuntz", "contractive_inclusion", "||F|| <= ||F||_2", 1e-12)
def _cuntz_incl(ctx):
    W = ctx.window
    gaps = [ops.op_norm(F) - ops.hs_norm(F) for F in (random_causal(W, ctx.rng) for _ in range(ctx.count(20)))]
    return max(max(gaps), 0.0)


@check("cuntz", "band_partition", "||F||_2^2 = sum_n ||band(F, n)||_2^2 and sum_n band(F, n) = F", 1e-10)
def _cuntz_band(ctx):
    W = ctx.window
    worst = 0.0
    for _ in range(ctx.count(20)):
        F = random_causal(W, ctx.rng)
        parts = [ops.band(W, F, n) for n in range(-W.depth, W.depth + 1)]
        worst = max(worst, _maxabs(sum(parts) - F),
                    abs(sum(ops.hs_norm(P) ** 2 for P in parts) - ops.hs_norm(F) ** 2))
    return worst


@check("cuntz", "algebra_closure", "causal * causal is causal; constant * constant is constant", 0.0)
def _cuntz_closure(ctx):
    W = ctx.window
    bad = 0
    for _ in range(ctx.count(10)):
        A, B = random_causal(W, ctx.rng), random_causal(W, ctx.rng)
        C, D = random_constant(W, ctx.rng), random_constant(W, ctx.rng)
        bad += (not ops.is_causal(W, A @ B)) + (not ops.is_constant(W, C @ D))
    return float(bad)


@check("cuntz", "multiplier_norm_gap", "||M_S|| <= ||S|| (equality only on the full tree)", 1e-10)
def _cuntz_msnorm(ctx):
    W = ctx.window
    gaps = []
    for _ in range(ctx.count(5)):
        S = random_causal(W, ctx.rng)
        gaps.append(ops.op_norm(S) - ops.op_norm(sc.multiplication_superop(W, S)))
    return max(-min(gaps), 0.0), f"||S|| - ||M_S|| in [{min(gaps):.3e}, {max(gaps):.3e}]"


# -- ncseries -----------------------------------------------------------------

@check("series", "two_index_roundtrip", "S = sum' w1^* w2 S_{w1,w2}", 0.0)
def _ser_two(ctx):
    W = ctx.window
    worst = 0.0
    for _ in range(ctx.count(20)):
        S = random_causal(W, ctx.rng) + ops.adjoint(random_causal(W, ctx.rng))
        R = ser.two_index_rep(W, S)
        if not all(ops.is_diagonal(D) for D in R.coeffs.values()):
            return np.inf
        worst = max(worst, _maxabs(ser.two_index_reconstruct(R) - S))
    return worst


@check("series", "causal_roundtrip", "S = sum_w w^* S_[w]", 0.0)
def _ser_causal(ctx):
    W = ctx.window
    worst = 0.0
    for _ in range(ctx.count(20)):
        S = random_causal(W, ctx.rng)
        worst = max(worst, _maxabs(ser.causal_reconstruct(ser.causal_expand(W, S)) - S))
    return worst


def _mixed(W, rng, causal: bool, constant: bool):
    S = random_constant(W, rng)
    if not constant:
        S = S + ops.causal_part(W, random_causal(W, rng) - ops.band(W, random_causal(W, rng), 0))
    if not causal:
        S = S + ops.adjoint(random_causal(W, rng))
    return S


@check("series", "causality_characterization", "S causal <=> S_{w1,w2} = 0 whenever |w1| < |w2|", 0.0)
def _ser_causal_char(ctx):
    W = ctx.window
    bad = 0
    for flag in [True, False] * ctx.count(5):
        S = _mixed(W, ctx.rng, causal=flag, constant=False)
        R = ser.two_index_rep(W, S)
        vanishes = all(not np.any(D) for (a, b), D in R.coeffs.items() if len(a) < len(b))
        bad += vanishes != ops.is_causal(W, S)
    return float(bad)


@check("series", "constant_characterization", "S constant <=> S_{w1,w2} = 0 unless |w1| = |w2|", 0.0)
def _ser_const_char(ctx):
    W = ctx.window
    bad = 0
    for flag in [True, False] * ctx.count(5):
        S = _mixed(W, ctx.rng, causal=True, constant=flag)
        R = ser.two_index_rep(W, S)
        vanishes = all(not np.any(D) for (a, b), D in R.coeffs.items() if len(a) != len(b))
        bad += vanishes != ops.is_constant(W, S)
    return float(bad)


@check("series", "norm_chain", "||S_[w]|| <= ||sum_{|v|=|w|} v^* S_[v]|| <= ||S||", 1e-10)
def _ser_rough(ctx):
    W = ctx.window
    worst = -np.inf
    for _ in range(ctx.count(20)):
        S = random_causal(W, ctx.rng)
        C = ser.causal_expand(W, S)
        nS = ops.op_norm(S)
        for w, Sw in C.coeffs.items():
            nb = ops.op_norm(ops.band(W, S, len(w)))
            worst = max(worst, ops.op_norm(Sw) - nb, nb - nS)
    return max(worst, 0.0)


@check("series", "hardy_norm", "||F||_2^2 = sum_w ||F_[w]||_2^2", 1e-10)
def _ser_hardy(ctx):
    W = ctx.window
    worst = 0.0
    for _ in range(ctx.count(20)):
        F = random_causal(W, ctx.rng)
        C = ser.causal_expand(W, F)
        worst = max(worst, abs(ops.hs_norm(F) ** 2 - sum(ops.hs_norm(M) ** 2 for M in C.coeffs.values())))
    return worst


@check("series", "constant_shift_expansion", "C w^* = sum_{|v|=|w|} v^* (v C w^*)", 1e-12)
def _ser_trivlem2(ctx):
    W = ctx.window
    worst = 0.0
    for _ in range(ctx.count(5)):
        C = random_constant(W, ctx.rng)
        for n in range(W.depth + 1):
            for w in words_of_length(W.q, n):
                parts = ser.constant_shift_expand(W, C, w)
                if not all(ops.is_constant(W, M) for M in parts.values()):
                    return np.inf
                lhs = sum(ops.adjoint(ops.word_op(W, v)) @ M for v, M in parts.items())
                rhs = C @ ops.adjoint(ops.word_op(W, w))
                worst = max(worst, _maxabs(ops.compress(W, lhs - rhs, n)))
    return worst


# -- point evaluation -----------------------------------------------------------

@check("eval", "nilpotency", "(c alpha)^(L+1) = 0 on the window", 0.0)
def _ev_nil(ctx):
    W = ctx.window
    worst = 0.0
    for _ in range(ctx.count(5)):
        p = ev.eval_point(W, random_ctuple(W, ctx.rng))
        worst = max(worst, _maxabs(p.powers[-1] @ p.calpha))
    return worst


@check("eval", "linearity", "(F p + G)^(c) = F^(c) p + G^(c)", 1e-12)
def _ev_lin(ctx):
    W, rng = ctx.window, ctx.rng
    worst = 0.0
    for _ in range(ctx.count(50)):
        F, G, p, c = random_causal(W, rng), random_causal(W, rng), random_constant(W, rng), random_ctuple(W, rng)
        worst = max(worst, _maxabs(ev.point_eval(W, F @ p + G, c)
                                   - ev.point_eval(W, F, c) @ p - ev.point_eval(W, G, c)))
    return worst


@check("eval", "multiplicativity", "(F G)^(c) = (F^(c) G)^(c)", 1e-10)
def _ev_mul(ctx):
    W, rng = ctx.window, ctx.rng
    worst = 0.0
    for _ in range(ctx.count(50)):
        F, G, c = random_causal(W, rng), random_causal(W, rng), random_ctuple(W, rng)
        worst = max(worst, _maxabs(ev.point_eval(W, F @ G, c) - ev.point_eval(W, ev.point_eval(W, F, c) @ G, c)))
    return worst


@check("eval", "cauchy_formula", "<F^(c), k>_2 = <F, K^c k>_2", 1e-10)
def _ev_cauchy(ctx):
    W, rng = ctx.window, ctx.rng
    worst = 0.0
    for _ in range(ctx.count(50)):
        F, c, k = random_causal(W, rng), random_ctuple(W, rng), random_constant(W, rng)
        worst = max(worst, abs(ops.hs_inner(ev.point_eval(W, F, c), k)
                               - ops.hs_inner(F, ev.cauchy_kernel(W, c) @ k)))
    return worst


@check("eval", "cauchy_kernel_inverse", "(I - alpha^* c^*) K^c = I", 1e-12)
def _ev_kinv(ctx):
    W = ctx.window
    worst = 0.0
    for _ in range(ctx.count(20)):
        c = random_ctuple(W, ctx.rng)
        K = ev.cauchy_kernel(W, c)
        worst = max(worst, _maxabs((np.eye(W.N) - ev.alpha_star_c_star(W, c)) @ K - np.eye(W.N)),
                    0.0 if ops.is_causal(W, K) else np.inf)
    return worst


@check("eval", "separation", "S^(c) = 0 for all c implies S = 0 (nilpotent path witnesses)", 0.0)
def _ev_sep(ctx):
    W = ctx.window
    bad = 0
    for _ in range(ctx.count(10)):
        S = random_causal(W, ctx.rng)
        # strip the low bands so the witness has to reach a deeper word
        for n in range(int(ctx.rng.integers(0, W.depth))):
            S = S - ops.band(W, S, n)
        w = min(ser.causal_expand(W, S).coeffs, key=lambda u: (len(u), u))
        roots = [t for t in W.nodes if len(t) + len(w) <= W.depth]
        bad += not any(np.any(ev.point_eval(W, S, ev.separating_point(W, w, t0))) for t0 in roots)
    return float(bad)


@check("eval", "backward_shift_adjoint", "<A_j F, G>_2 = <F, G alpha_j^*>_2", 1e-12)
def _ev_adj(ctx):
    W, rng = ctx.window, ctx.rng
    worst = 0.0
    for _ in range(ctx.count(20)):
        F, G = random_causal(W, rng), random_causal(W, rng)
        for j in _letters(W):
            worst = max(worst, abs(ops.hs_inner(ev.backward_shift(W, F, j), G)
                                   - ops.hs_inner(F, G @ ops.shift_adjoint(W, j))))
    return worst


@check("eval", "backward_shift_relations",
       "A_j M^_{alpha_i^*} = M^_{alpha_i^* alpha_j}; M^_{alpha_i^*} A_j = delta_ij (I - C^* C)", 1e-12)
def _ev_glele2(ctx):
    W = ctx.window
    worst = 0.0
    for _ in range(ctx.count(10)):
        F = random_causal(W, ctx.rng)
        for i in _letters(W):
            ai_s = ops.shift_adjoint(W, i)
            for j in _letters(W):
                aj = ops.shift(W, j)
                worst = max(worst,
                            _maxabs(ev.backward_shift(W, F @ ai_s, j) - F @ ai_s @ aj),
                            _maxabs(ev.backward_shift(W, F, j) @ ai_s - (i == j) * (F - ops.band(W, F, 0))))
    return worst


@check("eval", "coefficients_from_states", "F_[w] = w (C A^v F) v^* for every |v| = |w|", 1e-12)
def _ev_glele3(ctx):
    W = ctx.window
    worst = 0.0
    for _ in range(ctx.count(3)):
        F = random_causal(W, ctx.rng)
        C = ser.causal_expand(W, F)
        for n in range(min(W.depth, 3) + 1):
            for w in words_of_length(W.q, n):
                for v in words_of_length(W.q, n):
                    worst = max(worst, _maxabs(ev.coeff_via_states(W, F, w, v) - C[w]))
    return worst


# -- Schur multipliers and de Branges-Rovnyak spaces ---------------------------

def _sample_set(W, rng, m):
    points = [random_ctuple(W, rng) for _ in range(m + 1)]
    ks = [random_constant(W, rng) for _ in range(m + 1)]
    return points, ks


@check("schur", "kernel_positivity", "sum_ij <K_s(c_i, c_j) k_j, k_i>_2 >= 0", 1e-9)
def _sc_pos(ctx):
    W, rng = ctx.window, ctx.rng
    worst = 0.0
    for _ in range(ctx.count(20)):
        S = random_schur(W, rng)
        for _ in range(5):
            m = int(rng.integers(0, 5))
            worst = max(worst, -sc.kernel_gram_psd(W, S, *_sample_set(W, rng, m)))
    return worst


def non_schur_witness(W: TreeWindow, seed: int, tries: int = 200, factor: float = 1.2):
    """Search for a sample set exhibiting a negative Gram eigenvalue for ``factor * alpha_1^*``.

    Returns ``(attempt, min_eigenvalue)`` for the first negative sample, the
    attempt index doubling as the stream name suffix, or ``None``.
    """
    S = factor * ops.shift_adjoint(W, 1)
    for attempt in range(tries):
        rng = rng_for(seed, f"non-schur-{attempt}")
        m = int(rng.integers(0, 5))
        scale = 0.5 * (1 + attempt % 8)
        points = [random_ctuple(W, rng, scale=scale) for _ in range(m + 1)]
        ks = [random_constant(W, rng) for _ in range(m + 1)]
        G = sc.kernel_gram(W, S, points, ks, require_schur=False)
        lam = float(np.linalg.eigvalsh((G + ops.adjoint(G)) / 2).min())
        if lam < 0:
            return attempt, lam
    return None


@check("schur", "non_schur_witness", "1.2 alpha_1^* is not a Schur multiplier: some Gram matrix is indefinite", 0.0)
def _sc_nonschur(ctx):
    seed = int(ctx.rng.integers(0, 2**63))
    found = non_schur_witness(ctx.window, seed)
    if found is None:
        return 1.0, f"no witness (seed={seed})"
    attempt, lam = found
    return 0.0, f"witness seed={seed} stream=non-schur-{attempt} min_eig={lam:.6e}"


@check("schur", "kernel_consistency", "K_s(c, d) = (K_S^d)^(c), K_S^d = (I - S S^(d)^*) K^d", 1e-10)
def _sc_kcons(ctx):
    W, rng = ctx.window, ctx.rng
    worst = 0.0
    for _ in range(ctx.count(20)):
        S, c, d = random_schur(W, rng), random_ctuple(W, rng), random_ctuple(W, rng)
        worst = max(worst, _maxabs(sc.schur_kernel(W, S, c, d)
                                   - ev.point_eval(W, sc.reproducing_kernel(W, S, d), c)))
    return worst


@check("schur", "adjoint_on_kernels", "M_S^*(K^d k) = S^(d)^* K^d k", 1e-10)
def _sc_msta(ctx):
    W, rng = ctx.window, ctx.rng
    worst = 0.0
    for _ in range(ctx.count(20)):
        S, d, k = random_schur(W, rng), random_ctuple(W, rng), random_constant(W, rng)
        Kk = ev.cauchy_kernel(W, d) @ k
        lhs = ops.causal_part(W, ops.adjoint(S) @ Kk)
        worst = max(worst, _maxabs(lhs - ops.adjoint(ev.point_eval(W, S, d)) @ Kk))
    return worst


@check("schur", "b_s_spectrum", "B_S = I - M_S M_S^* is Hermitian with spectrum in [0, 1]", 1e-10)
def _sc_bspec(ctx):
    W = ctx.window
    worst = 0.0
    for _ in range(ctx.count(5)):
        M = sc.multiplication_superop(W, random_schur(W, ctx.rng))
        B = np.eye(M.shape[0]) - M @ ops.adjoint(M)
        lam = np.linalg.eigvalsh((B + ops.adjoint(B)) / 2)
        worst = max(worst, _maxabs(B - ops.adjoint(B)), -lam.min(), lam.max() - 1)
    return max(worst, 0.0)


@check("schur", "zero_multiplier_space", "H(0) = H_2 with the same inner product", 1e-12)
def _sc_zero(ctx):
    W = ctx.window
    H = sc.dbr_space(W, np.zeros((W.N, W.N), dtype=complex))
    worst = 0.0
    for _ in range(ctx.count(5)):
        F, G = random_causal(W, ctx.rng), random_causal(W, ctx.rng)
        worst = max(worst, abs(H.dbr_inner(F, G) - ops.hs_inner(F, G)))
    return worst


@check("schur", "reproducing_property", "<F, K_S^c k>_H(S) = <F^(c), k>_2", 1e-8)
def _sc_repdbr(ctx):
    W, rng = ctx.window, ctx.rng
    worst = 0.0
    for _ in range(ctx.count(10)):
        S = random_schur(W, rng)
        H = sc.dbr_space(W, S)
        F = H.from_coords(rng.standard_normal(H.rank) + 1j * rng.standard_normal(H.rank))
        c, k = random_ctuple(W, rng), random_constant(W, rng)
        worst = max(worst, abs(H.dbr_inner(F, sc.reproducing_kernel(W, S, c) @ k)
                               - ops.hs_inner(ev.point_eval(W, F, c), k)))
    return worst


# -- realization ----------------------------------------------------------------

@check("realization", "coisometry", "V_j V_j^* = diag(M^_{alpha_j^* alpha_j}, I)", 1e-8)
def _re_quaco(ctx):
    W = ctx.window
    worst = 0.0
    for _ in range(ctx.count(20 if W.N <= 10 else 5)):
        R = sc.realization_ops(W, random_schur(W, ctx.rng))
        worst = max(worst, max(R.coisometry_defect(j) for j in _letters(W)))
    return worst


@check("realization", "invariance", "H(S) is A_j-invariant", 1e-8)
def _re_inv(ctx):
    W = ctx.window
    worst = 0.0
    for _ in range(ctx.count(5)):
        H = sc.dbr_space(W, random_schur(W, ctx.rng))
        worst = max(worst, sc.realization_ops(W, H.S, H).invariance_residual)
    return worst


@check("realization", "colligation_relations",
       "A_l F = (A_j F) alpha_j^* alpha_l; A_j(F c) = (A_j F) alpha_j^* c alpha_j; C(F c) = (C F) c", 1e-10)
def _re_rel(ctx):
    W, rng = ctx.window, ctx.rng
    worst = 0.0
    for _ in range(ctx.count(10)):
        S = random_schur(W, rng)
        R = sc.Realization(W, S, None)
        F, d, c = random_causal(W, rng), random_constant(W, rng), random_constant(W, rng)
        for j in _letters(W):
            aj, aj_s = ops.shift(W, j), ops.shift_adjoint(W, j)
            for l in _letters(W):
                al = ops.shift(W, l)
                worst = max(worst, _maxabs(R.A(l, F) - R.A(j, F) @ aj_s @ al),
                            _maxabs(R.B(l, d) - R.B(j, d) @ aj_s @ al))
            worst = max(worst, _maxabs(R.A(j, F @ c) - R.A(j, F) @ aj_s @ c @ aj),
                        _maxabs(R.B(j, d @ c) - R.B(j, d) @ aj_s @ c @ aj))
        worst = max(worst, _maxabs(R.C(F @ c) - R.C(F) @ c), _maxabs(R.D(d @ c) - R.D(d) @ c))
    return worst


@check("realization", "coefficients", "S_[w] d = w (C A^v B_j d) v^* alpha_j^*, S_[0] d = D d", 1e-9)
def _re_coef(ctx):
    W, rng = ctx.window, ctx.rng
    worst = 0.0
    for _ in range(ctx.count(5)):
        S = random_schur(W, rng)
        R = sc.Realization(W, S, None)
        C = ser.causal_expand(W, S)
        d = random_constant(W, rng)
        worst = max(worst, _maxabs(sc.coeffs_from_realization(R, (), d=d) - C[()] @ d))
        for n in range(1, min(W.depth, 3) + 1):
            for w in words_of_length(W.q, n):
                for v in words_of_length(W.q, n - 1):
                    for j in _letters(W):
                        worst = max(worst, _maxabs(sc.coeffs_from_realization(R, w, v, j, d) - C[w] @ d))
    return worst


@check("realization", "evaluation_operator", "E_c F = F^(c) and (K_S^d)^(c) k = E_c E_d^* k", 1e-8)
def _re_eval(ctx):
    W, rng = ctx.window, ctx.rng
    worst = 0.0
    for _ in range(ctx.count(5)):
        S = random_schur(W, rng)
        R = sc.realization_ops(W, S)
        H = R.space
        c, d, k = random_ctuple(W, rng), random_ctuple(W, rng), random_constant(W, rng)
        F = H.from_coords(rng.standard_normal(H.rank) + 1j * rng.standard_normal(H.rank))
        worst = max(worst, _maxabs(sc.eval_operator(R, c, F) - ev.point_eval(W, F, c)))
        lhs = ev.point_eval(W, sc.reproducing_kernel(W, S, d), c) @ k
        rhs = sc.eval_operator(R, c, sc.eval_adjoint(R, d, k))
        worst = max(worst, _maxabs(lhs - rhs))
    return worst


# -- transfer recursion ---------------------------------------------------------

@check("transfer", "matches_multiplication", "X_{w alpha_j} = A_j X_w + B_j U_w; Y_[w] = w (C X_v + D U_v) v^*", 1e-9)
def _tr_match(ctx):
    W, rng = ctx.window, ctx.rng
    worst = 0.0
    for _ in range(ctx.count(20)):
        S, U = random_schur(W, rng), random_signal(W, rng)
        R = sc.Realization(W, S, None)
        Y = sc.transfer_simulate(R, U)
        oracle = ser.causal_expand(W, S @ ser.causal_reconstruct(U))
        worst = max(worst, max(ops.hs_norm(Y[w] - oracle[w]) for w in set(Y.coeffs) | set(oracle.coeffs)))
    return worst


@check("transfer", "independent_of_v", "Y_[w] does not depend on v with |v| = |w|", 1e-8)
def _tr_alt(ctx):
    W, rng = ctx.window, ctx.rng
    worst = 0.0
    for _ in range(ctx.count(20)):
        R = sc.Realization(W, random_schur(W, rng), None)
        worst = max(worst, sc.transfer_alternate_defect(R, random_signal(W, rng)))
    return worst


# -- Blaschke factors -----------------------------------------------------------

def _blaschke_samples(ctx, n=20):
    for _ in range(ctx.count(n)):
        yield bl.blaschke_data(ctx.window, random_ctuple(ctx.window, ctx.rng))


@check("blaschke", "r_c_cross_check", "R_c = (K^c)^(c)", 1e-12)
def _bl_rc(ctx):
    W = ctx.window
    return max(_maxabs(B.R_c - ev.point_eval(W, ev.cauchy_kernel(W, B.point), B.point)) for B in _blaschke_samples(ctx))


@check("blaschke", "r_c_identity", "R_c = I + c (alpha R_c alpha^*) c^*", 1e-10)
def _bl_imin(ctx):
    W = ctx.window
    al = ops.alpha_column(W)
    worst = 0.0
    for B in _blaschke_samples(ctx):
        crow = ops.c_row(B.c)
        res = B.R_c - np.eye(W.N) - crow @ al @ B.R_c @ ops.adjoint(al) @ ops.adjoint(crow)
        worst = max(worst, _maxabs(ops.compress(W, res, 1)))
    return worst


@check("blaschke", "r_c_lower_bound", "R_c >= I", 1e-10)
def _bl_rbound(ctx):
    return max(max(0.0, 1 - float(np.linalg.eigvalsh(B.R_c).min())) for B in _blaschke_samples(ctx))


@check("blaschke", "l_c_positive", "L_c >= 0", 1e-10)
def _bl_lpos(ctx):
    return max(max(0.0, -float(np.linalg.eigvalsh(B.L_c).min())) for B in _blaschke_samples(ctx))


def _l_c_residuals(W, B):
    al = ops.alpha_column(W)
    crow = ops.c_row(B.c)
    ccol = ops.adjoint(crow)
    I = np.eye(W.q * W.N)
    first = B.L_c @ (ccol @ crow + al @ B.R_c_inv @ ops.adjoint(al)) - I
    second = B.L_c @ (I + ccol @ crow - al @ crow @ B.L_c @ ccol @ ops.adjoint(al)) - I
    third = crow @ B.L_c - B.R_c_inv @ crow @ al @ B.R_c @ ops.adjoint(al)
    return [_maxabs(ops.compress(W, X, 1)) for X in (first, second, third)]


@check("blaschke", "l_c_inverse", "L_c^{-1} = c^* c + alpha R_c^{-1} alpha^*", 1e-9)
def _bl_linv(ctx):
    return max(_l_c_residuals(ctx.window, B)[0] for B in _blaschke_samples(ctx))


@check("blaschke", "l_c_inverse_second_form", "L_c^{-1} = I + c^* c - alpha c L_c c^* alpha^*", 1e-9)
def _bl_linv2(ctx):
    return max(_l_c_residuals(ctx.window, B)[1] for B in _blaschke_samples(ctx))


@check("blaschke", "l_c_intertwining", "c L_c = R_c^{-1} c alpha R_c alpha^*", 1e-9)
def _bl_inter(ctx):
    return max(_l_c_residuals(ctx.window, B)[2] for B in _blaschke_samples(ctx))


@check("blaschke", "isometry", "B_c^* B_c = I", 1e-8)
def _bl_iso(ctx):
    W = ctx.window
    return max(_maxabs(ops.compress(W, ops.adjoint(B.B_c) @ B.B_c - np.eye(W.q * W.N), 1))
               for B in _blaschke_samples(ctx))


@check("blaschke", "coisometry_defect", "B_c B_c^* = I on the full tree (recorded only)", None)
def _bl_coiso(ctx):
    W = ctx.window
    return max(_maxabs(ops.compress(W, B.B_c @ ops.adjoint(B.B_c) - np.eye(W.N), 1)) for B in _blaschke_samples(ctx))


@check("blaschke", "causal_blocks", "each block column of B_c is causal", 1e-12)
def _bl_causal(ctx):
    return max(B.causal_leak for B in _blaschke_samples(ctx))


@check("blaschke", "annihilation", "B_c^(c) = 0 and (B_c G)^(c) = 0", 1e-9)
def _bl_ann(ctx):
    W = ctx.window
    worst = 0.0
    for B in _blaschke_samples(ctx):
        G0 = np.concatenate([random_causal(W, ctx.rng) for _ in _letters(W)])
        worst = max(worst, max(_maxabs(ev.point_eval(W, B.block(j), B.point)) for j in _letters(W)),
                    _maxabs(ev.point_eval(W, B.B_c @ G0, B.point)))
    return worst


def _factorization_defects(W, B, F):
    G = bl.factorize(W, F, B.point, B)
    round_trip = _maxabs(ops.compress(W, B.B_c @ G - F, 2))
    P = ops.level_projection(W, 0, W.depth - 2)
    norm_gap = max(abs(ops.hs_norm(G) - ops.hs_norm(F)), abs(ops.hs_norm(G @ P) - ops.hs_norm(F @ P)))
    causal = all(ops.is_causal(W, X, 1e-12) for X in bl.blocks(W, G))
    return round_trip, norm_gap, causal


def _factorization_samples(ctx):
    W = ctx.window
    for B in _blaschke_samples(ctx):
        G0 = np.concatenate([random_causal(W, ctx.rng) for _ in _letters(W)])
        yield B, B.B_c @ G0
        yield B, bl.make_annihilating(W, random_causal(W, ctx.rng), B.point)


@check("blaschke", "factorization_roundtrip", "F^(c) = 0 => F = B_c G with G causal", 1e-7)
def _bl_fac(ctx):
    worst = 0.0
    for B, F in _factorization_samples(ctx):
        rt, _, causal = _factorization_defects(ctx.window, B, F)
        worst = max(worst, rt if causal else np.inf)
    return worst


@check("blaschke", "factorization_norm", "||G||_2 = ||F||_2", 1e-7)
def _bl_facnorm(ctx):
    return max(_factorization_defects(ctx.window, B, F)[1] for B, F in _factorization_samples(ctx))
