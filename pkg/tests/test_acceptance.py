"""Acceptance criteria, each at its stated size, sample count and tolerance.

Every test appends one PASS/FAIL line to the session summary.
"""
import numpy as np
import pytest

import scalar_oracle as so
from conftest import ACCEPTANCE_LINES
from treeschur.checks import REGISTRY, Context, non_schur_witness
from treeschur.evaluation import cauchy_kernel, point_eval
from treeschur.instances import random_schur, random_signal, rng_for
from treeschur.schur import realization_ops, schur_kernel, transfer_simulate
from treeschur.series import causal_reconstruct
from treeschur.tree import make_window

SEED = 20240601


def run(key, q=2, L=3, seed=SEED):
    out = REGISTRY[key].func(Context(make_window(q, L), rng_for(seed, key)))
    return out if isinstance(out, tuple) else (float(out), "")


def record(number, title, rows):
    """rows: (label, defect, tol, ok)"""
    ok = all(r[3] for r in rows)
    detail = "; ".join(f"{label} {defect:.2e} (tol {tol:g})" for label, defect, tol, _ in rows)
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def leq(label, defect, tol):
    return label, defect, tol, defect <= tol


def test_criterion_01_truncated_cuntz():
    rows = []
    for q, L in [(1, 8), (2, 3), (3, 2)]:
        for key in ("cuntz.orthogonality", "cuntz.completeness"):
            rows.append(leq(f"{key.split('.')[1]}@({q},{L})", run(key, q, L)[0], 0.0))
    record(1, "truncated Cuntz relations exact", rows)


def test_criterion_02_representation_roundtrips():
    rows = []
    for q, L in [(1, 8), (2, 2), (2, 3), (3, 2)]:
        for key in ("series.two_index_roundtrip", "series.causal_roundtrip"):
            rows.append(leq(f"{key.split('.')[1]}@({q},{L})", run(key, q, L)[0], 0.0))
    record(2, "representation round-trips exact (20 operators each)", rows)


def test_criterion_03_norm_chain_and_partition():
    rows = [leq("norm chain", run("series.norm_chain")[0], 1e-10),
            leq("HS partition", run("series.hardy_norm")[0], 1e-10),
            leq("band partition", run("cuntz.band_partition")[0], 1e-10)]
    record(3, "norm chain and HS partition (20 operators)", rows)


def test_criterion_04_cauchy_formula():
    record(4, "Cauchy formula (50 triples)", [leq("pairing", run("eval.cauchy_formula")[0], 1e-10)])


def test_criterion_05_point_evaluation_algebra():
    rows = [leq("linearity", run("eval.linearity")[0], 1e-12),
            leq("multiplicativity", run("eval.multiplicativity")[0], 1e-10)]
    record(5, "point-evaluation algebra (50 cases each)", rows)


def test_criterion_06_kernel_positivity():
    neg = run("schur.kernel_positivity")[0]
    W = make_window(2, 3)
    found = non_schur_witness(W, SEED)
    witness = found[1] if found is not None else np.inf
    rows = [leq("-min eig over 20x5 Gram samples", neg, 1e-9),
            ("non-Schur 1.2 alpha_1^* min eig", witness, 0.0, witness < 0)]
    where = f"seed {SEED}, stream non-schur-{found[0]}" if found is not None else "none found"
    record(6, f"kernel positivity and non-Schur witness ({where})", rows)


def test_criterion_07_coisometry():
    rows = [leq("V V^* defect @(2,2) x20", run("realization.coisometry", 2, 2)[0], 1e-8),
            leq("V V^* defect @(2,3) x5", run("realization.coisometry", 2, 3)[0], 1e-8)]
    record(7, "coisometric realization", rows)


def test_criterion_08_transfer_recursion():
    rows = [leq("max ||Y_[w] - (SU)_[w]||_2", run("transfer.matches_multiplication")[0], 1e-9),
            leq("alternate v", run("transfer.independent_of_v")[0], 1e-8)]
    record(8, "transfer recursion equals multiplication (20 pairs)", rows)


def test_criterion_09_blaschke():
    rows = [leq("r_c cross-check", run("blaschke.r_c_cross_check")[0], 1e-12),
            leq("L_c^-1 form", run("blaschke.l_c_inverse")[0], 1e-9),
            leq("L_c^-1 second form", run("blaschke.l_c_inverse_second_form")[0], 1e-9),
            leq("intertwining", run("blaschke.l_c_intertwining")[0], 1e-9),
            leq("isometry", run("blaschke.isometry")[0], 1e-8),
            leq("factorization round-trip", run("blaschke.factorization_roundtrip")[0], 1e-7),
            leq("norm preservation", run("blaschke.factorization_norm")[0], 1e-7)]
    record(9, "Blaschke suite (20 random c each)", rows)


def test_criterion_10_scalar_degeneration():
    W = make_window(1, 8)
    rng = rng_for(SEED, "scalar")
    ev_err = ker_err = sk_err = rec_err = 0.0
    for _ in range(20):
        S, U = random_schur(W, rng), random_signal(W, rng)
        c = (rng.standard_normal(W.N) + 1j * rng.standard_normal(W.N)) / 2
        d = (rng.standard_normal(W.N) + 1j * rng.standard_normal(W.N)) / 2
        ct, dt = np.diag(c)[None], np.diag(d)[None]
        S_l = [list(map(complex, row)) for row in S]
        ev_err = max(ev_err, np.abs(np.diag(point_eval(W, S, ct)) - so.point_eval(S_l, list(c))).max())
        ker_err = max(ker_err, np.abs(cauchy_kernel(W, ct) - np.array(so.cauchy_kernel(list(c)))).max())
        sk_err = max(sk_err, np.abs(np.diag(schur_kernel(W, S, ct, dt)) - so.schur_kernel(S_l, list(c), list(d))).max())
        Y = transfer_simulate(realization_ops(W, S), U)
        U_l = [list(map(complex, row)) for row in causal_reconstruct(U)]
        for n, seq in so.coefficients(so.apply(S_l, U_l)).items():
            rec_err = max(rec_err, np.abs(np.diag(Y[(1,) * n])[:len(seq)] - seq).max())
    rows = [leq("point evaluation", ev_err, 1e-10), leq("Cauchy kernel", ker_err, 1e-10),
            leq("Schur kernel", sk_err, 1e-10), leq("recursion", rec_err, 1e-10)]
    record(10, "q=1 path window matches scalar time-varying oracle", rows)
