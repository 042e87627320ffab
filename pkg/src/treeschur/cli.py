"""Command-line interface: ``treeschur {verify,simulate,blaschke,factor,gen}``.

Exit status is 0 when everything passes, 1 when a check fails and 2 for
usage, input or I/O errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import blaschke as bl
from . import ops
from .checks import SUITES, TOL_ENV, SuiteConfig, run_suite
from .instances import KINDS, gen_random
from .io import SchemaError, WindowArray, dumps, load, save
from .schur import NotSchurError, RealizationError, realization_ops, transfer_simulate
from .series import CausalSeries, NotCausalError, causal_expand
from .tree import make_window

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str, kinds: tuple[str, ...]):
    try:
        obj = load(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except SchemaError as exc:
        raise InputError(f"{path}: {exc}") from None
    kind = obj.kind if isinstance(obj, WindowArray) else "series"
    if kind not in kinds:
        raise InputError(f"{path}: expected {' or '.join(kinds)}, got {kind}")
    return obj


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text + "\n")
        return
    try:
        Path(path).write_text(text + "\n")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from None


def _same_window(a, b, what: str) -> None:
    if a.window != b.window:
        raise InputError(f"{what}: windows differ ({a.window.q},{a.window.depth}) vs "
                         f"({b.window.q},{b.window.depth})")


def cmd_verify(args) -> int:
    suites = ("all",) if args.suite is None else tuple(args.suite)
    try:
        cfg = SuiteConfig(q=args.q, depth=args.depth, seed=args.seed, suites=suites, tol=args.tol)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = run_suite(cfg)
    for r in report.records:
        status = "PASS" if r.passed else "FAIL"
        tol = "info" if r.tolerance is None else f"{r.tolerance:.0e}"
        extra = f"  {r.note}" if r.note else ""
        print(f"{status}  {r.suite + '.' + r.check:<40} defect={r.defect:.3e}  tol={tol}{extra}")
    if args.out:
        _write(args.out, json.dumps(report.to_json(), indent=2, sort_keys=True))
    n_fail = sum(not r.passed for r in report.records)
    print(f"{len(report.records) - n_fail}/{len(report.records)} checks passed")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_simulate(args) -> int:
    S = _load(args.multiplier, ("operator",))
    U = _load(args.input, ("operator", "series"))
    if isinstance(U, WindowArray):
        if not ops.is_causal(U.window, U.data):
            raise InputError(f"{args.input}: input operator is not causal")
        U = causal_expand(U.window, U.data)
    if not isinstance(U, CausalSeries):
        raise InputError(f"{args.input}: expected a causal series")
    _same_window(S, U, "simulate")
    try:
        R = realization_ops(S.window, S.data)
        Y = transfer_simulate(R, U)
    except (NotSchurError, NotCausalError) as exc:
        raise InputError(f"{args.multiplier}: {exc}") from None
    except RealizationError as exc:
        print(f"realization check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _write(args.out, dumps(Y))
    return EXIT_OK


def _ctuple(path: str):
    return _load(path, ("ctuple",))


def cmd_blaschke(args) -> int:
    c = _ctuple(args.c)
    W = c.window
    try:
        B = bl.blaschke_data(W, c.data)
    except (ValueError, ArithmeticError) as exc:
        raise InputError(f"{args.c}: {exc}") from None
    iso = float(np.abs(ops.compress(W, ops.adjoint(B.B_c) @ B.B_c - np.eye(W.q * W.N), 1)).max())
    coiso = float(np.abs(ops.compress(W, B.B_c @ ops.adjoint(B.B_c) - np.eye(W.N), 1)).max())
    doc = {
        "q": W.q, "depth": W.depth,
        "R_c_spectrum": np.linalg.eigvalsh(B.R_c).tolist(),
        "L_c_spectrum": np.linalg.eigvalsh(B.L_c).tolist(),
        "isometry_defect": iso,
        "coisometry_defect": coiso,
    }
    _write(args.out, json.dumps(doc, indent=2))
    return EXIT_OK


def cmd_factor(args) -> int:
    F = _load(args.f, ("operator",))
    c = _ctuple(args.c)
    _same_window(F, c, "factor")
    W = F.window
    try:
        B = bl.blaschke_data(W, c.data)
        target = bl.make_annihilating(W, F.data, B.point) if args.project else F.data
        G = bl.factorize(W, target, B.point, B)
    except (ValueError, ArithmeticError) as exc:
        raise InputError(f"{args.f}: {exc}") from None
    residual = float(np.abs(ops.compress(W, B.B_c @ G - target, 2)).max())
    print(f"factorization residual {residual:.3e}", file=sys.stderr)
    _write(args.out, dumps(WindowArray(W, G, "block-column")))
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        W = make_window(args.q, args.depth)
    except (ValueError, MemoryError) as exc:
        raise InputError(str(exc)) from None
    obj = gen_random(args.kind, W, args.seed)
    if isinstance(obj, np.ndarray):
        obj = WindowArray(W, obj, "ctuple" if args.kind == "ctuple" else "operator")
    _write(args.out, dumps(obj))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treeschur", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run invariant suites and report defects")
    v.add_argument("--q", type=int, default=2)
    v.add_argument("--depth", type=int, default=3)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--suite", action="append", choices=SUITES + ("all",),
                   help="suite to run (repeatable, default all)")
    v.add_argument("--tol", type=float, default=None,
                   help=f"override every tolerance (default from ${TOL_ENV} if set)")
    v.add_argument("--out", help="write the JSON report here")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", help="run the transfer recursion for S applied to U")
    s.add_argument("--multiplier", required=True)
    s.add_argument("--input", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_simulate)

    b = sub.add_parser("blaschke", help="spectra and defects of the Blaschke data at c")
    b.add_argument("--c", required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_blaschke)

    f = sub.add_parser("factor", help="factor F = B_c G for F vanishing at c")
    f.add_argument("--f", required=True)
    f.add_argument("--c", required=True)
    f.add_argument("--project", action="store_true",
                   help="first replace F by F - K^c R_c^{-1} F^(c), which vanishes at c")
    f.add_argument("--out")
    f.set_defaults(func=cmd_factor)

    g = sub.add_parser("gen", help="generate a seeded random instance")
    g.add_argument("--kind", required=True, choices=KINDS)
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--depth", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
