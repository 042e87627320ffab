"""JSON serialization of window operators, tuples and series.

Matrices are written row-major over the canonical node index as lists of
``[re, im]`` pairs.  Floats use Python's shortest round-trip representation
(at most 17 significant digits), so ``load(save(x))`` is bit-exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .series import CausalSeries, TwoIndexRep
from .tree import TreeWindow, format_word, make_window, parse_word

LAYOUT = "level-major-lex"


class SchemaError(ValueError):
    """Malformed document; the message starts with the offending JSON path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True, eq=False)
class WindowArray:
    """A matrix-valued object tied to a window.

    ``kind`` is ``"operator"`` (N x N), ``"ctuple"`` (q x N x N) or
    ``"block-column"`` (qN x N, e.g. a factorization output).
    """

    window: TreeWindow
    data: np.ndarray
    kind: str = "operator"


def _entries(M: np.ndarray) -> list[list[float]]:
    flat = np.asarray(M, dtype=complex).ravel()
    return [[float(z.real), float(z.imag)] for z in flat]


def _matrix(obj, path: str, shape: tuple[int, int]) -> np.ndarray:
    if not isinstance(obj, list):
        raise SchemaError(path, "expected a list of [re, im] pairs")
    n = shape[0] * shape[1]
    if len(obj) != n:
        raise SchemaError(path, f"expected {n} entries for a {shape[0]}x{shape[1]} matrix, got {len(obj)}")
    out = np.empty(n, dtype=complex)
    for i, pair in enumerate(obj):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)):
            raise SchemaError(f"{path}[{i}]", "expected [re, im] numbers")
        out[i] = complex(pair[0], pair[1])
    return out.reshape(shape)


def _window(doc: dict, path: str = "$") -> TreeWindow:
    for key in ("q", "depth"):
        if key not in doc:
            raise SchemaError(f"{path}.{key}", "missing field")
        if not isinstance(doc[key], int) or isinstance(doc[key], bool) or doc[key] < 1:
            raise SchemaError(f"{path}.{key}", "expected a positive integer")
    return make_window(doc["q"], doc["depth"])


def to_json(obj) -> dict:
    if isinstance(obj, CausalSeries):
        W = obj.window
        coeffs = {format_word(w, W.q): _entries(M) for w, M in sorted(obj.coeffs.items())}
        return {"q": W.q, "depth": W.depth, "kind": "causal", "coeffs": coeffs}
    if isinstance(obj, TwoIndexRep):
        W = obj.window
        coeffs = {f"{format_word(a, W.q)}|{format_word(b, W.q)}": _entries(M)
                  for (a, b), M in sorted(obj.coeffs.items())}
        return {"q": W.q, "depth": W.depth, "kind": "two-index", "coeffs": coeffs}
    if isinstance(obj, WindowArray):
        W = obj.window
        head = {"q": W.q, "depth": W.depth}
        if obj.kind == "operator":
            return {**head, "layout": LAYOUT, "entries": _entries(obj.data)}
        if obj.kind == "ctuple":
            return {**head, "components": [_entries(c) for c in obj.data]}
        if obj.kind == "block-column":
            blocks = [obj.data[j * W.N:(j + 1) * W.N] for j in range(W.q)]
            return {**head, "layout": LAYOUT, "blocks": [_entries(b) for b in blocks]}
        raise ValueError(f"unknown array kind {obj.kind!r}")
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_json(doc):
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    W = _window(doc)
    shape = (W.N, W.N)
    if "kind" in doc:
        kind = doc["kind"]
        coeffs = doc.get("coeffs")
        if not isinstance(coeffs, dict):
            raise SchemaError("$.coeffs", "expected an object keyed by words")
        if kind == "causal":
            out = {}
            for key, M in coeffs.items():
                out[_word(key, W, f"$.coeffs[{key!r}]")] = _matrix(M, f"$.coeffs[{key!r}]", shape)
            return CausalSeries(W, out)
        if kind == "two-index":
            out = {}
            for key, M in coeffs.items():
                p = f"$.coeffs[{key!r}]"
                if key.count("|") != 1:
                    raise SchemaError(p, "two-index keys look like '<w1>|<w2>'")
                a, b = key.split("|")
                out[(_word(a, W, p), _word(b, W, p))] = _matrix(M, p, shape)
            return TwoIndexRep(W, out)
        raise SchemaError("$.kind", f"unknown series kind {kind!r}")
    if "components" in doc:
        comps = doc["components"]
        if not isinstance(comps, list) or len(comps) != W.q:
            raise SchemaError("$.components", f"expected {W.q} component matrices")
        data = np.stack([_matrix(c, f"$.components[{j}]", shape) for j, c in enumerate(comps)])
        return WindowArray(W, data, "ctuple")
    if doc.get("layout") != LAYOUT:
        raise SchemaError("$.layout", f"expected {LAYOUT!r}")
    if "blocks" in doc:
        blocks = doc["blocks"]
        if not isinstance(blocks, list) or len(blocks) != W.q:
            raise SchemaError("$.blocks", f"expected {W.q} block matrices")
        data = np.concatenate([_matrix(b, f"$.blocks[{j}]", shape) for j, b in enumerate(blocks)])
        return WindowArray(W, data, "block-column")
    if "entries" not in doc:
        raise SchemaError("$.entries", "missing field")
    return WindowArray(W, _matrix(doc["entries"], "$.entries", shape), "operator")


def _word(key: str, W: TreeWindow, path: str):
    try:
        w = parse_word(key, W.q)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None
    if len(w) > W.depth:
        raise SchemaError(path, f"word longer than depth {W.depth}")
    return w


def dumps(obj) -> str:
    return json.dumps(to_json(obj))


def save(obj, path) -> None:
    Path(path).write_text(dumps(obj))


def load(path):
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON ({exc})") from None
    return from_json(doc)
