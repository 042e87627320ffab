import json

import numpy as np
import pytest

from treeschur import ops
from treeschur.instances import KINDS, gen_random
from treeschur.io import SchemaError, WindowArray, dumps, from_json, load, save, to_json
from treeschur.series import CausalSeries, causal_expand, two_index_rep
from treeschur.tree import make_window


@pytest.mark.parametrize("kind", KINDS)
def test_gen_is_deterministic(kind, w23):
    a, b = gen_random(kind, w23, 7), gen_random(kind, w23, 7)
    if isinstance(a, CausalSeries):
        assert a.coeffs.keys() == b.coeffs.keys()
        assert all(np.array_equal(a[w], b[w]) for w in a.coeffs)
    else:
        np.testing.assert_array_equal(a, b)
        assert not np.array_equal(a, gen_random(kind, w23, 8))


def test_gen_kinds(w23):
    S = gen_random("schur", w23, 1)
    assert ops.is_causal(w23, S)
    assert ops.op_norm(S) <= 1 - 1e-3
    assert np.isclose(ops.op_norm(S), 1 / 1.05)
    F = gen_random("causal", w23, 1)
    assert ops.is_causal(w23, F)
    assert ops.is_constant(w23, gen_random("constant", w23, 1))
    c = gen_random("ctuple", w23, 1)
    assert c.shape == (2, w23.N, w23.N)
    assert all(ops.is_constant(w23, cj) for cj in c)
    with pytest.raises(ValueError):
        gen_random("banana", w23, 1)


def test_causal_mask_is_exact(w23):
    F = gen_random("causal", w23, 3)
    lv = w23.levels
    mask = lv[:, None] >= lv[None, :]
    assert np.all(F[~mask] == 0) and np.all(F[mask] != 0)


def test_operator_roundtrip(tmp_path, w23, rng):
    M = rng.standard_normal((w23.N, w23.N)) + 1j * rng.standard_normal((w23.N, w23.N))
    path = tmp_path / "op.json"
    save(WindowArray(w23, M), path)
    back = load(path)
    assert back.window == w23 and back.kind == "operator"
    np.testing.assert_array_equal(back.data, M)
    doc = json.loads(path.read_text())
    assert doc["layout"] == "level-major-lex"
    assert doc["entries"][1] == [M[0, 1].real, M[0, 1].imag]


def test_ctuple_and_block_roundtrip(w22, rng):
    c = gen_random("ctuple", w22, 4)
    back = from_json(json.loads(dumps(WindowArray(w22, c, "ctuple"))))
    np.testing.assert_array_equal(back.data, c)
    G = rng.standard_normal((2 * w22.N, w22.N)).astype(complex)
    back = from_json(to_json(WindowArray(w22, G, "block-column")))
    np.testing.assert_array_equal(back.data, G)


def test_series_roundtrip(w23):
    W = w23
    S = 0.5 * ops.shift_adjoint(W, 1) + 2 * np.eye(W.N) + ops.word_op(W, (2, 1)).conj().T
    C = causal_expand(W, S)
    assert len(C.coeffs) == 3
    back = from_json(json.loads(dumps(C)))
    assert back.coeffs.keys() == C.coeffs.keys()
    assert all(np.array_equal(back[w], C[w]) for w in C.coeffs)
    doc = to_json(C)
    assert set(doc["coeffs"]) == {"", "1", "21"}


def test_two_index_roundtrip(w22, rng):
    R = two_index_rep(w22, rng.standard_normal((w22.N, w22.N)))
    back = from_json(json.loads(dumps(R)))
    assert back.coeffs.keys() == R.coeffs.keys()
    assert "1|2" in to_json(R)["coeffs"]


def test_wide_alphabet_keys():
    W = make_window(10, 1)
    C = CausalSeries(W, {(10,): np.eye(W.N)})
    assert set(to_json(C)["coeffs"]) == {"10"}
    assert set(from_json(to_json(C)).coeffs) == {(10,)}


def test_schema_errors(w22):
    doc = to_json(WindowArray(w22, np.eye(w22.N)))
    bad = dict(doc, entries=doc["entries"][:-1])
    with pytest.raises(SchemaError) as err:
        from_json(bad)
    assert err.value.path == "$.entries"
    with pytest.raises(SchemaError) as err:
        from_json({k: v for k, v in doc.items() if k != "q"})
    assert err.value.path == "$.q"
    with pytest.raises(SchemaError) as err:
        from_json(dict(doc, layout="column-major"))
    assert err.value.path == "$.layout"
    bad_entries = [list(e) for e in doc["entries"]]
    bad_entries[3] = ["x", 0]
    with pytest.raises(SchemaError) as err:
        from_json(dict(doc, entries=bad_entries))
    assert err.value.path == "$.entries[3]"
    with pytest.raises(SchemaError):
        from_json({"q": 2, "depth": 2, "kind": "causal", "coeffs": {"13": doc["entries"]}})


def test_invalid_json_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(SchemaError):
        load(p)
