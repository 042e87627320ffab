import itertools

import pytest

from treeschur.tree import (EMPTY, Order, as_word, decompose, dist, format_word, is_reducible,
                            make_window, meet, order_rel, parse_word, words_of_length)


def w(s):
    return parse_word(s, 2)


@pytest.mark.parametrize("q,L,N", [(2, 2, 7), (1, 3, 4), (2, 3, 15), (3, 2, 13)])
def test_window_size(q, L, N):
    W = make_window(q, L)
    assert W.N == N
    assert len(W.nodes) == N


def test_path_window():
    W = make_window(1, 3)
    assert W.nodes == ((), (1,), (1, 1), (1, 1, 1))


def test_enumeration_is_level_major_lex():
    W = make_window(2, 2)
    assert [format_word(t, 2) for t in W.nodes] == ["", "1", "2", "11", "12", "21", "22"]


def test_index_is_bijection(w23):
    assert all(w23.nodes[w23.index[t]] == t for t in w23.nodes)
    assert sorted(w23.index.values()) == list(range(w23.N))


def test_children_and_parent(w23):
    for t in w23.nodes:
        if len(t) < w23.depth:
            assert w23.children(t) == [t + (j,) for j in (1, 2)]
        else:
            assert w23.children(t) == []
        assert w23.parent(t) == (t[:-1] if t else None)
    for k in range(4):
        assert len(w23.level_nodes(k)) == 2**k


def test_make_window_errors():
    with pytest.raises(ValueError):
        make_window(0, 2)
    with pytest.raises(ValueError):
        make_window(2, 0)
    with pytest.raises(MemoryError):
        make_window(4, 10)


def test_meet():
    assert meet(w("11"), w("12")) == w("1")
    assert meet(w("1"), w("2")) == EMPTY
    assert meet(w("12"), w("12")) == w("12")


def test_dist():
    assert dist(w("11"), w("12")) == 2
    assert dist(EMPTY, w("21")) == 2
    assert dist(w("212"), w("212")) == 0


def test_order_rel():
    assert order_rel(w("1"), w("22")) == Order.PRECEDES
    assert order_rel(w("22"), w("1")) == Order.SUCCEEDS
    assert order_rel(w("11"), w("12")) == Order.EQUIVALENT
    assert order_rel(w("2"), w("2")) == Order.EQUIVALENT


def test_decompose():
    assert decompose(w("11"), w("12")) == (w("1"), w("1"), w("2"))
    assert decompose(w("2"), EMPTY) == (EMPTY, w("2"), EMPTY)


def test_is_reducible():
    assert is_reducible(w("11"), w("12"))
    assert not is_reducible(w("1"), w("2"))
    assert not is_reducible(EMPTY, w("12"))


def test_metric_axioms_exhaustive(w23):
    nodes = w23.nodes
    for t, s in itertools.product(nodes, nodes):
        assert dist(t, s) == dist(s, t)
        assert (dist(t, s) == 0) == (t == s)
    for t, s, r in itertools.product(nodes, nodes, nodes):
        assert dist(t, s) <= dist(t, r) + dist(r, s)


def test_decompose_exhaustive(w23):
    for t, s in itertools.product(w23.nodes, w23.nodes):
        m, w1, w2 = decompose(t, s)
        assert m + w1 == t and m + w2 == s
        assert not is_reducible(w1, w2)
        # uniqueness: the irreducible split is the one through the meet
        assert m == meet(t, s)


def test_order_matches_levels(w23):
    for t, s in itertools.product(w23.nodes, w23.nodes):
        rel = order_rel(t, s)
        m = meet(t, s)
        assert (rel == Order.EQUIVALENT) == (len(t) == len(s))
        precedes_or_eq = dist(t, m) <= dist(s, m)
        assert (rel in (Order.PRECEDES, Order.EQUIVALENT)) == (len(t) <= len(s)) == precedes_or_eq


def test_word_serialization():
    assert format_word(EMPTY, 2) == ""
    assert format_word((1, 2, 2), 2) == "122"
    assert format_word((10, 3), 12) == "10,3"
    assert parse_word("10,3", 12) == (10, 3)
    assert parse_word("", 12) == EMPTY
    for t in words_of_length(3, 3):
        assert parse_word(format_word(t, 3), 3) == t
    with pytest.raises(ValueError):
        parse_word("13", 2)


def test_as_word_rejects_nonpositive():
    with pytest.raises(ValueError):
        as_word((0, 1))
