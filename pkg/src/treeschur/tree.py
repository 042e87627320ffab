"""Finite rooted windows of the homogeneous tree.

A node is addressed by the word of primitive shifts leading to it from the
window root, so words and nodes share one representation: a tuple of letters
in ``1..q``.  The parent of a node (the direction of the fixed boundary point)
is obtained by dropping the last letter.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import product

import numpy as np

Word = tuple[int, ...]

EMPTY: Word = ()

#: default bound on the number of window nodes
MAX_NODES = 10_000


class Order(str, Enum):
    PRECEDES = "precedes"
    SUCCEEDS = "succeeds"
    EQUIVALENT = "equivalent"


def format_word(w: Word, q: int) -> str:
    """Serialize a word: plain digits for q <= 9, comma separated otherwise."""
    if q <= 9:
        return "".join(str(i) for i in w)
    return ",".join(str(i) for i in w)


def parse_word(s: str, q: int) -> Word:
    if s == "":
        return EMPTY
    letters = s.split(",") if q > 9 else list(s)
    try:
        w = tuple(int(x) for x in letters)
    except ValueError:
        raise ValueError(f"malformed word {s!r}") from None
    if any(not 1 <= i <= q for i in w):
        raise ValueError(f"word {s!r} uses letters outside 1..{q}")
    return w


def as_word(w) -> Word:
    """Accept a tuple, a list or a digit string (q <= 9) and return a word."""
    out = tuple(int(ch) for ch in w)
    if any(i < 1 for i in out):
        raise ValueError(f"letters must be >= 1, got {out}")
    return out


def meet(t: Word, s: Word) -> Word:
    """Longest common prefix of two nodes."""
    n = 0
    for a, b in zip(t, s):
        if a != b:
            break
        n += 1
    return t[:n]


def dist(t: Word, s: Word) -> int:
    m = len(meet(t, s))
    return (len(t) - m) + (len(s) - m)


def order_rel(t: Word, s: Word) -> Order:
    """Compare two nodes in the partial order induced by the boundary point.

    ``t`` precedes ``s`` when ``t`` is no farther from the meet than ``s``;
    in a rooted window that is a comparison of levels.
    """
    m = meet(t, s)
    dt, ds = dist(t, m), dist(s, m)
    if dt == ds:
        return Order.EQUIVALENT
    return Order.PRECEDES if dt < ds else Order.SUCCEEDS


def decompose(t: Word, s: Word) -> tuple[Word, Word, Word]:
    """Return ``(m, w1, w2)`` with ``t = m w1``, ``s = m w2`` and (w1, w2) irreducible."""
    m = meet(t, s)
    return m, t[len(m):], s[len(m):]


def is_reducible(w1: Word, w2: Word) -> bool:
    return len(w1) > 0 and len(w2) > 0 and w1[0] == w2[0]


def words_of_length(q: int, n: int) -> list[Word]:
    return [tuple(p) for p in product(range(1, q + 1), repeat=n)]


@dataclass(frozen=True, eq=False)
class TreeWindow:
    """All words of length <= ``depth`` over ``q`` letters.

    Nodes are enumerated level-major and lexicographically inside a level;
    ``nodes[i]`` is the word of the node with canonical index ``i``.
    """

    q: int
    depth: int
    nodes: tuple[Word, ...] = field(repr=False)
    index: dict[Word, int] = field(repr=False)

    @property
    def N(self) -> int:
        return len(self.nodes)

    @cached_property
    def levels(self) -> np.ndarray:
        lv = np.array([len(w) for w in self.nodes], dtype=int)
        lv.flags.writeable = False
        return lv

    def level_slice(self, k: int) -> slice:
        start = sum(self.q**i for i in range(k))
        return slice(start, start + self.q**k)

    def level_nodes(self, k: int) -> tuple[Word, ...]:
        return self.nodes[self.level_slice(k)]

    def parent(self, w: Word) -> Word | None:
        return w[:-1] if w else None

    def children(self, w: Word) -> list[Word]:
        if len(w) >= self.depth:
            return []
        return [w + (j,) for j in range(1, self.q + 1)]

    def __contains__(self, w) -> bool:
        return tuple(w) in self.index

    def __eq__(self, other) -> bool:
        if not isinstance(other, TreeWindow):
            return NotImplemented
        return (self.q, self.depth) == (other.q, other.depth)

    def __hash__(self) -> int:
        return hash((self.q, self.depth))


def make_window(q: int, depth: int, max_nodes: int = MAX_NODES) -> TreeWindow:
    if q < 1:
        raise ValueError(f"tree order q must be >= 1, got {q}")
    if depth < 1:
        raise ValueError(f"window depth must be >= 1, got {depth}")
    n = sum(q**k for k in range(depth + 1))
    if n > max_nodes:
        raise MemoryError(f"window (q={q}, depth={depth}) has {n} nodes, cap is {max_nodes}")
    nodes = tuple(w for k in range(depth + 1) for w in words_of_length(q, k))
    return TreeWindow(q, depth, nodes, {w: i for i, w in enumerate(nodes)})
