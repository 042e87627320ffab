"""Seeded random instances.

All draws go through numpy's PCG64 so a given ``(kind, q, depth, seed)``
always produces the same arrays.  Named streams derive independent
generators from one seed.
"""
from __future__ import annotations

import zlib

import numpy as np

from . import ops
from .series import CausalSeries, causal_expand
from .tree import TreeWindow

RNG_ALGORITHM = "numpy.random.PCG64"
SCHUR_MARGIN = 0.05
KINDS = ("causal", "constant", "schur", "ctuple", "signal")


def rng_for(seed: int, stream: str | None = None) -> np.random.Generator:
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF]
    if stream is not None:
        entropy.append(zlib.crc32(stream.encode()))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard circular complex normal entries (unit variance)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_causal(W: TreeWindow, rng: np.random.Generator) -> np.ndarray:
    return ops.causal_part(W, complex_gaussian(rng, (W.N, W.N)))


def random_constant(W: TreeWindow, rng: np.random.Generator) -> np.ndarray:
    return ops.band(W, complex_gaussian(rng, (W.N, W.N)), 0)


def random_schur(W: TreeWindow, rng: np.random.Generator, margin: float = SCHUR_MARGIN) -> np.ndarray:
    S = random_causal(W, rng)
    return S / (ops.op_norm(S) * (1 + margin))


def random_ctuple(W: TreeWindow, rng: np.random.Generator, scale: float | None = None) -> np.ndarray:
    scale = 1 / (2 * np.sqrt(W.q)) if scale is None else scale
    return np.stack([random_constant(W, rng) for _ in range(W.q)]) * scale


def random_signal(W: TreeWindow, rng: np.random.Generator) -> CausalSeries:
    return causal_expand(W, random_causal(W, rng))


def random_diagonal(W: TreeWindow, rng: np.random.Generator) -> np.ndarray:
    return np.diag(complex_gaussian(rng, W.N))


_GENERATORS = {
    "causal": random_causal,
    "constant": random_constant,
    "schur": random_schur,
    "ctuple": random_ctuple,
    "signal": random_signal,
}


def gen_random(kind: str, W: TreeWindow, seed: int, stream: str | None = None):
    """Deterministic random object of the requested kind."""
    try:
        gen = _GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}") from None
    return gen(W, rng_for(seed, stream))
