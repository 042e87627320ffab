"""
Windows, shifts and series
==========================

A depth-L window of the q-ary tree holds every word of length at most L.
Operators are dense matrices over those words and the shifts act by
dropping or appending a letter.
"""

import numpy as np

from treeschur import ops
from treeschur.instances import random_causal, rng_for
from treeschur.series import causal_expand, causal_reconstruct
from treeschur.tree import format_word, make_window

W = make_window(2, 3)
print("nodes:", [format_word(t, 2) or "()" for t in W.nodes])

# %%
# The shift relations hold exactly, with a level projection wherever the
# window edge cuts a relation short.

a1, a2 = ops.shift(W, 1), ops.shift(W, 2)
top = ops.level_projection(W, 0, W.depth - 1)
print("a1 a1* == P_{<=L-1}:", np.array_equal(a1 @ a1.conj().T, top))
print("a1 a2* == 0:        ", not np.any(a1 @ a2.conj().T))
lower = sum(ops.shift_adjoint(W, j) @ ops.shift(W, j) for j in (1, 2))
print("sum a_j* a_j == P_{>=1}:", np.array_equal(lower, ops.level_projection(W, 1)))

# %%
# A causal operator expands as a sum of word shifts with constant
# coefficients.  The expansion is a reshuffle of entries, so it is exact.

S = random_causal(W, rng_for(0, "demo"))
C = causal_expand(W, S)
print(len(C.coeffs), "coefficients, words:", sorted(format_word(w, 2) for w in C.coeffs)[:6], "...")
print("exact round trip:", np.array_equal(causal_reconstruct(C), S))
print("norm partition error:", abs(sum(ops.hs_norm(M) ** 2 for M in C.coeffs.values()) - ops.hs_norm(S) ** 2))
