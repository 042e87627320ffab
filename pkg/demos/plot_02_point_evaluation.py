"""
Point evaluation and the Cauchy kernel
======================================

Evaluating a causal operator at a q-tuple of constants c sums its bands
against powers of c alpha.  On a finite window every such power series
stops after L terms.
"""

import numpy as np

from treeschur import ops
from treeschur.evaluation import cauchy_kernel, point_eval, separating_point
from treeschur.instances import random_causal, random_constant, random_ctuple, rng_for
from treeschur.tree import make_window

W = make_window(2, 3)
rng = rng_for(1, "demo")
F, G = random_causal(W, rng), random_causal(W, rng)
c = random_ctuple(W, rng)

# %%
# Evaluation is multiplicative in the twisted sense (FG)^(c) = (F^(c) G)^(c).

lhs = point_eval(W, F @ G, c)
rhs = point_eval(W, point_eval(W, F, c) @ G, c)
print("multiplicativity defect:", np.abs(lhs - rhs).max())

# %%
# The Cauchy kernel reproduces evaluation in the Hilbert-Schmidt pairing.

k = random_constant(W, rng)
print("pairing defect:", abs(ops.hs_inner(point_eval(W, F, c), k) - ops.hs_inner(F, cauchy_kernel(W, c) @ k)))

# %%
# A single coefficient deep in the tree is seen by a nilpotent tuple that
# walks along its word.

S = np.zeros((W.N, W.N), dtype=complex)
S[W.index[(1, 2, 1)], W.index[(1,)]] = 1.0
value = point_eval(W, S, separating_point(W, (2, 1), (1,)))
print("witness picks it up:", value[W.index[(1,)], W.index[(1,)]])
