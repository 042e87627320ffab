"""
Blaschke factors and factorization
==================================

For a tuple c the Blaschke factor B_c is an isometry that vanishes at c.
Any causal F with F^(c) = 0 factors as B_c G with G causal and of the same
Hilbert-Schmidt norm.
"""

import numpy as np

from treeschur import ops
from treeschur.blaschke import blaschke_data, blocks, factorize, make_annihilating
from treeschur.evaluation import point_eval
from treeschur.instances import random_causal, random_ctuple, rng_for
from treeschur.tree import make_window

W = make_window(2, 3)
rng = rng_for(3, "demo")
B = blaschke_data(W, random_ctuple(W, rng))
print("R_c spectrum:", np.round(np.linalg.eigvalsh(B.R_c), 3))
print("smallest L_c eigenvalues:", np.round(np.linalg.eigvalsh(B.L_c)[:4], 12))

# %%
# Away from the deepest level B_c is an isometry.  It is not a coisometry
# on the window, since the leaves have no children to map onto.

iso = ops.compress(W, B.B_c.conj().T @ B.B_c - np.eye(2 * W.N), 1)
co = ops.compress(W, B.B_c @ B.B_c.conj().T - np.eye(W.N), 1)
print("isometry defect:", np.abs(iso).max(), " coisometry defect:", np.abs(co).max())

# %%
# Remove the value at c, then factor.

F = make_annihilating(W, random_causal(W, rng), B.point)
print("|F^(c)| =", np.abs(point_eval(W, F, B.point)).max())
G = factorize(W, F, B.point, B)
print("round trip:", np.abs(B.B_c @ G - F).max())
print("norms:", ops.hs_norm(F), ops.hs_norm(G))
print("blocks causal:", all(ops.is_causal(W, X) for X in blocks(W, G)))
