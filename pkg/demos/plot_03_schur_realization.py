"""
Schur multipliers and their realization
=======================================

A causal contraction S has a positive kernel, a de Branges-Rovnyak space
H(S) and a coisometric colligation built from backward shifts.  Running the
state recursion of that colligation reproduces multiplication by S.
"""

import numpy as np

from treeschur import ops
from treeschur.checks import non_schur_witness
from treeschur.instances import random_constant, random_ctuple, random_schur, random_signal, rng_for
from treeschur.schur import kernel_gram_psd, realization_ops, transfer_simulate
from treeschur.series import causal_reconstruct
from treeschur.tree import make_window

W = make_window(2, 3)
rng = rng_for(2, "demo")
S = random_schur(W, rng)
print("||S|| =", ops.op_norm(S))

# %%
# Kernel Gram matrices are positive semidefinite for a contraction.  For
# 1.2 alpha_1^* a random search soon finds a negative direction.

points = [random_ctuple(W, rng) for _ in range(4)]
ks = [random_constant(W, rng) for _ in range(4)]
print("min Gram eigenvalue (Schur):", kernel_gram_psd(W, S, points, ks))
print("non-Schur witness (attempt, eigenvalue):", non_schur_witness(W, seed=2))

# %%
# The realization lives on H(S) plus the constants.

R = realization_ops(W, S)
print("dim H(S) =", R.space.rank, " invariance residual:", R.invariance_residual)
print("coisometry defects:", [R.coisometry_defect(j) for j in (1, 2)])

# %%
# The recursion X_{w j} = A_j X_w + B_j U_w produces the coefficients of S U.

U = random_signal(W, rng)
Y = transfer_simulate(R, U)
print("recursion vs product:", np.abs(causal_reconstruct(Y) - S @ causal_reconstruct(U)).max())
