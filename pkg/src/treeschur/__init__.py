"""Schur analysis on a truncated homogeneous tree.

Operators on a depth-``L`` window of the q-ary tree are dense complex
matrices indexed by words (level-major, then lexicographic).  The package
covers the shift operators and their relations, noncommutative series
expansions, point evaluation, Schur multipliers with their de Branges-Rovnyak
spaces and realizations, and Blaschke factors.
"""
__version__ = "0.1.0"

from .tree import (EMPTY, Order, TreeWindow, Word, decompose, dist, format_word,
                   is_reducible, make_window, meet, order_rel, parse_word, words_of_length)
from .ops import (adjoint, alpha_column, band, c_alpha, causal_part, compress, hs_inner,
                  hs_norm, identity, is_causal, is_constant, level_projection, op_norm,
                  shift, shift_adjoint, shifts, word_op)
from .series import (CausalSeries, NotCausalError, TwoIndexRep, causal_expand,
                     causal_reconstruct, commute_diag, constant_shift_expand,
                     two_index_reconstruct, two_index_rep)
from .evaluation import (EvalPoint, backward_shift, backward_shift_word, cauchy_kernel,
                         coeff_via_states, eval_point, growth_rate, point_eval,
                         separating_point)
from .schur import (DBRSpace, NotSchurError, Realization, RealizationError,
                    coeffs_from_realization, dbr_space, eval_operator, is_schur_multiplier,
                    kernel_gram, kernel_gram_psd, multiplication_superop, realization_ops,
                    reproducing_kernel, schur_kernel, transfer_alternate_defect,
                    transfer_simulate)
from .blaschke import (BlaschkeData, blaschke_data, blaschke_factor, factorize, l_c,
                       make_annihilating, r_c)
from .instances import gen_random, rng_for
from .io import SchemaError, WindowArray, load, save
from .checks import Report, SuiteConfig, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
