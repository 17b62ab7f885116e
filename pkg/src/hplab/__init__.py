"""High-precision laboratory for Hermite-Pade polynomials of Nikishin-type
function pairs, the associated scalar and vector equilibrium problems, and
desk-scale verification of their zero-distribution limits.
"""

__version__ = "0.1.0"

from .precision import PrecisionContext, DEFAULT_CTX
from .intervals import Interval, IntervalUnion, as_interval_union, E_CUT
from .maps import (phi, chebyshev_T, second_kind_H, second_kind_H_recursion,
                   green_function_interval, sqrt_z2m1)
from .measures import (DiscreteMeasure, arcsine_measure, balayage_onto_E,
                       log_potential, log_potential_on_cut, tilde_potential,
                       blaschke_log_sum, scalar_potential_P,
                       scalar_potential_P_direct, green_potential,
                       spherical_potential)
from .equilibrium import (EquilibriumSolution, solve_scalar_equilibrium,
                          solve_vector_equilibrium, type2_limit_measure)
from .series import (LaurentGerm, AlgebraicFunctionSpec, germ_product,
                     germ_power, germ_reciprocal, germ_from_polynomial,
                     inverse_phi_germ, algebraic_germ, markov_f1_germ,
                     markov_f2_germ, compose_series)
from .hermite_pade import (ChebPolynomial, HPTypeI, HPTypeII, ZeroCloud,
                           hp_type2_markov, hp_type2_germ, hp_type1_germ,
                           split_type2, split_reconstruction_residual,
                           auxiliary_zeros, poly_roots, realify_cloud,
                           circle_roots, circle_phase)
from .verify import (ComparisonReport, empirical_measure, ks_distance,
                     strong_asymptotics_rhs, check_lemma1, check_corollary1,
                     check_strong_asymptotics, lemma2_constancy_spread,
                     default_offsupport_points, delta_decay_rate)
from . import errors
