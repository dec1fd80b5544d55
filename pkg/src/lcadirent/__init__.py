"""Directional entropy of Z x Z+ actions generated by linear cellular
automata over Z_m and the shift."""

from .laurent import LaurentPoly
from .rule import (LocalRule, Modulus, NotInvertible, PermutivityReport, RuleSyntaxError,
                   arccot, compose, crt_combine, factorize, from_laurent, identity_rule,
                   invert, is_invertible, normalize, parse_rule, permutivity_report, power,
                   project, step, to_laurent, zero_rule)
from .tde import (CurveTerm, EntropyCurve, closed_form_report, eval_curve, sample_curve,
                  tde_curve, tde_prime_power, topological_entropy)
from .mtde import (Direction, mtde_case_theorem, mtde_circle_curve, mtde_uniform, scale)
from .measures import (InvalidMeasure, MarkovMeasure, StochasticMatrix, bernoulli_bound, cylinder_prob,
                       entropy_rate, markov_bound, markov_directional, shannon_entropy,
                       stationary)
from .estimator import (BudgetExceeded, CallableRule, WindowSpec, count_patterns, dependence_cone,
                        empirical_measure_entropy, estimate_tde, lattice_cells)

__version__ = "0.1.0"
