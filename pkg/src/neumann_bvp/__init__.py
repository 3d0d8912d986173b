"""Singularly perturbed linear Neumann BVP: eps*y'' + k*y = f(t), y'(a)=y'(b)=0.

Solves the non-resonant case by the explicit integral formula with
oscillation-aware quadrature, computes non-resonance windows, certifies
a priori error bounds, and measures convergence rates to f/k.
"""

from .analysis import (BoundReport, RateFit, apriori_bound, certify_bound,
                       fd_oracle, near_resonance_sweep, oracle_example1,
                       rate_fit, sup_error_vs_reduced)
from .errors import (BudgetExceededError, DegenerateFitError, DomainError,
                     ExpressionSyntaxError, InvalidLambdaError,
                     InvalidProblemError, NearResonanceError,
                     SingularSystemError, UnknownIdentifierError)
from .fnmodel import Jet3, SmoothFunction, eval_jet, parse_expr, sup_norm_deriv, to_source
from .kernels import active_backend
from .quadrature import CosKernel, OscIntegrand, QuadConfig, SinKernel, estimate_cost, osc_integral
from .solver import (NAIVE, REDUCED, ProblemSpec, SolutionProfile, SolveContext,
                     derivative, evaluate, evaluate_naive, evaluate_reduced,
                     make_context, second_derivative, solve_grid)
from .windows import (EpsilonWindow, InWindow, NearResonance, classify,
                      eps_of_theta, resonance_points, sample_sequence,
                      theta_of, window)

__version__ = "0.1.0"
