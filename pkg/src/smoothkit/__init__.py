"""Cubic delta-smoothing of univariate functions that are nonsmooth at 0.

The smoothing replaces ``f`` on ``[0, delta]`` by the homogeneous cubic that
matches ``f``, ``f'`` and ``f''`` at ``delta``.  This package builds it,
checks the structural conditions that make it increasing/concave or a lower
bound, solves for ``delta`` given a target slope or error, and compares it
with the shift smoothing ``f(w + lam) - f(lam)``.
"""

from .analysis import (BoundCertificate, DominationReport, ErrorProfile, Sensitivities,
                       certify_bounds, certify_domination, comparison_grid, kratio_oracle,
                       sensitivities, sensitivities_fd, solve_delta_for_error,
                       solve_delta_for_slope, worst_case_error)
from .errors import *  # noqa: F401,F403
from .expr import parse
from .funcmodel import (Domain, FunctionModel, arcsinh_sqrt, cubic_sqrt, entropy, eval_jet,
                        exp_example, from_expression, incremental_entropy, parse_function_spec,
                        quintic_sqrt, quintic_sqrt_close, root)
from .jet import Jet3
from .smoothing import (ConditionReport, DeltaSmoothing, F3Class, ShiftSmoothing,
                        check_conditions, classify_f3, eval_smoothing, fair_shift,
                        make_smoothing)

__version__ = "0.1.0"
