"""Period approximations for conservative nonlinear oscillators u'' + f(u) = 0.

Cosine trial functions are pushed through the double-integration map and
their frequency fixed by the quarter-period condition; every result can be
checked against exact periods from energy-integral quadrature and from
adaptive ODE integration.
"""

from .approx import (
    AsymptoticResult,
    PeriodResult,
    TrialFunction,
    asymptotic_table,
    duffing_T1_closed,
    duffing_T2_limit,
    duffing_T2_polynomial,
    first_order_period,
    improve_trajectory,
    quadratic_T1_closed,
    quadratic_T2_limit,
    quadratic_T2_polynomial,
    second_order_period,
    signum_exact_period,
)
from .models import Family, ForceModel, force_eval, parity_check, potential_eval, reduced_parameter
from .numerics import Bracket, EvenPolynomial, find_root_bracketed, integrate_adaptive, positive_T_roots
from .oracle import (
    Trajectory,
    energy_drift,
    exact_period_energy,
    integrate_ode,
    period_from_ode,
    scaled_limit,
)

__version__ = "0.1.0"
