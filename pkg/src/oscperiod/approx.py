"""Period approximations from cosine trial functions.

A trial u_trial(t) is fed through the double-integration map

    u(t) = A - int_0^t int_0^t' f(u_trial(t'')) dt'' dt'
         = A - int_0^t (t - s) f(u_trial(s)) ds

and the frequency of the trial is fixed by asking the improved trajectory to
vanish at a quarter period, u(T/4) = 0, which only holds for odd forces.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import BracketError, ModelError
from .models import Family, ForceModel, require_odd
from .numerics import Bracket, EvenPolynomial, find_root_bracketed, integrate_adaptive, positive_T_roots

TWO_PI = 2.0 * math.pi
PI2 = math.pi**2

# Strong-coupling constants lim sqrt(rho) T(rho), as printed to nine places.
DUFFING_T_INF_EXACT = 7.416298709
QUADRATIC_T_INF_EXACT = 6.868663935

QUARTER_PERIOD_TOL = 1e-10
QUAD_TOL = 1e-13
OMEGA_STEP = 1.25
MAX_BRACKET_STEPS = 240


class Order(enum.Enum):
    FIRST = "first"
    SECOND = "second"


class Method(str, enum.Enum):
    FIRST_ORDER = "first"
    SECOND_ORDER = "second"
    CLOSED_FORM_T1 = "closed-first"
    POLYNOMIAL_T2 = "polynomial-second"
    SIGNUM_EXACT = "signum-exact"
    ENERGY = "energy"
    ODE = "ode"
    EXACT_CONSTANT = "exact-constant"


@dataclass(frozen=True)
class TrialFunction:
    """A1 cos(wt) + A2 cos(3wt) with A1 + A2 = A.

    A first-order trial is the special case A2 = 0.
    """

    A: float
    omega: float
    A2: float = 0.0
    order: Order = Order.FIRST

    def __post_init__(self) -> None:
        if not (self.A > 0 and self.omega > 0):
            raise ValueError(f"trial needs A > 0 and omega > 0, got A={self.A}, omega={self.omega}")
        if self.order is Order.FIRST and self.A2 != 0.0:
            raise ValueError("first-order trial has no cos(3wt) term")

    @classmethod
    def first(cls, A: float, omega: float) -> "TrialFunction":
        return cls(A, omega)

    @classmethod
    def second(cls, A: float, omega: float, A2: float) -> "TrialFunction":
        return cls(A, omega, A2, Order.SECOND)

    @property
    def A1(self) -> float:
        return self.A - self.A2

    @property
    def period(self) -> float:
        return TWO_PI / self.omega

    def __call__(self, t: float) -> float:
        wt = self.omega * t
        if self.A2 == 0.0:
            return self.A * math.cos(wt)
        return self.A1 * math.cos(wt) + self.A2 * math.cos(3.0 * wt)


@dataclass(frozen=True)
class PeriodResult:
    T: float
    method: Method
    residual: float = 0.0
    A2: Optional[float] = None


@dataclass(frozen=True)
class AsymptoticResult:
    family: Family
    T_inf: float
    method: Method
    printed: Optional[float] = None


def improve_trajectory(model: ForceModel, trial: TrialFunction, t: float, tol: float = QUAD_TOL) -> float:
    """Improved trajectory A - int_0^t (t - s) f(trial(s)) ds at time t."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return trial.A
    f = model.force
    integral = integrate_adaptive(lambda s: (t - s) * f(trial(s)), 0.0, t, tol)
    return trial.A - integral


def _solve_quarter_period(
    model: ForceModel,
    trial_at: Callable[[float], TrialFunction],
    omega_seed: float,
    tol: float,
) -> tuple[float, float]:
    """Frequency at which the improved trajectory of ``trial_at(omega)``
    vanishes at t = pi / (2 omega).

    Steps geometrically from the seed in the direction the residual sign
    points, so the root nearest the seed is the one bracketed.
    """

    def h(omega: float) -> float:
        return improve_trajectory(model, trial_at(omega), 0.5 * math.pi / omega, QUAD_TOL)

    w = omega_seed
    hw = h(w)
    if hw == 0.0:
        return w, 0.0
    # residual -> A > 0 as omega -> inf, so a positive value means omega is too large
    factor = 1.0 / OMEGA_STEP if hw > 0 else OMEGA_STEP
    for _ in range(MAX_BRACKET_STEPS):
        w_next = w * factor
        h_next = h(w_next)
        if h_next * hw <= 0:
            lo, hi, flo, fhi = (w_next, w, h_next, hw) if w_next < w else (w, w_next, hw, h_next)
            omega = find_root_bracketed(h, Bracket(lo, hi, flo, fhi), tol=1e-15)
            residual = abs(h(omega))
            if residual > tol:
                raise BracketError(
                    f"quarter-period residual {residual:.3e} above tolerance {tol:.1e}"
                )
            return omega, residual
        w, hw = w_next, h_next
    raise BracketError(f"no sign change of the quarter-period residual near omega={omega_seed}")


def first_order_period(model: ForceModel, A: float, tol: float = QUARTER_PERIOD_TOL) -> PeriodResult:
    """Period from the trial A cos(wt) and the quarter-period condition."""
    _check_amplitude(A)
    require_odd(model, A)
    omega, res = _solve_quarter_period(
        model, lambda w: TrialFunction.first(A, w), model.linear_frequency(A), tol
    )
    return PeriodResult(TWO_PI / omega, Method.FIRST_ORDER, res)


def second_order_amplitude(model: ForceModel, A: float, omega: float) -> float:
    """A2 such that the trial satisfies u''(0) + f(A) = 0.

    With u''(0) = -omega**2 (A1 + 9 A2) and A1 = A - A2 this is linear in A2.
    """
    return (model.force(A) / (omega * omega) - A) / 8.0


def second_order_period(model: ForceModel, A: float, tol: float = QUARTER_PERIOD_TOL) -> PeriodResult:
    """Period from A1 cos(wt) + A2 cos(3wt), with A2 eliminated through
    u''(0) + f(A) = 0 and w fixed by the quarter-period condition."""
    _check_amplitude(A)
    require_odd(model, A)
    seed = first_order_period(model, A, tol)

    def trial_at(w: float) -> TrialFunction:
        return TrialFunction.second(A, w, second_order_amplitude(model, A, w))

    omega, res = _solve_quarter_period(model, trial_at, TWO_PI / seed.T, tol)
    return PeriodResult(TWO_PI / omega, Method.SECOND_ORDER, res, second_order_amplitude(model, A, omega))


def first_order_trial(model: ForceModel, A: float, tol: float = QUARTER_PERIOD_TOL) -> TrialFunction:
    return TrialFunction.first(A, TWO_PI / first_order_period(model, A, tol).T)


def second_order_trial(model: ForceModel, A: float, tol: float = QUARTER_PERIOD_TOL) -> TrialFunction:
    r = second_order_period(model, A, tol)
    return TrialFunction.second(A, TWO_PI / r.T, r.A2)


def _check_amplitude(A: float) -> None:
    if not A > 0:
        raise ModelError(f"amplitude must be > 0, got {A}")


def _check_rho(rho: float) -> None:
    if not rho >= 0:
        raise ModelError(f"rho must be >= 0, got {rho}")


# -- closed forms ---------------------------------------------------------


def duffing_T1_closed(rho: float) -> float:
    _check_rho(rho)
    return TWO_PI / math.sqrt(1.0 + 7.0 * rho / 9.0)


def quadratic_T1_closed(omega0: float, rho: float) -> float:
    _check_rho(rho)
    if not omega0 > 0:
        raise ModelError("omega0 must be > 0")
    return TWO_PI / math.sqrt(omega0**2 + (4.0 + PI2) * rho / 16.0)


def duffing_T2_polynomial(rho: float) -> EvenPolynomial:
    """Second-order Duffing period condition as a quartic in s = T**2."""
    _check_rho(rho)
    r1 = rho + 1.0
    pi = math.pi
    return EvenPolynomial((
        12700800.0 * pi**8,
        -64.0 * pi**6 * (48851.0 * rho + 55125.0),
        120.0 * pi**4 * r1 * (1607.0 * rho + 735.0),
        -7656.0 * pi**2 * rho * r1**2,
        125.0 * rho * r1**3,
    ))


def duffing_T2_limit_polynomial() -> EvenPolynomial:
    pi = math.pi
    return EvenPolynomial((
        12700800.0 * pi**8,
        -3126464.0 * pi**6,
        192840.0 * pi**4,
        -7656.0 * pi**2,
        125.0,
    ))


def quadratic_T2_polynomial(omega0: float, rho: float) -> EvenPolynomial:
    """Second-order period condition of the u|u| oscillator, cubic in s = T**2."""
    _check_rho(rho)
    if not omega0 > 0:
        raise ModelError("omega0 must be > 0")
    pi = math.pi
    w2, w4 = omega0**2, omega0**4
    return EvenPolynomial((
        -294912.0 * pi**6,
        16.0 * pi**4 * (5120.0 * w2 + rho * (369.0 * PI2 + 1136.0)),
        -8.0 * PI2 * (256.0 * w4 + 15.0 * w2 * rho * (3.0 * PI2 + 16.0) + rho**2 * (45.0 * PI2 - 16.0)),
        rho * (w4 + 2.0 * w2 * rho + rho**2) * (9.0 * PI2 - 16.0),
    ))


def quadratic_T2_limit_polynomial() -> EvenPolynomial:
    pi = math.pi
    return EvenPolynomial((
        -294912.0 * pi**6,
        16.0 * pi**4 * (369.0 * PI2 + 1136.0),
        8.0 * PI2 * (16.0 - 45.0 * PI2),
        9.0 * PI2 - 16.0,
    ))


def duffing_T2(rho: float) -> PeriodResult:
    p = duffing_T2_polynomial(rho)
    T = positive_T_roots(p)[0]
    return PeriodResult(T, Method.POLYNOMIAL_T2, p.scaled_residual(T))


def quadratic_T2(omega0: float, rho: float) -> PeriodResult:
    p = quadratic_T2_polynomial(omega0, rho)
    T = positive_T_roots(p)[0]
    return PeriodResult(T, Method.POLYNOMIAL_T2, p.scaled_residual(T))


def duffing_T2_limit(poly: Optional[EvenPolynomial] = None) -> AsymptoticResult:
    """Strong-coupling constant of the second-order Duffing period.

    ``poly`` overrides the limit polynomial (used for negative controls).
    """
    p = poly if poly is not None else duffing_T2_limit_polynomial()
    return AsymptoticResult(Family.DUFFING, positive_T_roots(p)[0], Method.POLYNOMIAL_T2, 7.44)


def quadratic_T2_limit(poly: Optional[EvenPolynomial] = None) -> AsymptoticResult:
    p = poly if poly is not None else quadratic_T2_limit_polynomial()
    return AsymptoticResult(Family.QUADRATIC_ABS, positive_T_roots(p)[0], Method.POLYNOMIAL_T2, 6.867)


def signum_exact_period(epsilon: float, A: float) -> PeriodResult:
    if not (epsilon > 0 and A > 0):
        raise ModelError("signum period needs epsilon > 0 and A > 0")
    return PeriodResult(4.0 * math.sqrt(2.0 * A / epsilon), Method.SIGNUM_EXACT, 0.0)


def asymptotic_table() -> list[AsymptoticResult]:
    """The six strong-coupling constants: first order, second order and
    exact, for the Duffing and the u|u| oscillators."""
    return [
        AsymptoticResult(Family.DUFFING, 6.0 * math.pi / math.sqrt(7.0), Method.CLOSED_FORM_T1, 7.12),
        duffing_T2_limit(),
        AsymptoticResult(Family.DUFFING, DUFFING_T_INF_EXACT, Method.EXACT_CONSTANT, DUFFING_T_INF_EXACT),
        AsymptoticResult(
            Family.QUADRATIC_ABS, 8.0 * math.pi / math.sqrt(4.0 + PI2), Method.CLOSED_FORM_T1, 6.75
        ),
        quadratic_T2_limit(),
        AsymptoticResult(
            Family.QUADRATIC_ABS, QUADRATIC_T_INF_EXACT, Method.EXACT_CONSTANT, QUADRATIC_T_INF_EXACT
        ),
    ]
