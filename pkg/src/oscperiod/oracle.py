"""Exact reference periods: energy-integral quadrature and ODE integration.

The two routes share no code beyond the force model, which is what makes
their agreement meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConvergenceError, ModelError, NonMonotonePotentialError, StepUnderflowError
from .models import Family, ForceModel, model_for_rho, require_odd
from .numerics import integrate_adaptive

QUAD_TOL = 1e-12
RK_TOL = 1e-10
DEFAULT_RHO_SEQ = (1e4, 1e6, 1e8)
TAIL_EXACT = 1e-6
TAIL_DIVERGED = 1e-3


@dataclass(frozen=True)
class Trajectory:
    """Samples (t, u, v = u') of one integrated orbit."""

    model: ForceModel
    A: float
    t: np.ndarray
    u: np.ndarray
    v: np.ndarray
    energy: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        e = 0.5 * self.v**2 + self.model.potential(self.u)
        object.__setattr__(self, "energy", e)
        for arr in (self.t, self.u, self.v, self.energy):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return len(self.t)


def energy_integrand(model: ForceModel, A: float) -> Callable[[float], float]:
    """Integrand of T/4 after u = A sin(theta).

    The singular factor cos(theta) is cancelled analytically, leaving
    A / sqrt(2 g(sin theta)) with g from ``ForceModel.energy_gap``; at
    theta = pi/2 it equals sqrt(A / f(A)).
    """

    def integrand(theta: float) -> float:
        return A / math.sqrt(2.0 * model.energy_gap(A, math.sin(theta)))

    return integrand


def exact_period_energy(model: ForceModel, A: float, tol: float = QUAD_TOL) -> float:
    """T = 4 int_0^A du / sqrt(2 (V(A) - V(u))), valid for odd forces."""
    if not A > 0:
        raise ModelError(f"amplitude must be > 0, got {A}")
    require_odd(model, A)
    gaps = model.energy_gap(A, np.linspace(0.0, 1.0, 65))
    if not np.all(gaps > 0):
        raise NonMonotonePotentialError("V is not strictly increasing on (0, A]")
    return 4.0 * integrate_adaptive(energy_integrand(model, A), 0.0, 0.5 * math.pi, tol)


def _rhs(model: ForceModel, sign: float):
    branch = model.branch_force

    def rhs(t, y):
        return (y[1], -branch(y[0], sign))

    return rhs


def _zero_event(direction: float):
    def event(t, y):
        return y[0]

    event.terminal = True
    event.direction = direction
    return event


def integrate_ode(
    model: ForceModel,
    A: float,
    t_end: float,
    tol: float = RK_TOL,
    t_eval: Optional[Sequence[float]] = None,
) -> Trajectory:
    """Integrate u'' = -f(u), u(0) = A, u'(0) = 0 up to ``t_end``.

    Dormand-Prince 8(5,3) with local error tolerance ``tol``. Each half-cycle
    is integrated with the smooth branch of the force and the integration is
    restarted at every zero of u, so a force that is discontinuous or kinked
    at the origin never degrades a step. Returns the accepted steps, or the values at
    ``t_eval`` when given.

    Raises:
        StepUnderflowError: if the step-size controller stalls.
    """
    if not t_end > 0:
        raise ValueError("t_end must be > 0")
    if not tol > 0:
        raise ValueError("tol must be > 0")
    t_eval_arr = None if t_eval is None else np.asarray(t_eval, dtype=float)

    ts, us, vs = [np.array([0.0])], [np.array([float(A)])], [np.array([0.0])]
    if t_eval_arr is not None and not np.any(t_eval_arr == 0.0):
        ts, us, vs = [], [], []
    t0, y0 = 0.0, np.array([float(A), 0.0])
    direction = -1.0
    while t0 < t_end:
        # half-cycle on the branch u > 0 (direction -1) or u < 0 (direction +1)
        sol = solve_ivp(
            _rhs(model, -direction), (t0, t_end), y0, method="DOP853", rtol=tol, atol=tol * A,
            events=_zero_event(direction), dense_output=t_eval_arr is not None,
        )
        if sol.status == -1:
            raise StepUnderflowError(f"ODE integration failed at t={sol.t[-1]}: {sol.message}")
        t_stop = sol.t[-1]
        if t_eval_arr is None:
            ts.append(sol.t[1:])
            us.append(sol.y[0, 1:])
            vs.append(sol.y[1, 1:])
        else:
            pts = t_eval_arr[(t_eval_arr > t0) & (t_eval_arr <= t_stop)]
            if len(pts):
                y = sol.sol(pts)
                ts.append(pts)
                us.append(y[0])
                vs.append(y[1])
        if sol.status != 1:
            break
        y0 = sol.y_events[0][0].copy()
        y0[0] = 0.0
        if t_stop <= t0:
            raise StepUnderflowError(f"integration stalled at t={t0}")
        t0 = t_stop
        direction = -direction

    return Trajectory(model, float(A), np.concatenate(ts), np.concatenate(us), np.concatenate(vs))


def period_from_ode(model: ForceModel, A: float, tol: float = RK_TOL) -> float:
    """Four times the first zero of u(t).

    Raises:
        ConvergenceError: if u has not crossed zero within ten linearized
            periods.
    """
    if not A > 0:
        raise ModelError(f"amplitude must be > 0, got {A}")
    require_odd(model, A)
    horizon = 10.0 * 2.0 * math.pi / model.linear_frequency(A)
    sol = solve_ivp(
        _rhs(model, 1.0), (0.0, horizon), np.array([float(A), 0.0]), method="DOP853",
        rtol=tol, atol=tol * A, events=_zero_event(-1.0),
    )
    if sol.status == -1:
        raise StepUnderflowError(sol.message)
    if sol.status != 1 or not len(sol.t_events[0]):
        raise ConvergenceError(f"no zero crossing before t={horizon}")
    return 4.0 * float(sol.t_events[0][0])


def energy_drift(traj: Trajectory) -> float:
    e = traj.energy
    if not len(e):
        raise ValueError("empty trajectory")
    e0 = e[0]
    return float(np.max(np.abs(e - e0)) / max(1.0, abs(e0)))


def exact_period_rho(family: Family | str, rho: float, omega0: float = 1.0, tol: float = QUAD_TOL) -> float:
    model, A = model_for_rho(family, rho, omega0)
    return exact_period_energy(model, A, tol)


def scaled_limit(
    family: Family | str,
    period_fn: Callable[[float], float],
    rho_seq: Sequence[float] = DEFAULT_RHO_SEQ,
) -> float:
    """lim sqrt(rho) T(rho) as rho -> inf.

    For both families the leading correction to sqrt(rho) T is O(1/rho), so
    the last two points are Richardson-extrapolated in 1/rho unless the tail
    has already settled below 1e-6.

    Raises:
        ConvergenceError: if the last two scaled values differ by more
            than 1e-3.
    """
    family = Family(family)
    if family not in (Family.DUFFING, Family.QUADRATIC_ABS):
        raise ModelError(f"no strong-coupling limit for {family.value}")
    rho_seq = list(rho_seq)
    if len(rho_seq) < 3 or any(b <= a for a, b in zip(rho_seq, rho_seq[1:])) or rho_seq[0] <= 0:
        raise ValueError("rho_seq must be >= 3 increasing positive values")
    g = [math.sqrt(r) * period_fn(r) for r in rho_seq]
    tail = abs(g[-1] - g[-2])
    if tail > TAIL_DIVERGED:
        raise ConvergenceError(f"scaled period not converged: tail difference {tail:.3e}")
    if tail < TAIL_EXACT:
        return g[-1]
    r1, r2 = rho_seq[-2], rho_seq[-1]
    return (r2 * g[-1] - r1 * g[-2]) / (r2 - r1)
