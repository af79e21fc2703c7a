import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import beta, ellipk

from oscperiod import oracle
from oscperiod.approx import duffing_T1_closed, signum_exact_period
from oscperiod.errors import ConvergenceError, ModelError, NonMonotonePotentialError
from oscperiod.models import Family, ForceModel
from oscperiod.oracle import (
    Trajectory,
    energy_drift,
    energy_integrand,
    exact_period_energy,
    exact_period_rho,
    integrate_ode,
    period_from_ode,
    scaled_limit,
)

PI = math.pi
# lim sqrt(rho) T for f = u^3 and f = u|u|, from the Beta-function form of the energy integral
CUBIC_LIMIT = math.sqrt(2.0) * beta(0.25, 0.5)
QUADRATIC_LIMIT = 4.0 * math.sqrt(1.5) * beta(1.0 / 3.0, 0.5) / 3.0


def duffing_elliptic(rho):
    m = rho / (2.0 * (1.0 + rho))
    return 4.0 * ellipk(m) / math.sqrt(1.0 + rho)


class TestEnergyPeriod:
    def test_harmonic(self):
        assert exact_period_energy(ForceModel.harmonic(), 1.0) == pytest.approx(2 * PI, rel=1e-13)

    def test_signum(self):
        assert exact_period_energy(ForceModel.signum(2.0), 1.0) == pytest.approx(signum_exact_period(2.0, 1.0).T, rel=1e-12)

    def test_pure_cubic(self):
        assert abs(exact_period_energy(ForceModel.pure_cubic(), 1.0) - 7.416298709) < 1e-6
        assert exact_period_energy(ForceModel.pure_cubic(), 1.0) == pytest.approx(CUBIC_LIMIT, rel=1e-12)

    def test_pure_quadratic(self):
        assert exact_period_energy(ForceModel.pure_quadratic(), 1.0) == pytest.approx(QUADRATIC_LIMIT, rel=1e-12)

    @pytest.mark.parametrize("rho", [0.0, 0.01, 1.0, 30.0, 1e4])
    def test_duffing_matches_elliptic_integral(self, rho):
        assert exact_period_rho(Family.DUFFING, rho) == pytest.approx(duffing_elliptic(rho), rel=1e-12)

    def test_integrand_endpoints(self):
        model, A = ForceModel.duffing(2.0), 1.3
        g = energy_integrand(model, A)
        assert g(PI / 2) == pytest.approx(math.sqrt(A / model.force(A)), rel=1e-14)
        assert g(0.0) == pytest.approx(A / math.sqrt(2 * model.potential(A)), rel=1e-14)

    @pytest.mark.parametrize("model", [ForceModel.duffing(1.0), ForceModel.quadratic_abs(1.0), ForceModel.signum(1.5)],
                             ids=lambda m: m.family.value)
    def test_agrees_with_ode(self, model):
        assert period_from_ode(model, 1.0) == pytest.approx(exact_period_energy(model, 1.0), abs=1e-7)

    def test_cubic_amplitude_scaling(self):
        # T of u'' + u^3 = 0 scales like 1/A
        t1 = exact_period_energy(ForceModel.pure_cubic(), 1.0)
        assert exact_period_energy(ForceModel.pure_cubic(), 4.0) == pytest.approx(t1 / 4, rel=1e-12)

    def test_rejects_bad_amplitude(self):
        with pytest.raises(ModelError):
            exact_period_energy(ForceModel.harmonic(), 0.0)

    def test_rejects_non_monotone_potential(self):
        class Softening:
            family = Family.HARMONIC

            def force(self, u):
                return u - u**3

            def potential(self, u):
                return 0.5 * u**2 - 0.25 * u**4

            def energy_gap(self, A, s):
                return 0.5 * A**2 - 0.25 * A**4 * (1 + np.asarray(s) ** 2)

            def linear_frequency(self, A):
                return 1.0

        with pytest.raises(NonMonotonePotentialError):
            exact_period_energy(Softening(), 2.0)  # type: ignore[arg-type]


class TestIntegrateOde:
    def test_harmonic_closed_orbit(self):
        traj = integrate_ode(ForceModel.harmonic(), 1.0, 2 * PI, t_eval=[2 * PI])
        assert traj.u[-1] == pytest.approx(1.0, abs=1e-8)

    def test_signum_parabola(self):
        ts = np.linspace(0.0, 1.0, 11)
        traj = integrate_ode(ForceModel.signum(2.0), 1.0, 1.0, t_eval=ts)
        np.testing.assert_allclose(traj.u, 1.0 - ts**2, atol=1e-12)
        np.testing.assert_allclose(traj.v, -2.0 * ts, atol=1e-12)

    def test_includes_initial_point(self):
        traj = integrate_ode(ForceModel.duffing(1.0), 1.0, 1.0)
        assert traj.t[0] == 0.0 and traj.u[0] == 1.0 and traj.v[0] == 0.0
        assert np.all(np.diff(traj.t) > 0)

    def test_duffing_half_period_symmetry(self):
        model = ForceModel.duffing(1.0)
        T = exact_period_energy(model, 1.0)
        traj = integrate_ode(model, 1.0, T, t_eval=[T / 2, T])
        assert traj.u[0] == pytest.approx(-1.0, abs=1e-6)
        assert traj.u[1] == pytest.approx(1.0, abs=1e-6)

    def test_signum_crosses_zero_cleanly(self):
        model = ForceModel.signum(2.0)
        assert energy_drift(integrate_ode(model, 1.0, 12.0)) < 1e-10
        # period 4: turning points at t = 2, 4, 6, ...
        traj = integrate_ode(model, 1.0, 12.0, t_eval=[2.0, 4.0, 6.0, 10.0, 12.0])
        np.testing.assert_allclose(traj.u, [-1.0, 1.0, -1.0, -1.0, 1.0], atol=1e-8)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            integrate_ode(ForceModel.harmonic(), 1.0, 0.0)
        with pytest.raises(ValueError):
            integrate_ode(ForceModel.harmonic(), 1.0, 1.0, tol=0.0)


class TestPeriodFromOde:
    def test_harmonic(self):
        assert period_from_ode(ForceModel.harmonic(), 1.0) == pytest.approx(2 * PI, abs=1e-8)

    @pytest.mark.parametrize("eps,A", [(1.0, 1.0), (2.0, 4.0), (8.0, 1.0), (0.5, 0.3)])
    def test_signum_scaling(self, eps, A):
        expected = 4.0 * math.sqrt(2.0 * A / eps)
        assert period_from_ode(ForceModel.signum(eps), A) == pytest.approx(expected, abs=1e-8)
        assert exact_period_energy(ForceModel.signum(eps), A) == pytest.approx(expected, rel=1e-12)

    @settings(max_examples=10, deadline=None)
    @given(rho=st.floats(0.0, 200.0))
    def test_duffing_oracles_agree(self, rho):
        model = ForceModel.duffing(rho)
        assert period_from_ode(model, 1.0) == pytest.approx(exact_period_energy(model, 1.0), abs=1e-7)


class TestEnergyDrift:
    def test_exact_samples(self):
        t = np.linspace(0, 2 * PI, 50)
        traj = Trajectory(ForceModel.harmonic(), 1.0, t, np.cos(t), -np.sin(t))
        assert energy_drift(traj) < 1e-15

    def test_duffing_one_period(self):
        model = ForceModel.duffing(1.0)
        traj = integrate_ode(model, 1.0, exact_period_energy(model, 1.0), tol=1e-10)
        assert energy_drift(traj) <= 1e-8

    def test_coarse_tolerance_drifts_more(self):
        model = ForceModel.duffing(1.0)
        T = exact_period_energy(model, 1.0)
        fine = energy_drift(integrate_ode(model, 1.0, T, tol=1e-10))
        coarse = energy_drift(integrate_ode(model, 1.0, T, tol=1e-3))
        assert coarse > fine

    def test_trajectory_is_read_only(self):
        traj = integrate_ode(ForceModel.harmonic(), 1.0, 1.0)
        with pytest.raises(ValueError):
            traj.u[0] = 3.0
        with pytest.raises(AttributeError):
            traj.A = 2.0  # type: ignore[misc]


class TestScaledLimit:
    def test_first_order_closed_form(self):
        assert scaled_limit(Family.DUFFING, duffing_T1_closed) == pytest.approx(6 * PI / math.sqrt(7), abs=1e-6)

    def test_duffing_exact(self):
        got = scaled_limit(Family.DUFFING, lambda r: exact_period_rho(Family.DUFFING, r))
        assert abs(got - 7.416298709) < 1e-5

    def test_quadratic_exact(self):
        got = scaled_limit(Family.QUADRATIC_ABS, lambda r: exact_period_rho(Family.QUADRATIC_ABS, r))
        assert got == pytest.approx(QUADRATIC_LIMIT, abs=1e-6)

    def test_quadratic_printed_constant_is_off(self):
        # the commonly quoted 6.868663935 sits 6e-4 below the Beta-function value
        assert QUADRATIC_LIMIT - 6.868663935 == pytest.approx(5.974e-4, abs=1e-6)

    def test_not_converged(self):
        with pytest.raises(ConvergenceError):
            scaled_limit(Family.DUFFING, lambda r: 1.0)

    def test_bad_sequence(self):
        with pytest.raises(ValueError):
            scaled_limit(Family.DUFFING, duffing_T1_closed, [1e4, 1e6])
        with pytest.raises(ValueError):
            scaled_limit(Family.DUFFING, duffing_T1_closed, [1e6, 1e4, 1e8])

    def test_wrong_family(self):
        with pytest.raises(ModelError):
            scaled_limit(Family.SIGNUM, lambda r: 1.0)


def test_module_defaults():
    assert oracle.DEFAULT_RHO_SEQ == (1e4, 1e6, 1e8)
