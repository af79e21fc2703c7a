import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscperiod.errors import ModelError
from oscperiod.models import (
    Family,
    ForceModel,
    force_eval,
    model_for_rho,
    parity_check,
    potential_eval,
    reduced_parameter,
)

ALL_MODELS = [
    ForceModel.harmonic(),
    ForceModel.duffing(0.0),
    ForceModel.duffing(1.5),
    ForceModel.signum(2.0),
    ForceModel.quadratic_abs(0.7, omega0=1.3),
    ForceModel.pure_cubic(2.0),
    ForceModel.pure_quadratic(0.5),
]


class TestForce:
    def test_duffing(self):
        assert force_eval(ForceModel.duffing(1.0), 2.0) == 10.0

    def test_signum(self):
        assert force_eval(ForceModel.signum(3.0), -0.5) == -3.0

    def test_signum_at_origin(self):
        assert force_eval(ForceModel.signum(3.0), 0.0) == 0.0

    def test_quadratic_abs_uses_true_odd_force(self):
        # w0^2 u + eps u|u| = -3 + 2 * (-9)
        assert force_eval(ForceModel.quadratic_abs(2.0, omega0=1.0), -3.0) == -21.0

    def test_array_input(self):
        u = np.array([-1.0, 0.0, 2.0])
        np.testing.assert_array_equal(ForceModel.signum(2.0).force(u), [-2.0, 0.0, 2.0])

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.family.value)
    @given(u=st.floats(-50, 50, allow_nan=False))
    def test_odd(self, model, u):
        assert model.force(-u) == -model.force(u)

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.family.value)
    def test_restoring(self, model):
        for u in np.linspace(0.01, 5, 50):
            assert model.force(u) > 0


class TestPotential:
    def test_harmonic_limit(self):
        assert potential_eval(ForceModel.duffing(0.0), 1.0) == 0.5

    def test_signum(self):
        assert potential_eval(ForceModel.signum(2.0), -1.0) == 2.0

    def test_duffing(self):
        assert potential_eval(ForceModel.duffing(2.0), 1.0) == 1.0

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.family.value)
    def test_normalized_and_even(self, model):
        assert model.potential(0.0) == 0.0
        for u in (0.3, 1.0, 2.5):
            assert model.potential(-u) == model.potential(u)

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.family.value)
    def test_derivative_is_force(self, model):
        h = 1e-5
        for u in (-2.0, -0.7, 0.4, 1.0, 3.0):
            fd = (model.potential(u + h) - model.potential(u - h)) / (2 * h)
            assert fd == pytest.approx(model.force(u), rel=1e-6)

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.family.value)
    def test_strictly_increasing(self, model):
        v = model.potential(np.linspace(0.0, 3.0, 400))
        assert np.all(np.diff(v) > 0)

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.family.value)
    def test_energy_gap_matches_direct_difference(self, model):
        A = 1.7
        for s in (0.0, 0.3, 0.8, 0.95):
            direct = (model.potential(A) - model.potential(A * s)) / (1 - s * s)
            assert model.energy_gap(A, s) == pytest.approx(direct, rel=1e-12)
        assert model.energy_gap(A, 1.0) == pytest.approx(0.5 * A * model.force(A), rel=1e-14)

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.family.value)
    def test_branch_force_agrees_on_its_half_line(self, model):
        for u in (0.2, 1.0, 3.0):
            assert model.branch_force(u, 1.0) == model.force(u)
            assert model.branch_force(-u, -1.0) == model.force(-u)


class TestReducedParameter:
    def test_duffing(self):
        assert reduced_parameter(ForceModel.duffing(0.25), 2.0) == 1.0

    def test_quadratic_abs(self):
        assert reduced_parameter(ForceModel.quadratic_abs(0.5), 2.0) == 1.0

    def test_harmonic(self):
        assert reduced_parameter(ForceModel.harmonic(), 5.0) == 0.0

    def test_signum_has_none(self):
        with pytest.raises(ModelError, match="no reduced parameter"):
            reduced_parameter(ForceModel.signum(1.0), 1.0)

    def test_bad_amplitude(self):
        with pytest.raises(ModelError):
            reduced_parameter(ForceModel.duffing(1.0), 0.0)

    @given(rho=st.floats(0, 1e6))
    def test_model_for_rho_round_trip(self, rho):
        for fam in (Family.DUFFING, Family.QUADRATIC_ABS):
            model, A = model_for_rho(fam, rho)
            assert reduced_parameter(model, A) == rho

    def test_zero_iff_no_nonlinearity(self):
        assert reduced_parameter(ForceModel.duffing(0.0), 3.0) == 0.0
        assert reduced_parameter(ForceModel.duffing(1e-3), 3.0) > 0.0


class TestParity:
    def test_duffing(self):
        assert parity_check(ForceModel.duffing(1.0), 1.0, 16)

    def test_quadratic_abs(self):
        assert parity_check(ForceModel.quadratic_abs(1.0), 1.0, 16)

    def test_even_force_rejected(self):
        assert not parity_check(lambda u: u * u, 1.0, 16)

    def test_needs_two_points(self):
        with pytest.raises(ValueError):
            parity_check(ForceModel.duffing(1.0), 1.0, 1)


class TestConstruction:
    def test_negative_epsilon(self):
        with pytest.raises(ModelError):
            ForceModel.duffing(-1.0)

    def test_signum_needs_positive_epsilon(self):
        with pytest.raises(ModelError):
            ForceModel.signum(0.0)

    def test_omega0_positive(self):
        with pytest.raises(ModelError):
            ForceModel.quadratic_abs(1.0, omega0=0.0)

    def test_family_from_string(self):
        assert ForceModel("quadratic-abs", 1.0).family is Family.QUADRATIC_ABS

    def test_frozen(self):
        m = ForceModel.duffing(1.0)
        with pytest.raises(AttributeError):
            m.epsilon = 2.0  # type: ignore[misc]

    def test_linear_frequency(self):
        assert ForceModel.duffing(3.0).linear_frequency(1.0) == pytest.approx(2.0)
        assert math.isclose(ForceModel.harmonic().linear_frequency(7.0), 1.0)
