"""Force families for conservative oscillators u'' + f(u) = 0.

Every family here is odd in u, has a potential normalized to V(0) = 0 and a
restoring force (f(u) > 0 for u > 0), so the motion started at u(0) = A,
u'(0) = 0 oscillates symmetrically between -A and A.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import ModelError, NotOddError

PARITY_ATOL = 1e-12


class Family(str, enum.Enum):
    HARMONIC = "harmonic"
    DUFFING = "duffing"
    SIGNUM = "signum"
    QUADRATIC_ABS = "quadratic-abs"
    # strong-coupling limits of DUFFING and QUADRATIC_ABS (no linear term)
    PURE_CUBIC = "pure-cubic"
    PURE_QUADRATIC = "pure-quadratic"


@dataclass(frozen=True)
class ForceModel:
    """A force family f(u) with its parameters.

    Attributes:
        family: Which force law.
        epsilon: Nonlinearity strength, >= 0. Ignored by HARMONIC.
        omega0: Linear frequency; only QUADRATIC_ABS uses it, the other
            families with a linear term have it fixed to 1.
    """

    family: Family
    epsilon: float = 0.0
    omega0: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        if not (self.epsilon >= 0.0 and math.isfinite(self.epsilon)):
            raise ModelError(f"epsilon must be finite and >= 0, got {self.epsilon}")
        if not (self.omega0 > 0.0 and math.isfinite(self.omega0)):
            raise ModelError(f"omega0 must be finite and > 0, got {self.omega0}")
        if self.family in (Family.SIGNUM, Family.PURE_CUBIC, Family.PURE_QUADRATIC):
            if self.epsilon <= 0.0:
                raise ModelError(f"{self.family.value} needs epsilon > 0")

    @classmethod
    def harmonic(cls) -> "ForceModel":
        return cls(Family.HARMONIC)

    @classmethod
    def duffing(cls, epsilon: float) -> "ForceModel":
        return cls(Family.DUFFING, epsilon)

    @classmethod
    def signum(cls, epsilon: float) -> "ForceModel":
        return cls(Family.SIGNUM, epsilon)

    @classmethod
    def quadratic_abs(cls, epsilon: float, omega0: float = 1.0) -> "ForceModel":
        return cls(Family.QUADRATIC_ABS, epsilon, omega0)

    @classmethod
    def pure_cubic(cls, epsilon: float = 1.0) -> "ForceModel":
        return cls(Family.PURE_CUBIC, epsilon)

    @classmethod
    def pure_quadratic(cls, epsilon: float = 1.0) -> "ForceModel":
        return cls(Family.PURE_QUADRATIC, epsilon)

    def force(self, u):
        """f(u); works elementwise on arrays."""
        eps, w2 = self.epsilon, self.omega0 * self.omega0
        fam = self.family
        if fam is Family.HARMONIC:
            return u * 1.0
        if fam is Family.DUFFING:
            return u + eps * u * u * u
        if fam is Family.SIGNUM:
            return eps * np.sign(u) if isinstance(u, np.ndarray) else eps * _sgn(u)
        if fam is Family.QUADRATIC_ABS:
            return w2 * u + eps * u * abs(u)
        if fam is Family.PURE_CUBIC:
            return eps * u * u * u
        return eps * u * abs(u)

    def branch_force(self, u, sign: float):
        """Smooth continuation of f from the half-line sign*u > 0.

        Equals f(u) wherever u has the given sign; beyond the origin it
        extends the polynomial piece instead of switching, which keeps an
        ODE step that straddles u = 0 free of the kink.
        """
        eps, w2 = self.epsilon, self.omega0 * self.omega0
        fam = self.family
        if fam is Family.SIGNUM:
            return eps * sign + 0.0 * u
        if fam is Family.QUADRATIC_ABS:
            return w2 * u + sign * eps * u * u
        if fam is Family.PURE_QUADRATIC:
            return sign * eps * u * u
        return self.force(u)

    def potential(self, u):
        """V(u) with dV/du = f and V(0) = 0."""
        eps, w2 = self.epsilon, self.omega0 * self.omega0
        fam = self.family
        a = abs(u)
        if fam is Family.HARMONIC:
            return 0.5 * u * u
        if fam is Family.DUFFING:
            return 0.5 * u * u + 0.25 * eps * u**4
        if fam is Family.SIGNUM:
            return eps * a
        if fam is Family.QUADRATIC_ABS:
            return 0.5 * w2 * u * u + eps * a**3 / 3.0
        if fam is Family.PURE_CUBIC:
            return 0.25 * eps * u**4
        return eps * a**3 / 3.0

    def energy_gap(self, A: float, s):
        """(V(A) - V(A s)) / (1 - s^2) for 0 <= s <= 1, in cancellation-free form.

        The factor 1 - s^2 is divided out analytically, so the value stays
        smooth and accurate up to and including s = 1, where it equals
        A f(A) / 2.
        """
        eps, w2 = self.epsilon, self.omega0 * self.omega0
        fam = self.family
        if fam is Family.HARMONIC:
            return 0.5 * A * A + 0.0 * s
        if fam is Family.DUFFING:
            return 0.5 * A * A + 0.25 * eps * A**4 * (1.0 + s * s)
        if fam is Family.SIGNUM:
            return eps * A / (1.0 + s)
        cubic_part = eps * A**3 * (1.0 + s + s * s) / (3.0 * (1.0 + s))
        if fam is Family.QUADRATIC_ABS:
            return 0.5 * w2 * A * A + cubic_part
        if fam is Family.PURE_CUBIC:
            return 0.25 * eps * A**4 * (1.0 + s * s)
        return cubic_part

    def linear_frequency(self, A: float) -> float:
        """Secant stiffness frequency sqrt(f(A)/A)."""
        return math.sqrt(self.force(A) / A)


def _sgn(u: float) -> float:
    if u > 0:
        return 1.0
    if u < 0:
        return -1.0
    return 0.0


def force_eval(model: ForceModel, u: float) -> float:
    return model.force(u)


def potential_eval(model: ForceModel, u: float) -> float:
    return model.potential(u)


def reduced_parameter(model: ForceModel, A: float) -> float:
    """The single dimensionless combination the period depends on.

    rho = eps*A**2 for DUFFING, eps*A for QUADRATIC_ABS and 0 for HARMONIC.

    Raises:
        ModelError: For families whose period has no rho-collapse
            (SIGNUM scales as sqrt(A/eps); the pure power laws likewise).
    """
    if not A > 0:
        raise ModelError(f"amplitude must be > 0, got {A}")
    fam = model.family
    if fam is Family.HARMONIC:
        return 0.0
    if fam is Family.DUFFING:
        return model.epsilon * A * A
    if fam is Family.QUADRATIC_ABS:
        return model.epsilon * A
    raise ModelError(f"no reduced parameter for the {fam.value} family")


def model_for_rho(family: Family | str, rho: float, omega0: float = 1.0) -> tuple[ForceModel, float]:
    """A (model, amplitude) pair realizing a given reduced parameter.

    Uses A = 1 and epsilon = rho, which is valid down to rho = 0.
    """
    family = Family(family)
    if rho < 0:
        raise ModelError(f"rho must be >= 0, got {rho}")
    if family is Family.DUFFING:
        return ForceModel.duffing(rho), 1.0
    if family is Family.QUADRATIC_ABS:
        return ForceModel.quadratic_abs(rho, omega0), 1.0
    if family is Family.HARMONIC:
        return ForceModel.harmonic(), 1.0
    raise ModelError(f"no reduced parameter for the {family.value} family")


ForceLike = Union[ForceModel, Callable[[float], float]]


def parity_check(model: ForceLike, A: float, n: int = 16) -> bool:
    """True iff f(-u) = -f(u) at n points spread over (0, A].

    ``model`` may also be a bare callable f(u), or any object with a
    ``force`` method, which is how non-family forces are screened.
    """
    if n < 2:
        raise ValueError("need at least two sample points")
    f = getattr(model, "force", model)
    for k in range(1, n + 1):
        u = A * k / n
        fu = f(u)
        if abs(fu + f(-u)) > PARITY_ATOL * max(1.0, abs(fu)):
            return False
    return True


def require_odd(model: ForceLike, A: float, n: int = 16) -> None:
    if not parity_check(model, A, n):
        raise NotOddError("force is not odd; the quarter-period condition u(T/4)=0 does not hold")
