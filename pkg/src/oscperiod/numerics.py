"""Numerical kernels: adaptive quadrature, bracketed root finding and
positive roots of low-degree polynomials in s = T**2."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from .errors import BracketError, ConvergenceError, NoRootError

# Gauss-Kronrod 7/15 nodes on [-1, 1]; the odd-indexed Kronrod nodes are the
# Gauss nodes.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes sit at Kronrod indices 1, 3, 5, 7, 9, 11, 13
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[[1, 3, 5]] = _WG[:3]
_GWEIGHTS[7] = _WG[3]
_GWEIGHTS[[9, 11, 13]] = _WG[2::-1]

MAX_SUBINTERVALS = 4000
MAX_DEPTH = 60


def _gk15(g: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = np.array([g(mid + half * x) for x in _NODES], dtype=float)
    k = half * float(_KWEIGHTS @ fx)
    gauss = half * float(_GWEIGHTS @ fx)
    return k, abs(k - gauss)


def integrate_adaptive(g: Callable[[float], float], a: float, b: float, tol: float = 1e-12) -> float:
    """Integrate g over [a, b] to ``|err| <= tol * max(1, |I|)``.

    Globally adaptive Gauss-Kronrod 7/15: the subinterval with the largest
    error estimate is bisected until the summed estimate meets the target.

    Raises:
        ConvergenceError: when a subinterval would be split beyond
            ``MAX_DEPTH`` levels or more than ``MAX_SUBINTERVALS`` are used.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if b < a:
        raise ValueError("need a <= b")
    if a == b:
        return 0.0

    val, err = _gk15(g, a, b)
    # heap keyed on -err so the worst interval pops first
    heap = [(-err, a, b, val, 0)]
    total, total_err = val, err
    n = 1
    while total_err > tol * max(1.0, abs(total)):
        neg_err, lo, hi, v, depth = heapq.heappop(heap)
        if depth >= MAX_DEPTH or n >= MAX_SUBINTERVALS:
            raise ConvergenceError(
                f"quadrature did not converge on [{a}, {b}]: error estimate {total_err:.3e}"
            )
        m = 0.5 * (lo + hi)
        v1, e1 = _gk15(g, lo, m)
        v2, e2 = _gk15(g, m, hi)
        total += v1 + v2 - v
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, lo, m, v1, depth + 1))
        heapq.heappush(heap, (-e2, m, hi, v2, depth + 1))
        n += 1
    # re-sum to shed the drift of the running updates
    return math.fsum(item[3] for item in heap)


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    @classmethod
    def of(cls, h: Callable[[float], float], lo: float, hi: float) -> "Bracket":
        return cls(lo, hi, h(lo), h(hi))


def find_root_bracketed(h: Callable[[float], float], bracket: Bracket, tol: float = 1e-12) -> float:
    """Root of h inside ``bracket`` (Brent's method).

    Raises:
        BracketError: if the endpoint values do not straddle zero.
    """
    lo, hi = bracket.lo, bracket.hi
    if not lo < hi:
        raise BracketError(f"invalid bracket: lo={lo} >= hi={hi}")
    if bracket.f_lo * bracket.f_hi > 0:
        raise BracketError(
            f"invalid bracket: h({lo})={bracket.f_lo:.3e} and h({hi})={bracket.f_hi:.3e} share a sign"
        )
    if bracket.f_lo == 0:
        return lo
    if bracket.f_hi == 0:
        return hi
    # absolute floor scaled to the bracket so tiny-magnitude roots keep full precision
    xtol = tol * min(1.0, max(abs(lo), abs(hi)))
    rtol = max(tol, 4 * np.finfo(float).eps)
    return optimize.brentq(h, lo, hi, xtol=xtol, rtol=rtol, maxiter=500)


@dataclass(frozen=True)
class EvenPolynomial:
    """P(s) = sum c_k s**k with s = T**2, coefficients low order first."""

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if len(self.coeffs) > 5:
            raise ValueError("degree in s is limited to 4")
        if not any(self.coeffs):
            raise ValueError("polynomial is identically zero")

    def __call__(self, s: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def in_T(self, T: float) -> float:
        return self(T * T)

    def deflated(self) -> tuple[float, ...]:
        """Coefficients with negligible leading terms dropped."""
        cs = list(self.coeffs)
        scale = max(abs(c) for c in cs)
        while len(cs) > 1 and abs(cs[-1]) <= DEFLATION_RTOL * scale:
            cs.pop()
        return tuple(cs)

    def scaled_residual(self, T: float) -> float:
        """|P(T**2)| / (max|c_k| * max(1, T**2)**degree)."""
        cs = self.deflated()
        scale = max(abs(c) for c in cs) * max(1.0, T * T) ** (len(cs) - 1)
        return abs(self.in_T(T)) / scale

    @property
    def degree(self) -> int:
        return len(self.deflated()) - 1


DEFLATION_RTOL = 1e-14


def _horner(cs: Sequence[float], x: float) -> float:
    acc = 0.0
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _real_roots(cs: Sequence[float]) -> list[float]:
    """All simple real roots of the polynomial with coefficients ``cs``.

    Roots are isolated between consecutive real critical points (found
    recursively from the derivative), so each interval holds at most one
    sign change and Brent's method polishes it to machine precision.
    """
    d = len(cs) - 1
    if d <= 0:
        return []
    if d == 1:
        return [-cs[0] / cs[1]]
    if d == 2:
        c, b, a = cs
        disc = b * b - 4 * a * c
        if disc < 0:
            return []
        q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
        if q == 0.0:
            return [0.0, 0.0]
        return sorted([q / a, c / q])

    deriv = [k * cs[k] for k in range(1, d + 1)]
    crit = _real_roots(deriv)
    # Cauchy bound encloses every real root
    bound = 1.0 + max(abs(c / cs[-1]) for c in cs[:-1])
    knots = [-bound] + [x for x in crit if -bound < x < bound] + [bound]
    roots = []
    for lo, hi in zip(knots, knots[1:]):
        flo, fhi = _horner(cs, lo), _horner(cs, hi)
        if flo == 0.0:
            roots.append(lo)
            continue
        if flo * fhi < 0:
            # relative tolerance only: the Cauchy bound can exceed the root by many decades
            roots.append(
                optimize.brentq(lambda x: _horner(cs, x), lo, hi, xtol=1e-300,
                                rtol=4 * np.finfo(float).eps, maxiter=500)
            )
    if _horner(cs, knots[-1]) == 0.0:
        roots.append(knots[-1])
    return sorted(set(roots))


def positive_T_roots(p: EvenPolynomial) -> list[float]:
    """Positive T with P(T**2) = 0, ascending.

    The first entry is the physical branch (the one continuing from 2*pi at
    zero nonlinearity).

    Raises:
        NoRootError: if P has no positive real root in s.
    """
    cs = p.deflated()
    roots = [math.sqrt(s) for s in _real_roots(cs) if s > 0]
    if not roots:
        raise NoRootError(f"no positive root for coefficients {cs}")
    return roots
