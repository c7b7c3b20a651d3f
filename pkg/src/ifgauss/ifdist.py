"""Exact law of the instantaneous frequency at a fixed time.

The phase derivative of a proper Gaussian process at time t is determined by
four covariance-derivative values

    a = r_x(t,t),  b = d1 r_yx(t,t),  c = d1 r_x(t,t),  d = d1 d2 r_x(t,t)

through the discriminant delta = a*d - b^2 - c^2 >= 0.  Three regimes:

* delta > 0   -- heavy-tail law with density
                 (a/2) * delta * ((a y - b)^2 + delta)^(-3/2),
                 mean b/a and infinite variance;
* delta = 0, a > 0 -- point mass at b/a (zero variance);
* a = 0       -- the IF is the +inf sentinel almost surely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ParameterDomainError, RegimeError
from .models import CovarianceModel, eval_cov_derivs

#: Default scale-relative tolerance for the zero test of the discriminant.
DELTA_TOL_REL = 1e-9

#: Sentinel for an almost-surely infinite IF; deliberately not NaN.
INF = math.inf


class Regime(Enum):
    """Which of the three laws governs the IF at the given time."""

    HEAVY_TAIL = "heavy-tail"
    DEGENERATE = "degenerate"
    INFINITE_IF = "infinite-if"


class VarianceClass(Enum):
    INFINITE = "infinite"
    ZERO = "zero"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class IFParams:
    """Covariance-derivative quadruple at time t plus its discriminant.

    ``delta`` is a*d - b^2 - c^2 clamped to exactly 0 when within the
    scale-relative tolerance of zero; construction through
    :func:`IFParams.from_values` or :func:`if_params` enforces the
    positive-semidefiniteness constraints (a, d >= 0; delta >= -tol;
    a = 0 forces b = c = 0).
    """

    a: float
    b: float
    c: float
    d: float
    delta: float
    t: float = 0.0

    @classmethod
    def from_values(
        cls, a: float, b: float, c: float, d: float, t: float = 0.0, tol_rel: float = DELTA_TOL_REL
    ) -> "IFParams":
        scale = a * d + b * b + c * c + np.finfo(float).eps
        tol = tol_rel * scale
        if a < -1e-12 * (1 + abs(d)) or d < -1e-12 * (1 + abs(a)):
            raise ParameterDomainError(f"negative variance entries (a={a}, d={d})")
        a = max(a, 0.0)
        d = max(d, 0.0)
        raw = a * d - b * b - c * c
        if raw < -tol:
            raise ParameterDomainError(
                f"discriminant a*d - b^2 - c^2 = {raw:.6e} < -{tol:.1e}: "
                "not a valid proper-process derivative set"
            )
        delta = 0.0 if abs(raw) <= tol else raw
        if a <= _tol_a(a, d) and (b * b + c * c) > tol:
            raise ParameterDomainError("a = 0 requires b = c = 0 (positive semidefiniteness)")
        return cls(a, b, c, d, delta, t)


def _tol_a(a: float, d: float) -> float:
    return 1e-12 * (1 + d)


def if_params(model: CovarianceModel, t: float, tol_rel: float = DELTA_TOL_REL) -> IFParams:
    """Extract the IF-law parameters of a covariance model at time t."""
    bundle = eval_cov_derivs(model, t)
    return IFParams.from_values(
        bundle.r_xx, bundle.d1_r_yx, bundle.d1_r_x, bundle.d11_22_r_x, t=t, tol_rel=tol_rel
    )


def cov_matrix(p: IFParams) -> np.ndarray:
    """4x4 covariance of the Gaussian vector (x(t), dy(t), y(t), dx(t)).

    The determinant equals delta^2.
    """
    a, b, c, d = p.a, p.b, p.c, p.d
    return np.array(
        [
            [a, b, 0.0, c],
            [b, d, c, 0.0],
            [0.0, c, a, -b],
            [c, 0.0, -b, d],
        ]
    )


def classify_regime(p: IFParams, tol_rel: float = DELTA_TOL_REL) -> Regime:
    """Assign the regime with a scale-aware zero test.

    The zero-power test (a against 1e-12*(1+d)) takes precedence: when the
    process power vanishes the discriminant vanishes with it.
    """
    if p.a <= _tol_a(p.a, p.d):
        return Regime.INFINITE_IF
    tol = tol_rel * (p.a * p.d + p.b * p.b + p.c * p.c + np.finfo(float).eps)
    if p.delta > tol:
        return Regime.HEAVY_TAIL
    return Regime.DEGENERATE


def _require_heavy_tail(p: IFParams):
    regime = classify_regime(p)
    if regime is not Regime.HEAVY_TAIL:
        raise RegimeError(f"operation needs the heavy-tail regime, got {regime.value}")


def pdf(p: IFParams, y):
    """Heavy-tail IF density (a/2) * delta * ((a y - b)^2 + delta)^(-3/2).

    Symmetric about b/a with tails decaying like |y|^-3 (infinite variance).
    Raises :class:`RegimeError` outside the heavy-tail regime.
    """
    _require_heavy_tail(p)
    y = np.asarray(y, dtype=float)
    u = p.a * y - p.b
    out = (p.a / 2) * p.delta * (u * u + p.delta) ** -1.5
    return float(out) if out.ndim == 0 else out


def cdf(p: IFParams, y):
    """Closed-form distribution function of the heavy-tail law.

    F(y) = 1/2 + (a y - b) / (2 sqrt((a y - b)^2 + delta)); validated against
    adaptive quadrature of :func:`pdf` in the acceptance suite.
    """
    _require_heavy_tail(p)
    y = np.asarray(y, dtype=float)
    u = p.a * y - p.b
    out = 0.5 + 0.5 * u / np.sqrt(u * u + p.delta)
    return float(out) if out.ndim == 0 else out


def quantile(p: IFParams, q):
    """Inverse of :func:`cdf` on (0, 1): y = b/a + (u/a) sqrt(delta/(1-u^2)), u = 2q-1."""
    _require_heavy_tail(p)
    q = np.asarray(q, dtype=float)
    if np.any(q <= 0.0) or np.any(q >= 1.0):
        raise ParameterDomainError("quantile needs 0 < q < 1")
    u = 2 * q - 1
    # 1 - u^2 written as 4 q (1-q): no cancellation for q near the endpoints
    out = p.b / p.a + (u / p.a) * np.sqrt(p.delta / (4 * q * (1 - q)))
    return float(out) if out.ndim == 0 else out


def mean_if(p: IFParams) -> float:
    """Mean of the IF: b/a, or the +inf sentinel when the power vanishes."""
    if classify_regime(p) is Regime.INFINITE_IF:
        return INF
    return p.b / p.a


def variance_if(p: IFParams) -> VarianceClass:
    """Variance class: infinite (heavy tail), zero (point mass), or undefined."""
    regime = classify_regime(p)
    if regime is Regime.HEAVY_TAIL:
        return VarianceClass.INFINITE
    if regime is Regime.DEGENERATE:
        return VarianceClass.ZERO
    return VarianceClass.UNDEFINED


@dataclass(frozen=True)
class IFDistribution:
    """Regime-tagged law of the IF at a fixed time."""

    regime: Regime
    params: IFParams
    center: float  # b/a, or the +inf sentinel in the infinite regime

    @classmethod
    def from_params(cls, p: IFParams) -> "IFDistribution":
        return cls(classify_regime(p), p, mean_if(p))

    @classmethod
    def from_model(cls, model: CovarianceModel, t: float) -> "IFDistribution":
        return cls.from_params(if_params(model, t))

    def pdf(self, y):
        return pdf(self.params, y)

    def cdf(self, y):
        return cdf(self.params, y)

    def quantile(self, q):
        return quantile(self.params, q)

    @property
    def mean(self) -> float:
        return self.center

    @property
    def variance_class(self) -> VarianceClass:
        return variance_if(self.params)
