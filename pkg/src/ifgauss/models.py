"""Covariance models of proper, zero-mean, complex Gaussian processes.

Every model describes a process z(t) = x(t) + i y(t) through the complex
covariance r_z(t, s) = E z(t) conj(z(s)).  Properness (E z(t) z(s) = 0) is
built into the parameterization: models expose the real pair

    r_x(t, s) = Re r_z(t, s) / 2,      r_yx(t, s) = Im r_z(t, s) / 2,

with r_x symmetric and r_yx antisymmetric.  The analytic presets carry
closed-form derivative code; ``NumericCovModel`` is the only path that falls
back to finite differences.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .errors import NumericEvaluationError, ParameterDomainError

# Central-difference step scale for the finite-difference covariance path and
# for the analytic-vs-numeric cross checks: h = FD_STEP_SCALE * (1 + |t|).
FD_STEP_SCALE = 1e-5

# Gram-matrix positive-semidefiniteness tolerance: min eigenvalue >= -PSD_TOL * trace.
PSD_TOL = 1e-10

_PROPERNESS_TOL = 1e-9


@dataclass(frozen=True)
class DerivBundle:
    """Covariance-derivative values of a model at a fixed time t.

    Attributes
    ----------
    r_xx : float
        r_x(t, t), the in-phase power (units: power).
    d1_r_x : float
        First-slot partial of r_x at (t, t) (power / s).
    d11_22_r_x : float
        Mixed partial of r_x at (t, t); equals the derivative-process power
        E dy(t)^2 and is therefore nonnegative (power / s^2).
    d1_r_yx : float
        First-slot partial of the cross covariance r_yx at (t, t) (power / s).
    """

    r_xx: float
    d1_r_x: float
    d11_22_r_x: float
    d1_r_yx: float

    def __post_init__(self):
        vals = (self.r_xx, self.d1_r_x, self.d11_22_r_x, self.d1_r_yx)
        if not all(math.isfinite(v) for v in vals):
            raise NumericEvaluationError(f"non-finite covariance derivatives: {vals}")


@dataclass(frozen=True)
class SpectralAtom:
    """One point mass of a two-frequency spectral measure."""

    xi: float
    eta: float
    w: complex


@dataclass(frozen=True)
class SpectralAtomMeasure:
    """Finite atomic spectral measure on the (xi, eta) frequency plane.

    The atom set must be Hermitian-symmetric: for every atom (xi, eta, w)
    the atom (eta, xi, conj(w)) must be present (exact coordinate match),
    and the weight matrix over the shared frequency support must be positive
    semidefinite.  These two conditions make the induced kernel

        r_z(t, s) = sum_k w_k exp(i (t xi_k - s eta_k))

    a valid covariance of a proper process.  Finiteness of the atom list
    makes all first-order spectral moments automatically finite.
    """

    atoms: tuple[SpectralAtom, ...]

    def __post_init__(self):
        atoms = tuple(
            a if isinstance(a, SpectralAtom) else SpectralAtom(float(a[0]), float(a[1]), complex(a[2]))
            for a in self.atoms
        )
        object.__setattr__(self, "atoms", atoms)
        coords = [(a.xi, a.eta) for a in atoms]
        if len(set(coords)) != len(coords):
            raise ParameterDomainError("duplicate atom coordinates in spectral measure")
        table = {(a.xi, a.eta): a.w for a in atoms}
        for a in atoms:
            partner = table.get((a.eta, a.xi))
            if partner is None or partner != a.w.conjugate():
                raise ParameterDomainError(
                    f"atom ({a.xi}, {a.eta}) lacks Hermitian partner (eta, xi, conj(w))"
                )
        if atoms:
            support = sorted({a.xi for a in atoms} | {a.eta for a in atoms})
            index = {u: k for k, u in enumerate(support)}
            W = np.zeros((len(support), len(support)), dtype=complex)
            for a in atoms:
                W[index[a.xi], index[a.eta]] += a.w
            wmin = np.linalg.eigvalsh(W).min()
            if wmin < -PSD_TOL * max(np.trace(W).real, 1.0):
                raise ParameterDomainError(
                    f"spectral weight matrix is not positive semidefinite (min eig {wmin:.3e})"
                )

    def cov(self, t: float, s: float) -> complex:
        return sum(
            (a.w * cmath.exp(1j * (t * a.xi - s * a.eta)) for a in self.atoms),
            start=0j,
        )

    def derivs(self, t: float) -> DerivBundle:
        r = 0j
        d1 = 0j
        d12 = 0j
        for a in self.atoms:
            phase = cmath.exp(1j * t * (a.xi - a.eta))
            wp = a.w * phase
            r += wp
            d1 += 1j * a.xi * wp
            d12 += a.xi * a.eta * wp
        return DerivBundle(r.real / 2, d1.real / 2, d12.real / 2, d1.imag / 2)


@dataclass(frozen=True)
class WSSModel:
    """Wide-sense stationary model: r_x(t,s) = rho_x(t-s), r_yx(t,s) = rho_yx(t-s).

    ``rho_x`` must be even and ``rho_yx`` odd.  The scalars ``d_rho_yx0``
    (derivative of rho_yx at lag 0) and ``d2_rho_x0`` (second derivative of
    rho_x at lag 0) carry the analytic derivative information; stationarity
    makes these the only derivative values the covariance bundle needs.
    """

    rho_x: Callable[[float], float]
    rho_yx: Callable[[float], float]
    d_rho_yx0: float
    d2_rho_x0: float

    def cov(self, t: float, s: float) -> complex:
        tau = t - s
        return complex(2 * self.rho_x(tau), 2 * self.rho_yx(tau))

    def derivs(self, t: float) -> DerivBundle:
        # rho_x even => its derivative vanishes at lag 0, exactly.
        return DerivBundle(float(self.rho_x(0.0)), 0.0, -self.d2_rho_x0, self.d_rho_yx0)


@dataclass(frozen=True)
class LocallyStationaryModel:
    """Gaussian-window locally stationary model.

    r_x(t,s) = r_y(t,s) = exp(-2*alpha*((t+s)/2)^2 - (beta/2)*(t-s)^2) with
    independent x and y (so r_yx = 0).  The kernel is a valid covariance only
    for beta >= alpha >= 0; the constructor accepts any nonnegative pair so
    that ``psd_spotcheck`` can exhibit the failure, and the distribution layer
    rejects the resulting negative discriminant.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha >= 0.0 and self.beta >= 0.0):
            raise ParameterDomainError("locally stationary model needs alpha >= 0 and beta >= 0")

    def cov(self, t: float, s: float) -> complex:
        mid = (t + s) / 2
        return complex(2 * math.exp(-2 * self.alpha * mid * mid - self.beta / 2 * (t - s) ** 2), 0.0)

    def derivs(self, t: float) -> DerivBundle:
        e = math.exp(-2 * self.alpha * t * t)
        a, b = self.alpha, self.beta
        return DerivBundle(e, -2 * a * t * e, ((b - a) + 4 * a * a * t * t) * e, 0.0)


@dataclass(frozen=True)
class RankOneModel:
    """Rank-one process z(t) = X * g(t) with X proper complex Gaussian.

    ``x_power`` is E|X|^2; the default 2.0 normalizes r_z(t,s) to
    2 g(t) conj(g(s)), i.e. r_x(t,s) = Re(g(t) conj(g(s))) for real g.
    ``dg`` is the derivative of ``g``.
    """

    g: Callable[[float], complex]
    dg: Callable[[float], complex]
    x_power: float = 2.0

    def __post_init__(self):
        if not self.x_power > 0.0:
            raise ParameterDomainError("rank-one model needs x_power > 0")

    def cov(self, t: float, s: float) -> complex:
        return self.x_power * complex(self.g(t)) * complex(self.g(s)).conjugate()

    def derivs(self, t: float) -> DerivBundle:
        half = self.x_power / 2
        gv = complex(self.g(t))
        dv = complex(self.dg(t))
        cross = dv * gv.conjugate()
        return DerivBundle(half * abs(gv) ** 2, half * cross.real, half * abs(dv) ** 2, half * cross.imag)


@dataclass(frozen=True)
class TwoToneModel:
    """Two correlated random tones: z(t) = X1 e^{i t xi} + X2 e^{i t eta}.

    X1, X2 are jointly proper zero-mean unit-variance complex Gaussians with
    E X1 conj(X2) = corr, |corr| < 1 and xi != eta.
    """

    xi: float
    eta: float
    corr: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "corr", complex(self.corr))
        if self.xi == self.eta:
            raise ParameterDomainError("two-tone model needs xi != eta")
        if not abs(self.corr) < 1.0:
            raise ParameterDomainError("two-tone model needs |corr| < 1")

    def cov(self, t: float, s: float) -> complex:
        c = self.corr
        return (
            cmath.exp(1j * self.xi * (t - s))
            + cmath.exp(1j * self.eta * (t - s))
            + c * cmath.exp(1j * (self.xi * t - self.eta * s))
            + c.conjugate() * cmath.exp(1j * (self.eta * t - self.xi * s))
        )

    def derivs(self, t: float) -> DerivBundle:
        xi, eta = self.xi, self.eta
        rot = self.corr * cmath.exp(1j * t * (xi - eta))
        return DerivBundle(
            1 + rot.real,
            (eta - xi) / 2 * rot.imag,
            (xi * xi + eta * eta) / 2 + xi * eta * rot.real,
            (xi + eta) / 2 * (1 + rot.real),
        )

    def spectral_measure(self) -> SpectralAtomMeasure:
        c = self.corr
        return SpectralAtomMeasure(
            (
                SpectralAtom(self.xi, self.xi, 1.0 + 0j),
                SpectralAtom(self.eta, self.eta, 1.0 + 0j),
                SpectralAtom(self.xi, self.eta, c),
                SpectralAtom(self.eta, self.xi, c.conjugate()),
            )
        )


@dataclass(frozen=True)
class AtomicSpectralModel:
    """Harmonizable process with a finite atomic spectral measure."""

    measure: SpectralAtomMeasure

    def cov(self, t: float, s: float) -> complex:
        return self.measure.cov(t, s)

    def derivs(self, t: float) -> DerivBundle:
        return self.measure.derivs(t)


@dataclass(frozen=True)
class NumericCovModel:
    """Covariance given as raw callables r_x(t,s), r_yx(t,s).

    Derivatives come from central finite differences with step
    fd_step * (1 + |t|); the mixed partial uses the 4-point cross stencil
    with the same step.
    """

    r_x: Callable[[float, float], float]
    r_yx: Callable[[float, float], float]
    fd_step: float = FD_STEP_SCALE

    def cov(self, t: float, s: float) -> complex:
        return complex(2 * self.r_x(t, s), 2 * self.r_yx(t, s))

    def derivs(self, t: float) -> DerivBundle:
        h = self.fd_step * (1 + abs(t))
        rx, ryx = self.r_x, self.r_yx
        d1_r_x = (rx(t + h, t) - rx(t - h, t)) / (2 * h)
        d1_r_yx = (ryx(t + h, t) - ryx(t - h, t)) / (2 * h)
        d12 = (rx(t + h, t + h) - rx(t + h, t - h) - rx(t - h, t + h) + rx(t - h, t - h)) / (4 * h * h)
        return DerivBundle(float(rx(t, t)), d1_r_x, d12, d1_r_yx)


CovarianceModel = Union[
    WSSModel,
    LocallyStationaryModel,
    RankOneModel,
    TwoToneModel,
    AtomicSpectralModel,
    NumericCovModel,
]


# ---------------------------------------------------------------------------
# Preset constructors


def wss_cosine(amplitude: float = 1.0, beta: float = 1.0) -> WSSModel:
    """Single-tone WSS model: rho_x = A cos(beta tau), rho_yx = A sin(beta tau).

    This is the rank-one line spectrum r_z = 2 A e^{i beta tau}; its
    discriminant vanishes identically, so the IF is deterministic.
    """
    if amplitude <= 0:
        raise ParameterDomainError("wss_cosine needs amplitude > 0")
    return WSSModel(
        rho_x=lambda tau: amplitude * math.cos(beta * tau),
        rho_yx=lambda tau: amplitude * math.sin(beta * tau),
        d_rho_yx0=amplitude * beta,
        d2_rho_x0=-amplitude * beta * beta,
    )


def wss_gaussian(amplitude: float = 1.0, rate: float = 1.0) -> WSSModel:
    """Gaussian-covariance WSS model: rho_x = A exp(-rate tau^2), rho_yx = 0."""
    if amplitude <= 0 or rate <= 0:
        raise ParameterDomainError("wss_gaussian needs amplitude > 0 and rate > 0")
    return WSSModel(
        rho_x=lambda tau: amplitude * math.exp(-rate * tau * tau),
        rho_yx=lambda tau: 0.0,
        d_rho_yx0=0.0,
        d2_rho_x0=-2 * rate * amplitude,
    )


def wss_two_tone(xi: float, eta: float) -> WSSModel:
    """Independent two-tone process expressed as a WSS model.

    Equals ``TwoToneModel(xi, eta, corr=0)``: rho_x = (cos xi tau + cos eta tau)/2,
    rho_yx = (sin xi tau + sin eta tau)/2.
    """
    if xi == eta:
        raise ParameterDomainError("wss_two_tone needs xi != eta")
    return WSSModel(
        rho_x=lambda tau: (math.cos(xi * tau) + math.cos(eta * tau)) / 2,
        rho_yx=lambda tau: (math.sin(xi * tau) + math.sin(eta * tau)) / 2,
        d_rho_yx0=(xi + eta) / 2,
        d2_rho_x0=-(xi * xi + eta * eta) / 2,
    )


def rank_one_chirp(
    amplitude: float = 1.0,
    sigma: float = 1.0,
    omega0: float = 0.0,
    chirp: float = 0.0,
    x_power: float = 2.0,
) -> RankOneModel:
    """Rank-one model with Gaussian envelope and linear-chirp phase.

    g(t) = amplitude * exp(-t^2 / (2 sigma^2)) * exp(i (omega0 t + chirp t^2 / 2)),
    so the deterministic phase derivative of g is omega0 + chirp * t.
    """
    if amplitude <= 0 or sigma <= 0:
        raise ParameterDomainError("rank_one_chirp needs amplitude > 0 and sigma > 0")

    def g(t):
        return amplitude * np.exp(-(t * t) / (2 * sigma * sigma) + 1j * (omega0 * t + chirp * t * t / 2))

    def dg(t):
        return (-t / (sigma * sigma) + 1j * (omega0 + chirp * t)) * g(t)

    return RankOneModel(g=g, dg=dg, x_power=x_power)


# ---------------------------------------------------------------------------
# Operations


def eval_cov(model: CovarianceModel, t: float, s: float) -> complex:
    """Evaluate r_z(t, s) = 2 r_x(t, s) + 2i r_yx(t, s)."""
    value = complex(model.cov(t, s))
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise NumericEvaluationError(f"covariance non-finite at (t={t}, s={s})")
    return value


def eval_cov_derivs(model: CovarianceModel, t: float) -> DerivBundle:
    """Covariance-derivative bundle of the model at time t.

    Analytic for all presets; central finite differences for
    ``NumericCovModel`` (DerivBundle validates finiteness).
    """
    return model.derivs(t)


def spectral_to_cov(measure: SpectralAtomMeasure, t: float, s: float) -> complex:
    """Kernel value sum_k w_k exp(i (t xi_k - s eta_k)); 0 for an empty measure."""
    return measure.cov(t, s)


@dataclass(frozen=True)
class PropernessReport:
    """Grid check of the structural properness identities."""

    max_symmetry_violation: float      # max |r_x(t,s) - r_x(s,t)|
    max_antisymmetry_violation: float  # max |r_yx(t,s) + r_yx(s,t)|
    tolerance: float

    @property
    def max_violation(self) -> float:
        return max(self.max_symmetry_violation, self.max_antisymmetry_violation)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance


def check_properness(
    model: CovarianceModel, grid: Sequence[float], tol: float = _PROPERNESS_TOL
) -> PropernessReport:
    """Check r_x symmetry and r_yx antisymmetry over all grid pairs.

    With the proper parameterization r_x == r_y holds structurally; what can
    break (e.g. for a hand-written ``NumericCovModel``) is the symmetry of
    r_x or the antisymmetry of r_yx, both of which r_z must satisfy through
    r_z(t,s) = conj(r_z(s,t)).
    """
    grid = list(grid)
    if not grid:
        raise ParameterDomainError("properness check needs a nonempty grid")
    sym = 0.0
    asym = 0.0
    for t in grid:
        for s in grid:
            r_ts = eval_cov(model, t, s)
            r_st = eval_cov(model, s, t)
            sym = max(sym, abs(r_ts.real - r_st.real) / 2)
            asym = max(asym, abs(r_ts.imag + r_st.imag) / 2)
    return PropernessReport(sym, asym, tol)


@dataclass(frozen=True)
class PsdReport:
    """Spot check of the covariance Gram matrix on a finite grid."""

    min_eigenvalue: float
    trace: float
    rank: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.min_eigenvalue >= -self.tolerance * max(self.trace, 0.0)


def psd_spotcheck(model: CovarianceModel, grid: Sequence[float], tol: float = PSD_TOL) -> PsdReport:
    """Eigenvalue check of the Gram matrix [r_z(t_i, t_j)] on the grid.

    Guards the positive-semidefiniteness the distribution layer relies on.
    Numerically rank-deficient kernels (rank-one models) must pass, hence the
    trace-relative tolerance.
    """
    grid = list(grid)
    if not grid:
        raise ParameterDomainError("psd spot check needs a nonempty grid")
    if len(grid) > 64:
        raise ParameterDomainError("psd spot check grid is limited to 64 points")
    n = len(grid)
    gram = np.empty((n, n), dtype=complex)
    for i, t in enumerate(grid):
        for j, s in enumerate(grid):
            gram[i, j] = eval_cov(model, t, s)
    gram = (gram + gram.conj().T) / 2
    eigs = np.linalg.eigvalsh(gram)
    trace = float(np.trace(gram).real)
    rank = int(np.sum(eigs > tol * max(trace, 1.0)))
    return PsdReport(float(eigs.min()), trace, rank, tol)


def spectral_moment_order_one(measure: SpectralAtomMeasure) -> float:
    """First-order spectral moment sum_k (1+xi_k^2)^{1/2} (1+eta_k^2)^{1/2} |w_k|.

    Always finite for atomic measures; a finite value is the differentiability
    budget of the induced process.
    """
    return float(
        sum(
            math.sqrt(1 + a.xi * a.xi) * math.sqrt(1 + a.eta * a.eta) * abs(a.w)
            for a in measure.atoms
        )
    )
