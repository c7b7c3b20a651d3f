"""Discrete Wigner distributions, Wigner spectra of atomic measures, and
first-order frequency-moment identities.

For a signal f the Wigner transform is the Fourier transform over the lag of
f(t + tau/2) conj(f(t - tau/2)); its normalized first frequency moment
recovers the phase derivative wherever f does not vanish.  For a process with
an atomic two-frequency spectral measure, the expected Wigner transform is an
atomic measure in frequency whose moment ratio equals the mean IF b/a.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import NumericEvaluationError, ParameterDomainError, RegimeError, SignalZeroError
from .models import CovarianceModel, SpectralAtomMeasure, eval_cov_derivs

#: Frequency atoms closer than ATOM_MERGE_TOL * (1 + |xi|) coalesce.
ATOM_MERGE_TOL = 1e-12

#: Moment ratios are refused where the zeroth moment falls below this
#: fraction of its maximum over the grid.
ZERO_FLOOR_REL = 1e-12

#: Conditioning flag threshold: |f(t)|^2 >= 1e-6 * max (i.e. |f| >= 1e-3 * max).
CONDITIONING_REL = 1e-6

_IMAG_RESIDUE_TOL = 1e-10


def deterministic_if(x: float, y: float, xdot: float, ydot: float) -> float:
    """Phase derivative (x ydot - xdot y) / (x^2 + y^2); +inf where the signal is zero."""
    den = x * x + y * y
    if den == 0.0:
        return math.inf
    return (x * ydot - xdot * y) / den


@dataclass(frozen=True)
class SignalGrid:
    """Complex signal sampled at t0 + k*dt, k = 0..N-1.

    ``func``, when given, is the signal as a callable; the Wigner transform
    then evaluates the half-lag products directly from it (no grid-edge lag
    truncation, no interpolation).  ``dsamples`` optionally carries derivative
    samples of the same length.
    """

    t0: float
    dt: float
    samples: np.ndarray
    dsamples: np.ndarray | None = None
    func: Callable | None = None

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1 or len(samples) < 8:
            raise ParameterDomainError("signal grid needs at least 8 samples")
        if not self.dt > 0:
            raise ParameterDomainError("signal grid needs dt > 0")
        if self.dsamples is not None:
            ds = np.asarray(self.dsamples, dtype=complex)
            if ds.shape != samples.shape:
                raise ParameterDomainError("derivative samples must match the signal length")
            object.__setattr__(self, "dsamples", ds)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self.samples))

    @classmethod
    def from_callable(
        cls,
        func: Callable,
        t0: float,
        dt: float,
        n: int,
        dfunc: Callable | None = None,
        keep_func: bool = True,
    ) -> "SignalGrid":
        times = t0 + dt * np.arange(n)
        samples = np.asarray(func(times), dtype=complex)
        dsamples = np.asarray(dfunc(times), dtype=complex) if dfunc is not None else None
        return cls(t0, dt, samples, dsamples, func if keep_func else None)


@dataclass(frozen=True)
class WignerGrid:
    """Real Wigner values on a (time, frequency) grid.

    ``values[i, k]`` is W(times[i], freqs[k]); the frequency axis spans
    +-pi/(2 dt) with spacing pi/(N dt) per the half-lag construction.
    """

    times: np.ndarray
    freqs: np.ndarray
    values: np.ndarray

    @property
    def dxi(self) -> float:
        return float(self.freqs[1] - self.freqs[0])

    def zeroth_moments(self) -> np.ndarray:
        return self.values.sum(axis=1) * self.dxi

    def first_moments(self) -> np.ndarray:
        return (self.values * self.freqs[None, :]).sum(axis=1) * self.dxi


def _band_slice(n: int) -> slice:
    # central n bins of a length-2n fftshifted axis: k in [-(n//2), n - n//2)
    start = n - n // 2
    return slice(start, start + n)


def _band_freqs(n: int, dt: float) -> np.ndarray:
    k = np.arange(-n, n)[_band_slice(n)]
    return (np.pi / (n * dt)) * k


def wigner_distribution(sig: SignalGrid) -> WignerGrid:
    """Discrete Wigner transform of the signal on its own time grid.

    The caller is responsible for sampling at twice the rate the signal's
    bandwidth needs: with sample step dt the unambiguous frequency band is
    +-pi/(2 dt).

    For raw samples the transform uses the even-lag products
    f(t+l dt) conj(f(t-l dt)) zero-interleaved into a length-2N FFT (the lag
    window is the full signal extent, zero padded).  When the grid carries
    its generating callable, the products are evaluated on the extended
    half-step lag grid instead, which removes the grid-edge lag truncation;
    this path keeps the first-moment identity accurate near the edges of the
    signal's support.
    """
    n = len(sig.samples)
    if sig.func is not None:
        q = _lag_products_callable(sig)
        scale = sig.dt  # lag step dt: all parities present
    else:
        q = _lag_products_sampled(sig)
        scale = 2 * sig.dt  # lag step 2*dt on the even entries
    spectrum = np.fft.fft(q, axis=1)
    resid = np.abs(spectrum.imag).max()
    peak = np.abs(spectrum.real).max()
    if peak > 0 and resid > _IMAG_RESIDUE_TOL * peak:
        raise NumericEvaluationError(f"Wigner values not real: residue {resid:.3e} of {peak:.3e}")
    w = scale * np.fft.fftshift(spectrum.real, axes=1)[:, _band_slice(n)]
    return WignerGrid(sig.times, _band_freqs(n, sig.dt), w)


def _lag_products_sampled(sig: SignalGrid) -> np.ndarray:
    s = sig.samples
    n = len(s)
    q = np.zeros((n, 2 * n), dtype=complex)
    j = np.arange(n)
    for lag in range(n):
        lo, hi = lag, n - lag  # j range with both j+lag and j-lag in the grid
        if lo >= hi:
            break
        rows = j[lo:hi]
        p = s[rows + lag] * np.conj(s[rows - lag])
        q[rows, (2 * lag) % (2 * n)] = p
        if lag:
            q[rows, 2 * n - 2 * lag] = np.conj(p)
    return q


def _lag_products_callable(sig: SignalGrid) -> np.ndarray:
    n = len(sig.samples)
    # half-step grid t0 + u*dt/2 reaching (n-1)*dt/2 beyond both grid ends
    u = np.arange(-(n - 1), 3 * (n - 1) + 1)
    f = np.asarray(sig.func(sig.t0 + u * (sig.dt / 2)), dtype=complex)
    off = n - 1  # index of u = 0
    q = np.zeros((n, 2 * n), dtype=complex)
    jj = 2 * np.arange(n) + off
    for m in range(n):  # lag tau = m*dt needs f at u = 2j +- m
        p = f[jj + m] * np.conj(f[jj - m])
        q[:, m % (2 * n)] = p
        if m:
            q[:, 2 * n - m] = np.conj(p)
    return q


def wigner_moment_ratio(w: WignerGrid, t: float) -> float:
    """Normalized first frequency moment of the Wigner grid at time t.

    Equals the phase derivative for smooth, decaying signals wherever the
    signal is appreciably nonzero.  Refuses time points whose zeroth moment
    is below ``ZERO_FLOOR_REL`` of the grid maximum (the identity excludes
    zeros of the signal).
    """
    idx = int(np.argmin(np.abs(w.times - t)))
    step = w.times[1] - w.times[0] if len(w.times) > 1 else np.inf
    if abs(w.times[idx] - t) > step:
        raise ParameterDomainError(f"time {t} outside the Wigner grid")
    m0 = w.zeroth_moments()
    floor = ZERO_FLOOR_REL * m0.max()
    if not m0[idx] > floor:
        raise SignalZeroError(f"zeroth moment at t={w.times[idx]:g} below the usable floor")
    m1 = w.first_moments()
    return float(m1[idx] / m0[idx])


def moment_table(w: WignerGrid) -> dict:
    """Per-time moment ratios with conditioning flags.

    ``well_conditioned`` marks times with |f(t)|^2 >= 1e-6 of the maximum
    (signal amplitude within a factor 1e-3 of its peak); outside that set the
    discrete ratio is reported but ill-conditioned.  Entries below the hard
    zero floor are NaN.
    """
    m0 = w.zeroth_moments()
    m1 = w.first_moments()
    peak = m0.max()
    usable = m0 > ZERO_FLOOR_REL * peak
    ratio = np.full(len(m0), np.nan)
    ratio[usable] = m1[usable] / m0[usable]
    return {
        "t": w.times,
        "moment_ratio": ratio,
        "zeroth_moment": m0,
        "well_conditioned": m0 >= CONDITIONING_REL * peak,
    }


@dataclass(frozen=True)
class FreqAtom:
    xi: float
    w: complex


@dataclass(frozen=True)
class FreqAtomMeasure:
    """Atomic measure in frequency: the Wigner spectrum of an atomic process at one time."""

    t: float
    atoms: tuple[FreqAtom, ...]

    def total_weight(self) -> complex:
        return sum((a.w for a in self.atoms), start=0j)

    def first_moment(self) -> complex:
        return sum((a.xi * a.w for a in self.atoms), start=0j)


def wigner_spectrum_atoms(measure: SpectralAtomMeasure, t: float) -> FreqAtomMeasure:
    """Map the spectral atoms through the time-lag coordinate change.

    An atom at (xi, eta) with weight w contributes the frequency atom at
    (xi + eta)/2 with weight 2*pi*w*exp(i t (xi - eta)); atoms landing on the
    same frequency coalesce by weight addition.  The total weight equals
    2*pi*E|z(t)|^2 (real and nonnegative).
    """
    raw: list[tuple[float, complex]] = [
        ((a.xi + a.eta) / 2, 2 * np.pi * a.w * cmath.exp(1j * t * (a.xi - a.eta)))
        for a in measure.atoms
    ]
    raw.sort(key=lambda item: item[0])
    merged: list[list] = []
    for xi, w in raw:
        if merged and abs(xi - merged[-1][0]) <= ATOM_MERGE_TOL * (1 + abs(xi)):
            merged[-1][1] += w
        else:
            merged.append([xi, w])
    atoms = tuple(FreqAtom(xi, w) for xi, w in merged)
    fam = FreqAtomMeasure(t, atoms)
    total = fam.total_weight()
    if abs(total.imag) > 1e-12 * max(abs(total), 1e-300):
        raise NumericEvaluationError(f"total spectrum weight not real: {total}")
    return fam


def spectrum_moment_ratio(measure: SpectralAtomMeasure, t: float) -> float:
    """Normalized first moment of the Wigner spectrum at time t.

    Exact for atomic measures and equal to the mean IF b/a whenever the
    process power E|z(t)|^2 is positive; a vanishing zeroth moment raises
    (the time belongs to the infinite-IF set).
    """
    fam = wigner_spectrum_atoms(measure, t)
    m0 = fam.total_weight()
    m1 = fam.first_moment()
    scale = max(abs(m0), abs(m1), 1e-300)
    if abs(m0.imag) > 1e-12 * scale or abs(m1.imag) > 1e-12 * scale:
        raise NumericEvaluationError("spectrum moments carry a non-real residue")
    if m0.real <= ZERO_FLOOR_REL * sum(abs(a.w) for a in fam.atoms) or m0.real <= 0.0:
        raise RegimeError(f"process power vanishes at t={t:g}: moment ratio undefined")
    return float(m1.real / m0.real)


def pseudo_if_mean(model: CovarianceModel, t: float) -> float:
    """Mean of the power-normalized IF surrogate (d1 - d2) r_yx(t,t) / r_z(t,t).

    Properness collapses the numerator to 2 * d1 r_yx(t,t), so the value is
    b/a; for atomic harmonizable models it coincides with
    :func:`spectrum_moment_ratio`.
    """
    bundle = eval_cov_derivs(model, t)
    power = 2 * bundle.r_xx  # r_z(t,t)
    if power <= 0.0:
        raise SignalZeroError(f"process power vanishes at t={t:g}")
    return 2 * bundle.d1_r_yx / power
