"""Time-axis regime scanning and the stationary zero/infinite-variance dichotomy.

The time axis of any proper differentiable Gaussian process splits into the
set where the IF law has heavy tails (positive discriminant), the set where
it is a point mass (zero discriminant, positive power), and the set where the
power itself vanishes.  The scanner labels a finite grid; it reports what it
sees and makes no claim about the continuum between grid points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NumericEvaluationError, ParameterDomainError
from .ifdist import DELTA_TOL_REL, IFParams, Regime, classify_regime, if_params
from .models import CovarianceModel, WSSModel


@dataclass(frozen=True)
class TimePartition:
    """Per-grid-point regime labels with run-length intervals."""

    times: np.ndarray
    labels: tuple[Regime, ...]
    deltas: np.ndarray
    a_values: np.ndarray
    centers: np.ndarray  # b/a per point, +inf where the power vanishes
    intervals: tuple[tuple[float, float, Regime], ...]

    @property
    def delta_min(self) -> float:
        return float(self.deltas.min())

    @property
    def delta_max(self) -> float:
        return float(self.deltas.max())

    @property
    def is_uniform(self) -> bool:
        return len(self.intervals) == 1


def run_intervals(times: Sequence[float], labels: Sequence[Regime]) -> tuple[tuple[float, float, Regime], ...]:
    """Maximal runs of constant label, endpoints on the grid."""
    out = []
    start = 0
    for i in range(1, len(labels) + 1):
        if i == len(labels) or labels[i] is not labels[start]:
            out.append((float(times[start]), float(times[i - 1]), labels[start]))
            start = i
    return tuple(out)


def time_grid(t_start: float, t_end: float, step: float) -> np.ndarray:
    if not (t_start < t_end and step > 0):
        raise ValueError("time grid needs t_start < t_end and step > 0")
    count = int(round((t_end - t_start) / step)) + 1
    return t_start + step * np.arange(count)


def scan_time_axis(
    model: CovarianceModel,
    t_start: float,
    t_end: float,
    step: float,
    tol_rel: float = DELTA_TOL_REL,
) -> TimePartition:
    """Label every grid point with its IF regime.

    Derivative failures abort with the offending time in the message.  The
    result also carries the discriminant range over the grid; a mixed
    partition, if one ever appears, is reported as multiple intervals.
    """
    times = time_grid(t_start, t_end, step)
    labels = []
    deltas = np.empty(len(times))
    a_values = np.empty(len(times))
    centers = np.empty(len(times))
    for i, t in enumerate(times):
        try:
            p = if_params(model, float(t), tol_rel=tol_rel)
        except Exception as exc:
            raise NumericEvaluationError(f"derivative evaluation failed at t={t:g}: {exc}") from exc
        regime = classify_regime(p, tol_rel=tol_rel)
        labels.append(regime)
        deltas[i] = p.delta
        a_values[i] = p.a
        centers[i] = math.inf if regime is Regime.INFINITE_IF else p.b / p.a
    return TimePartition(
        times,
        tuple(labels),
        deltas,
        a_values,
        centers,
        run_intervals(times, labels),
    )


@dataclass(frozen=True)
class DichotomyReport:
    """Outcome of the stationary dichotomy diagnostic.

    For a nonzero WSS model the zero-discriminant set is either empty or the
    whole line; in the latter case the in-phase covariance must be a pure
    cosine, whose angular rate is fixed by the derivative values at lag 0.
    """

    verdict: str  # "all-heavy-tail" (empty zero set) or "all-degenerate" (whole line)
    delta0: float
    a0: float
    center: float  # b/a, the deterministic IF in the degenerate case
    beta: float | None  # fitted cosine rate, degenerate case only
    max_cosine_deviation: float | None
    power_positive: bool  # rules out the infinite-IF set for nonzero WSS models

    @property
    def zero_set_empty(self) -> bool:
        return self.verdict == "all-heavy-tail"


def wss_dichotomy_check(
    model: WSSModel, grid: Sequence[float], tol_rel: float = DELTA_TOL_REL
) -> DichotomyReport:
    """Evaluate the WSS dichotomy at lag 0 and verify its structural consequence.

    If the discriminant at 0 is positive the heavy-tail law holds at every
    time.  If it vanishes, the law is a point mass everywhere and
    rho_x(tau) = rho_x(0) cos(beta tau) with beta = sqrt(-rho_x''(0)/rho_x(0));
    the report carries the maximal deviation from that cosine over the grid.
    beta comes from the derivative values at 0, not from a least-squares fit.
    """
    if not isinstance(model, WSSModel):
        raise TypeError("dichotomy check applies to WSS models only")
    p: IFParams = if_params(model, 0.0, tol_rel=tol_rel)
    regime = classify_regime(p, tol_rel=tol_rel)
    if regime is Regime.INFINITE_IF:
        raise ParameterDomainError("dichotomy check needs a nonzero process (rho_x(0) > 0)")
    power_positive = True
    if regime is Regime.HEAVY_TAIL:
        return DichotomyReport("all-heavy-tail", p.delta, p.a, p.b / p.a, None, None, power_positive)
    beta = math.sqrt(p.d / p.a)
    deviation = max(abs(model.rho_x(float(t)) - p.a * math.cos(beta * float(t))) for t in grid)
    return DichotomyReport("all-degenerate", p.delta, p.a, p.b / p.a, beta, deviation, power_positive)
