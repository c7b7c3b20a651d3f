"""Exact instantaneous-frequency laws of proper Gaussian stochastic processes.

The library turns a covariance description of a zero-mean proper Gaussian
process into the exact probability law of its instantaneous frequency at any
fixed time, classifies the time axis into heavy-tail / point-mass / infinite
regimes, relates the mean IF to Wigner-spectrum frequency moments, and
validates everything against seeded Monte Carlo simulation.
"""

__version__ = "0.1.0"

from .errors import (
    IfgaussError,
    ModelDescriptionError,
    NumericEvaluationError,
    ParameterDomainError,
    RegimeError,
    SignalZeroError,
)
from .models import (
    AtomicSpectralModel,
    CovarianceModel,
    DerivBundle,
    LocallyStationaryModel,
    NumericCovModel,
    RankOneModel,
    SpectralAtom,
    SpectralAtomMeasure,
    TwoToneModel,
    WSSModel,
    check_properness,
    eval_cov,
    eval_cov_derivs,
    psd_spotcheck,
    rank_one_chirp,
    spectral_moment_order_one,
    spectral_to_cov,
    wss_cosine,
    wss_gaussian,
    wss_two_tone,
)
from .ifdist import (
    IFDistribution,
    IFParams,
    Regime,
    VarianceClass,
    cdf,
    classify_regime,
    cov_matrix,
    if_params,
    mean_if,
    pdf,
    quantile,
    variance_if,
)
from .wigner import (
    FreqAtom,
    FreqAtomMeasure,
    SignalGrid,
    WignerGrid,
    deterministic_if,
    pseudo_if_mean,
    spectrum_moment_ratio,
    wigner_distribution,
    wigner_moment_ratio,
    wigner_spectrum_atoms,
)
from .montecarlo import (
    PathEnsemble,
    RNG_ID,
    SampleBatch,
    ks_distance,
    path_if,
    sample_if,
    sample_vec4,
    simulate_two_tone,
    tail_exponent,
)
from .classify import (
    DichotomyReport,
    TimePartition,
    scan_time_axis,
    wss_dichotomy_check,
)
from .modelio import load_model, model_from_dict
