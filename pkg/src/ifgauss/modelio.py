"""Model description files (JSON syntax).

Supported shapes, one object per file:

    {"model": "two-tone", "xi": 1.0, "eta": 3.0, "corr": [0.5, 0.2]}
    {"model": "locally-stationary", "alpha": 0.5, "beta": 2.0}
    {"model": "rank-one", "amplitude": 1.0, "sigma": 1.0,
     "omega0": 2.0, "chirp": 0.0, "x_power": 2.0}
    {"model": "atomic", "atoms": [[xi, eta, re_w, im_w], ...]}
    {"model": "wss-cosine", "amplitude": 1.0, "beta": 1.0}
    {"model": "wss-gaussian", "amplitude": 1.0, "rate": 1.0}
    {"model": "wss-two-tone", "xi": 1.0, "eta": 3.0}

``corr`` accepts either a plain number or a [re, im] pair.  ``NumericCovModel``
holds raw callables and therefore has no file form; build it in code.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ModelDescriptionError, ParameterDomainError
from .models import (
    AtomicSpectralModel,
    CovarianceModel,
    SpectralAtom,
    SpectralAtomMeasure,
    TwoToneModel,
    LocallyStationaryModel,
    rank_one_chirp,
    wss_cosine,
    wss_gaussian,
    wss_two_tone,
)


def _complex_field(value, name: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ModelDescriptionError(f"field '{name}' must be a number or a [re, im] pair")


def _number(spec: dict, name: str, default=None) -> float:
    if name not in spec:
        if default is None:
            raise ModelDescriptionError(f"missing required field '{name}'")
        return float(default)
    value = spec[name]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ModelDescriptionError(f"field '{name}' must be a number")
    return float(value)


def model_from_dict(spec: dict) -> CovarianceModel:
    if not isinstance(spec, dict):
        raise ModelDescriptionError("model description must be a JSON object")
    kind = spec.get("model")
    try:
        if kind == "two-tone":
            return TwoToneModel(
                _number(spec, "xi"), _number(spec, "eta"), _complex_field(spec.get("corr", 0.0), "corr")
            )
        if kind == "locally-stationary":
            return LocallyStationaryModel(_number(spec, "alpha"), _number(spec, "beta"))
        if kind == "rank-one":
            return rank_one_chirp(
                amplitude=_number(spec, "amplitude", 1.0),
                sigma=_number(spec, "sigma", 1.0),
                omega0=_number(spec, "omega0", 0.0),
                chirp=_number(spec, "chirp", 0.0),
                x_power=_number(spec, "x_power", 2.0),
            )
        if kind == "atomic":
            atoms = spec.get("atoms")
            if not isinstance(atoms, list):
                raise ModelDescriptionError("atomic model needs an 'atoms' list")
            parsed = []
            for row in atoms:
                if not isinstance(row, (list, tuple)) or len(row) != 4:
                    raise ModelDescriptionError("each atom must be [xi, eta, re_w, im_w]")
                parsed.append(SpectralAtom(float(row[0]), float(row[1]), complex(row[2], row[3])))
            return AtomicSpectralModel(SpectralAtomMeasure(tuple(parsed)))
        if kind == "wss-cosine":
            return wss_cosine(_number(spec, "amplitude", 1.0), _number(spec, "beta", 1.0))
        if kind == "wss-gaussian":
            return wss_gaussian(_number(spec, "amplitude", 1.0), _number(spec, "rate", 1.0))
        if kind == "wss-two-tone":
            return wss_two_tone(_number(spec, "xi"), _number(spec, "eta"))
    except ParameterDomainError as exc:
        raise ModelDescriptionError(f"invalid parameters for model '{kind}': {exc}") from exc
    raise ModelDescriptionError(f"unknown model name: {kind!r}")


def load_model(path) -> CovarianceModel:
    """Read a model description file and build the covariance model."""
    text = Path(path).read_text()
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelDescriptionError(f"{path}: not valid JSON ({exc})") from exc
    return model_from_dict(spec)


def model_to_dict(spec_or_path) -> dict:
    """Echo helper: the parsed description as a plain dict (for output headers)."""
    if isinstance(spec_or_path, dict):
        return spec_or_path
    return json.loads(Path(spec_or_path).read_text())
