import numpy as np
import pytest

import ifgauss as ig

FD_H_SCALE = 1e-5


def fd_bundle(model, t):
    """Independent finite-difference oracle: differentiate eval_cov directly."""
    h = FD_H_SCALE * (1 + abs(t))

    def r_x(a, b):
        return ig.eval_cov(model, a, b).real / 2

    def r_yx(a, b):
        return ig.eval_cov(model, a, b).imag / 2

    d1_r_x = (r_x(t + h, t) - r_x(t - h, t)) / (2 * h)
    d1_r_yx = (r_yx(t + h, t) - r_yx(t - h, t)) / (2 * h)
    d12 = (r_x(t + h, t + h) - r_x(t + h, t - h) - r_x(t - h, t + h) + r_x(t - h, t - h)) / (
        4 * h * h
    )
    return r_x(t, t), d1_r_x, d12, d1_r_yx


def random_atomic_measure(rng, k=3):
    """Random valid atomic measure: PSD weight matrix over k random tones.

    The atom set is built exactly Hermitian (diagonal real, conjugate pairs
    assigned, not recomputed) because the measure validates with zero
    tolerance on constructed pairs.
    """
    freqs = np.sort(rng.uniform(-4.0, 4.0, size=k))
    root = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
    weights = root @ root.conj().T / k
    atoms = []
    for i in range(k):
        atoms.append(ig.SpectralAtom(float(freqs[i]), float(freqs[i]), complex(weights[i, i].real, 0.0)))
        for j in range(i + 1, k):
            w = complex(weights[i, j])
            atoms.append(ig.SpectralAtom(float(freqs[i]), float(freqs[j]), w))
            atoms.append(ig.SpectralAtom(float(freqs[j]), float(freqs[i]), w.conjugate()))
    return ig.SpectralAtomMeasure(tuple(atoms))


def preset_models():
    rng = np.random.default_rng(7)
    return [
        ig.TwoToneModel(1.0, 3.0, 0.0),
        ig.TwoToneModel(1.0, 3.0, 0.5 + 0.2j),
        ig.TwoToneModel(-2.0, 0.7, -0.3j),
        ig.LocallyStationaryModel(0.5, 2.0),
        ig.LocallyStationaryModel(1.0, 1.0),
        ig.rank_one_chirp(amplitude=1.2, sigma=1.5, omega0=2.0, chirp=0.7),
        ig.wss_cosine(1.0, 1.0),
        ig.wss_cosine(0.8, 1.7),
        ig.wss_gaussian(1.0, 1.0),
        ig.wss_two_tone(1.0, 3.0),
        ig.AtomicSpectralModel(random_atomic_measure(rng)),
    ]


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
