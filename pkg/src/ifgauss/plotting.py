"""Figure rendering for the CLI report paths.

Every plotting function writes a PNG next to the delimited output and returns
the path.  Rendering is file-only (Agg backend); there is no interactive
front end.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .ifdist import Regime

_REGIME_COLORS = {
    Regime.HEAVY_TAIL: "tab:red",
    Regime.DEGENERATE: "tab:blue",
    Regime.INFINITE_IF: "tab:gray",
}


def plot_distribution(path, y, pdf_values, cdf_values, center: float) -> str:
    fig, ax = plt.subplots(figsize=(7, 4.2))
    ax.plot(y, pdf_values, color="tab:blue", label="pdf")
    ax.axvline(center, color="tab:gray", lw=0.8, ls="--", label=f"mean b/a = {center:g}")
    ax.set_xlabel("instantaneous frequency y [rad/s]")
    ax.set_ylabel("density [s/rad]", color="tab:blue")
    ax2 = ax.twinx()
    ax2.plot(y, cdf_values, color="tab:orange", label="cdf")
    ax2.set_ylabel("cdf", color="tab:orange")
    ax2.set_ylim(0, 1)
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)


def plot_partition(path, times, deltas, labels) -> str:
    fig, ax = plt.subplots(figsize=(7, 4.2))
    ax.plot(times, deltas, color="black", lw=1.0, label="discriminant delta(t)")
    for regime in _REGIME_COLORS:
        mask = np.array([lab is regime for lab in labels])
        if mask.any():
            ax.plot(
                np.asarray(times)[mask],
                np.asarray(deltas)[mask],
                ".",
                ms=3,
                color=_REGIME_COLORS[regime],
                label=regime.value,
            )
    ax.set_xlabel("t [s]")
    ax.set_ylabel("delta(t)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)


def plot_batch(path, finite_values, y, pdf_values) -> str:
    fig, ax = plt.subplots(figsize=(7, 4.2))
    lo, hi = float(np.min(y)), float(np.max(y))
    clipped = finite_values[(finite_values >= lo) & (finite_values <= hi)]
    ax.hist(clipped, bins=120, range=(lo, hi), density=True, alpha=0.55, label="samples")
    ax.plot(y, pdf_values, color="tab:red", lw=1.2, label="closed-form pdf")
    ax.set_xlabel("instantaneous frequency y [rad/s]")
    ax.set_ylabel("density")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)


def plot_wigner(path, grid, reference=None) -> str:
    fig, ax = plt.subplots(figsize=(7, 4.6))
    peak = np.abs(grid.values).max()
    mesh = ax.pcolormesh(
        grid.times,
        grid.freqs,
        grid.values.T,
        cmap="RdBu_r",
        vmin=-peak,
        vmax=peak,
        shading="auto",
        rasterized=True,
    )
    if reference is not None:
        ax.plot(grid.times, reference, color="black", lw=0.8, ls="--", label="phase derivative")
        ax.legend(fontsize=8)
    fig.colorbar(mesh, ax=ax, label="W(t, xi)")
    ax.set_xlabel("t [s]")
    ax.set_ylabel("xi [rad/s]")
    ax.set_ylim(grid.freqs.min(), grid.freqs.max())
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)


def plot_freq_atoms(path, times, atom_rows) -> str:
    """Scatter of the time-varying frequency atoms (size by |w|, color by Re w)."""
    fig, ax = plt.subplots(figsize=(7, 4.2))
    ts, xis, res, mags = [], [], [], []
    for t, atoms in zip(times, atom_rows):
        for atom in atoms:
            ts.append(t)
            xis.append(atom.xi)
            res.append(atom.w.real)
            mags.append(abs(atom.w))
    mags = np.asarray(mags)
    size = 4 + 40 * mags / (mags.max() if mags.size and mags.max() > 0 else 1.0)
    sc = ax.scatter(ts, xis, c=res, s=size, cmap="coolwarm")
    fig.colorbar(sc, ax=ax, label="Re w")
    ax.set_xlabel("t [s]")
    ax.set_ylabel("xi [rad/s]")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)
