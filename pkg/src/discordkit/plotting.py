"""Figures for sweep reports, written to files (no interactive backend)."""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}

_LABELS = {
    "ginibre_A": "Ginibre, measure A",
    "ginibre_B": "Ginibre, measure B",
    "cq": "classical-quantum builds, measure A",
    "qc": "quantum-classical builds, measure B",
}


def _log_values(vals, floor=1e-16):
    return np.log10(np.maximum(np.abs(vals), floor))


def discord_histogram(samples, zero_threshold, positive_threshold):
    keys = [k for k in _LABELS if k in samples and len(samples[k])]
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(5.0, 3.2))
        bins = np.linspace(-16.5, 0.5, 69)
        for k in keys:
            ax.hist(_log_values(samples[k]), bins=bins, histtype="step", label=_LABELS[k])
        ax.axvline(np.log10(zero_threshold), color="k", ls="--", lw=0.8)
        ax.axvline(np.log10(positive_threshold), color="k", ls=":", lw=0.8)
        ax.set_xlabel(r"$\log_{10}$ numerical discord (bits)")
        ax.set_ylabel("states")
        ax.legend(frameon=False, loc="upper left")
    return fig


def residual_histogram(resid):
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(5.0, 3.2))
        ax.hist(_log_values(resid), bins=60, color="0.4")
        ax.set_xlabel(r"$\log_{10}|D(S|P) - E_F(S{:}R) - S(S|R)|$")
        ax.set_ylabel("cuts")
    return fig


def save_sweep_figures(result, outdir, fmt="png"):
    """Render the sweep figures into ``outdir``; return the written paths."""
    os.makedirs(outdir, exist_ok=True)
    thr = result.summary["thresholds"]
    paths = []
    if any(k in result.samples for k in _LABELS):
        fig = discord_histogram(result.samples, thr["zero"], thr["positive"])
        paths.append(os.path.join(outdir, f"discord_histogram.{fmt}"))
        fig.savefig(paths[-1])
        plt.close(fig)
    if "merge_residual" in result.samples and len(result.samples["merge_residual"]):
        fig = residual_histogram(result.samples["merge_residual"])
        paths.append(os.path.join(outdir, f"merge_residual.{fmt}"))
        fig.savefig(paths[-1])
        plt.close(fig)
    return paths
