"""Report rendering: figures and the delimited tables they are drawn from.

Everything here writes files and returns the paths written; nothing is
shown interactively (the Agg backend is forced on import).  The CSV tables
always accompany the figures so the numbers stay greppable.
"""

from __future__ import annotations

import csv
import os
from typing import List, Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import charfun, densities, montecarlo, moments
from .core import check_radius
from .quadrature import IntegrationSpec

__all__ = [
    "save_side_density_figure",
    "save_pair_density_figure",
    "save_charfun_figure",
    "write_report",
]

# Report-grade quadrature: plots cannot resolve past ~1e-6 anyway.
_REPORT_SPEC_2D = IntegrationSpec(abs_tol=1e-8, rel_tol=1e-7)


def _write_csv(path: str, header: List[str], rows) -> str:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([f"{v:.17g}" if isinstance(v, float) else v
                             for v in row])
    return path


def save_side_density_figure(path: str, radius: float = 1.0,
                             samples: int = 200_000, seed: int = 0,
                             bins: int = 60) -> str:
    """Side-length density curve with a Monte Carlo histogram overlay.

    samples = 0 drops the overlay.
    """
    r = check_radius(radius)
    xs = np.linspace(0.0, 2.0 * r, 400)
    fs = np.array([densities.side_density(float(x), r) for x in xs])
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    if samples:
        counts, edges = montecarlo.pair_histogram(samples, seed, bins, r)
        side_counts = counts.sum(axis=1)
        widths = np.diff(edges)
        heights = side_counts / (samples * widths)
        ax.stairs(heights, edges, fill=True, alpha=0.35,
                  label=f"{samples:,} sampled triangles")
    ax.plot(xs, fs, lw=2.0, label="density")
    ax.set_xlabel("side length")
    ax.set_ylabel("density")
    ax.set_title(f"Side length of a uniform triangle in a disk (R = {r:g})")
    ax.legend(frameon=False)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_pair_density_figure(path: str, radius: float = 1.0,
                             grid: int = 120) -> str:
    """Heatmap of the joint density of two sides over [0, 2R]^2."""
    r = check_radius(radius)
    step = 2.0 * r / grid
    axis = (np.arange(grid) + 0.5) * step
    z = np.empty((grid, grid))
    for j, y in enumerate(axis):
        for i, x in enumerate(axis):
            z[j, i] = densities.pair_density(float(x), float(y), r)
    fig, ax = plt.subplots(figsize=(5.8, 5.0))
    im = ax.imshow(z, origin="lower", extent=(0.0, 2.0 * r, 0.0, 2.0 * r),
                   aspect="equal", cmap="viridis")
    ax.plot([0.0, 2.0 * r], [2.0 * r, 0.0], ls="--", lw=0.8, color="white",
            alpha=0.7)
    ax.set_xlabel("first side")
    ax.set_ylabel("second side")
    ax.set_title(f"Joint side-length density (R = {r:g})")
    fig.colorbar(im, ax=ax, shrink=0.85)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_charfun_figure(path: str, t_max: float = 6.0, points: int = 181,
                        radius: float = 1.0) -> str:
    """Real part, imaginary part, and modulus of E exp(it a^2).

    For radius R the frequency rescales: E exp(it a^2) = charfun_a2(t R^2).
    """
    r = check_radius(radius)
    ts = np.linspace(0.0, float(t_max), points)
    vals = np.array([charfun.charfun_a2(float(t) * r * r).value for t in ts])
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    ax.plot(ts, vals.real, lw=1.8, label="Re")
    ax.plot(ts, vals.imag, lw=1.8, label="Im")
    ax.plot(ts, np.abs(vals), lw=1.2, ls="--", color="gray", label="|value|")
    ax.axhline(0.0, lw=0.6, color="black", alpha=0.4)
    ax.set_xlabel("t")
    ax.set_ylabel("E exp(i t a$^2$)")
    ax.set_title(f"Characteristic function of the squared side (R = {r:g})")
    ax.legend(frameon=False)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def write_report(out_dir: str, radius: float = 1.0, samples: int = 200_000,
                 seed: int = 0, grid: int = 120, t_max: float = 6.0,
                 spec_2d: Optional[IntegrationSpec] = None) -> List[str]:
    """Render the full report: three figures plus their CSV tables.

    Writes moments.csv, side_density.{csv,png}, pair_density.{csv,png},
    charfun.{csv,png} into out_dir (created if needed) and returns the
    paths in that order.  The moment table runs at report-grade quadrature
    tolerance (~1e-8) for speed; the verify command is the precision path.
    """
    r = check_radius(radius)
    os.makedirs(out_dir, exist_ok=True)
    written = []

    reports = moments.moment_reports(r, spec_2d=spec_2d or _REPORT_SPEC_2D)
    written.append(_write_csv(
        os.path.join(out_dir, "moments.csv"),
        ["quantity", "value", "route", "err_estimate", "reference", "deviation"],
        [[m.quantity, m.value, m.route, m.err_estimate,
          m.reference if m.reference is not None else "",
          m.deviation if m.deviation is not None else ""]
         for m in reports]))

    xs = np.linspace(0.0, 2.0 * r, 400)
    written.append(_write_csv(
        os.path.join(out_dir, "side_density.csv"), ["x", "density"],
        [[float(x), densities.side_density(float(x), r)] for x in xs]))
    written.append(save_side_density_figure(
        os.path.join(out_dir, "side_density.png"), r, samples, seed))

    step = 2.0 * r / grid
    axis = [(k + 0.5) * step for k in range(grid)]
    written.append(_write_csv(
        os.path.join(out_dir, "pair_density.csv"), ["x", "y", "density"],
        ([x, y, densities.pair_density(x, y, r)] for x in axis for y in axis)))
    written.append(save_pair_density_figure(
        os.path.join(out_dir, "pair_density.png"), r, grid))

    ts = np.linspace(0.0, float(t_max), 181)
    rows = []
    for t in ts:
        v = charfun.charfun_a2(float(t) * r * r).value
        rows.append([float(t), v.real, v.imag, abs(v)])
    written.append(_write_csv(
        os.path.join(out_dir, "charfun.csv"), ["t", "re", "im", "abs"], rows))
    written.append(save_charfun_figure(
        os.path.join(out_dir, "charfun.png"), t_max, radius=r))

    return written
