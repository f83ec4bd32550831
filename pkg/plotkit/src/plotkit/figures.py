"""CSV loading and panel rendering."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "plotkit"  # reproducible svg ids
import matplotlib.pyplot as plt  # noqa: E402

from .errors import EmptyWindow, MissingColumn  # noqa: E402

# oscillator 1 red, oscillator 2 black throughout
C1, C2 = "red", "black"

REQUIRED = {
    "phase_space": ("t", "qbar1", "pbar1", "qbar2", "pbar2"),
    "quadrature_trace": ("t", "qbar1", "qbar2", "pbar1", "pbar2"),
    "sync_trace": ("t", "Sq", "Sq_phi"),
    "thermal_sweep": ("n_m", "Sq_bar"),
}
KINDS = tuple(REQUIRED)


@dataclass(frozen=True)
class FigureSpec:
    """One panel: input CSV, panel kind, optional window, output image."""

    csv_path: str
    kind: str
    out_path: str
    window: tuple[float, float] | None = None

    def __post_init__(self):
        if self.kind not in REQUIRED:
            raise ValueError(
                f"unknown panel kind {self.kind!r}; choose from {KINDS}")


def load_columns(path, names):
    """Read the named columns of a CSV file as float arrays.

    Only the requested columns are parsed, so sentinel strings in other
    columns (e.g. the classical-sync column) never get in the way.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyWindow(f"{path} has no header row") from None
        idx = {}
        for name in names:
            if name not in header:
                raise MissingColumn(name, path)
            idx[name] = header.index(name)
        cols = {name: [] for name in names}
        for row in reader:
            for name, i in idx.items():
                cols[name].append(float(row[i]))
    return {name: np.asarray(vals) for name, vals in cols.items()}


def _apply_window(cols, axis_name, window, path):
    if len(cols[axis_name]) == 0:
        raise EmptyWindow(f"{path} contains no data rows")
    if window is None:
        return cols
    a, b = window
    mask = (cols[axis_name] >= a) & (cols[axis_name] <= b)
    if not mask.any():
        raise EmptyWindow(
            f"window [{a}, {b}] selects no rows of {path} "
            f"({axis_name} spans [{cols[axis_name].min():g}, "
            f"{cols[axis_name].max():g}])")
    return {k: v[mask] for k, v in cols.items()}


def _panel_phase_space(ax, d):
    ax.plot(d["qbar1"], d["pbar1"], color=C1, lw=0.8, label="oscillator 1")
    ax.plot(d["qbar2"], d["pbar2"], color=C2, lw=0.8, label="oscillator 2")
    ax.set_xlabel(r"$\bar{q}$")
    ax.set_ylabel(r"$\bar{p}$")
    ax.set_aspect("equal", adjustable="datalim")
    ax.legend(frameon=False)


def _panel_quadrature_trace(fig, d):
    ax_q, ax_p = fig.subplots(2, 1, sharex=True)
    ax_q.plot(d["t"], d["qbar1"], color=C1, lw=0.8, label="oscillator 1")
    ax_q.plot(d["t"], d["qbar2"], color=C2, lw=0.8, label="oscillator 2")
    ax_q.set_ylabel(r"$\bar{q}$")
    ax_q.legend(frameon=False)
    ax_p.plot(d["t"], d["pbar1"], color=C1, lw=0.8)
    ax_p.plot(d["t"], d["pbar2"], color=C2, lw=0.8)
    ax_p.set_ylabel(r"$\bar{p}$")
    ax_p.set_xlabel(r"$t/\tau$")


def _panel_sync_trace(ax, d):
    ax.plot(d["t"], d["Sq"], color=C1, lw=0.9, label=r"$S_q$")
    ax.plot(d["t"], d["Sq_phi"], color=C2, lw=0.9, ls="--",
            label=r"$S_q^{\varphi}$")
    ax.set_xlabel(r"$t/\tau$")
    ax.set_ylabel("quantum synchronization")
    ax.legend(frameon=False)


def _panel_thermal_sweep(ax, d):
    ax.plot(d["n_m"], d["Sq_bar"], color=C2, marker="o", ms=4, lw=0.9)
    ax.set_xlabel(r"$\bar{n}_m$")
    ax.set_ylabel(r"$\bar{S}_q$")


def render(spec: FigureSpec) -> Path:
    """Render one panel and return the written image path.

    Idempotent: identical specs overwrite with identical bytes (fixed
    styling, no timestamps in the output).
    """
    cols = load_columns(spec.csv_path, REQUIRED[spec.kind])
    axis = "n_m" if spec.kind == "thermal_sweep" else "t"
    d = _apply_window(cols, axis, spec.window, spec.csv_path)

    fig = plt.figure(figsize=(4.8, 3.6), dpi=150)
    try:
        if spec.kind == "quadrature_trace":
            _panel_quadrature_trace(fig, d)
        else:
            ax = fig.subplots()
            {"phase_space": _panel_phase_space,
             "sync_trace": _panel_sync_trace,
             "thermal_sweep": _panel_thermal_sweep}[spec.kind](ax, d)
        fig.tight_layout()
        out = Path(spec.out_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        metadata = {"Date": None} if out.suffix == ".svg" else None
        fig.savefig(out, metadata=metadata)
    finally:
        plt.close(fig)
    return out
