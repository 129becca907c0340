#!/usr/bin/env python3
"""Render figure files from purity-swap CSV data.

Consumes CSVs produced by `purity-swap figdata` (or any file with the same
columns) and draws them. This layer recomputes no physics: every rendered
value is a column read from a row, so a pipeline bug can never hide in the
plotting. Inputs are opened read-only and never modified.

Usage:
    render_fig.py --preset fig2 --csv fig2.csv --out fig2.png --format png
    render_fig.py --preset fig4 --csv fig4_s1.csv fig4_s0.csv --out fig4.png

fig2  two panels: the purity swap curves and the three triangle-bound terms
fig3  one panel: qubit and marker purity through collapse and revival
fig4  contour sheets of both purities over (theta, nbar), one sheet file
      per preparation
fig5  contour sheets of mutual information and visibility per preparation
"""

import argparse
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pandas as pd

REQUIRED_COLUMNS = {
    "fig2": ("theta", "p_q", "p_m", "g_diff_abs", "g_joint", "g_sum"),
    "fig3": ("theta", "p_q", "p_m"),
    "fig4": ("s", "nbar", "theta", "p_q", "p_m"),
    "fig5": ("s", "nbar", "theta", "mutual_info", "visibility"),
}

EXPECTED_SHEETS = {"fig2": 1, "fig3": 1, "fig4": 2, "fig5": 2}

# Perceptually uniform with large values dark, so high-visibility and
# high-purity regions read as the deep "blue zone" of the sheets.
CMAP = "viridis_r"


class SchemaError(Exception):
    """Input CSV does not carry the columns the preset needs."""


def load_sheets(preset: str, csv_paths: list[str]) -> list[pd.DataFrame]:
    if len(csv_paths) != EXPECTED_SHEETS[preset]:
        raise SchemaError(
            f"{preset} needs {EXPECTED_SHEETS[preset]} csv file(s), "
            f"got {len(csv_paths)}"
        )
    frames = []
    for path in csv_paths:
        try:
            frame = pd.read_csv(path)
        except pd.errors.EmptyDataError:
            raise SchemaError(f"{path}: empty file, no header to read")
        missing = [c for c in REQUIRED_COLUMNS[preset] if c not in frame.columns]
        if missing:
            raise SchemaError(f"{path}: missing columns {', '.join(missing)}")
        if len(frame) == 0:
            raise SchemaError(f"{path}: no data rows")
        frames.append(frame)
    return frames


def _sheet_label(frame: pd.DataFrame) -> str:
    if "s" not in frame.columns:
        return ""
    s = frame["s"].iloc[0]
    return "pure preparation (s = 1)" if s == 1 else f"mixed preparation (s = {s:g})"


def render_fig2(frames, out, fmt):
    df = frames[0]
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(6.4, 7.2), sharex=True)
    top.plot(df["theta"], df["p_q"], "-", color="black", label=r"$P_Q$")
    top.plot(df["theta"], df["p_m"], "--", color="black", label=r"$P_M$")
    top.set_ylabel("purity")
    top.legend(loc="center right")
    bottom.plot(df["theta"], df["g_joint"], "-", color="black",
                label=r"$\mathcal{G}$")
    bottom.plot(df["theta"], df["g_diff_abs"], "--", color="black",
                label=r"$|\mathcal{G}_Q-\mathcal{G}_M|$")
    bottom.plot(df["theta"], df["g_sum"], "-.", color="black",
                label=r"$\mathcal{G}_Q+\mathcal{G}_M$")
    bottom.set_ylabel("linear entropy")
    bottom.set_xlabel(r"vacuum Rabi phase $\theta$")
    bottom.legend(loc="center right")
    bottom.set_xlim(df["theta"].min(), df["theta"].max())
    fig.savefig(out, format=fmt)
    plt.close(fig)


def render_fig3(frames, out, fmt):
    df = frames[0]
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    ax.plot(df["theta"], df["p_q"], color="black", label=r"$P_Q$")
    ax.plot(df["theta"], df["p_m"], color="grey", label=r"$P_M$")
    ax.set_xlabel(r"vacuum Rabi phase $\theta$")
    ax.set_ylabel("purity")
    ax.set_xlim(df["theta"].min(), df["theta"].max())
    ax.legend()
    fig.savefig(out, format=fmt)
    plt.close(fig)


def _contour(ax, frame, column, title):
    grid = frame.pivot_table(index="nbar", columns="theta", values=column)
    mesh = ax.contourf(grid.columns.values, grid.index.values, grid.values,
                       levels=21, cmap=CMAP)
    ax.set_title(title, fontsize=10)
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel(r"$\bar{n}_0$")
    return mesh


def _render_sheets(frames, out, fmt, columns, labels):
    rows = len(frames)
    fig, axes = plt.subplots(rows, len(columns),
                             figsize=(5.2 * len(columns), 3.6 * rows),
                             squeeze=False)
    for i, frame in enumerate(frames):
        for j, (column, label) in enumerate(zip(columns, labels)):
            mesh = _contour(axes[i][j], frame, column,
                            f"{label}, {_sheet_label(frame)}")
            fig.colorbar(mesh, ax=axes[i][j])
    fig.tight_layout()
    fig.savefig(out, format=fmt)
    plt.close(fig)


def render_fig4(frames, out, fmt):
    _render_sheets(frames, out, fmt, ("p_q", "p_m"), (r"$P_Q$", r"$P_M$"))


def render_fig5(frames, out, fmt):
    _render_sheets(frames, out, fmt, ("mutual_info", "visibility"),
                   (r"$\mathcal{I}$", r"$\mathcal{V}$"))


RENDERERS = {
    "fig2": render_fig2,
    "fig3": render_fig3,
    "fig4": render_fig4,
    "fig5": render_fig5,
}


def render(preset: str, csv_paths: list[str], out: str, fmt: str) -> str:
    frames = load_sheets(preset, csv_paths)
    RENDERERS[preset](frames, out, fmt)
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Render purity-swap figure data to an image file."
    )
    parser.add_argument("--preset", choices=sorted(RENDERERS), required=True)
    parser.add_argument("--csv", nargs="+", required=True,
                        help="input CSV file(s); fig4/fig5 take one per preparation")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--format", choices=["png", "svg"], default="png")
    args = parser.parse_args(argv)
    try:
        path = render(args.preset, args.csv, args.out, args.format)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
