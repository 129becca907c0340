"""Tests for the rendering layer, ending with the generate-then-render
acceptance path that exercises the real CSV interface end to end."""

import csv
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

FIGS_DIR = Path(__file__).resolve().parents[1]
RENDER = FIGS_DIR / "render_fig.py"

SWEEP_COLUMNS = (
    "s,nbar,theta,phi,dim,convention,w_plus,w_minus,predictability,visibility,"
    "contrast_re,contrast_im,c_up_re,c_up_im,c_down_re,c_down_im,sx,sy,sz,"
    "p_q,p_m,g_q,g_m,g_joint,mutual_info,al_left_slack,al_right_slack"
).split(",")


def run_render(*args):
    return subprocess.run(
        [sys.executable, str(RENDER), *args], capture_output=True, text=True
    )


def synthetic_sheet(path, s, nbars, thetas, extra=()):
    """A schema-complete CSV with smooth made-up values."""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(SWEEP_COLUMNS + list(extra))
        for nbar in nbars:
            for theta in thetas:
                p_q = 0.5 + 0.5 * np.sin(theta) ** 2
                p_m = 1.0 - 0.4 * np.sin(theta) ** 2
                g_q, g_m = 1 - p_q, 1 - p_m
                g_joint = (1 - s * s) / 2
                row = [s, nbar, theta, 0.0, 20, "standard",
                       0.5, 0.5, 0.0, 0.3, 0.3, 0.0, 0.3, 0.0, 0.3, 0.0,
                       0.0, 0.3, 0.0, p_q, p_m, g_q, g_m, g_joint,
                       0.1, 0.05, 0.05]
                derived = {"g_diff_abs": abs(g_q - g_m), "g_sum": g_q + g_m}
                writer.writerow(row + [derived[name] for name in extra])


@pytest.fixture
def sheets(tmp_path):
    thetas = np.linspace(0, 1.5, 40)
    nbars = np.linspace(0, 10, 6)
    paths = {}
    paths["fig2"] = tmp_path / "fig2.csv"
    synthetic_sheet(paths["fig2"], 0.0, [0.0], thetas, extra=("g_diff_abs", "g_sum"))
    paths["fig3"] = tmp_path / "fig3.csv"
    synthetic_sheet(paths["fig3"], 0.0, [20.0], thetas)
    for tag, s in (("s1", 1.0), ("s0", 0.0)):
        paths[tag] = tmp_path / f"sheet_{tag}.csv"
        synthetic_sheet(paths[tag], s, nbars, thetas)
    return paths


@pytest.mark.parametrize("fmt", ["png", "svg"])
def test_fig2_renders(sheets, tmp_path, fmt):
    out = tmp_path / f"fig2.{fmt}"
    proc = run_render("--preset", "fig2", "--csv", str(sheets["fig2"]),
                      "--out", str(out), "--format", fmt)
    assert proc.returncode == 0, proc.stderr
    assert out.stat().st_size > 1000


def test_fig3_renders_and_leaves_input_untouched(sheets, tmp_path):
    before = sheets["fig3"].read_bytes()
    out = tmp_path / "fig3.png"
    proc = run_render("--preset", "fig3", "--csv", str(sheets["fig3"]),
                      "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
    assert sheets["fig3"].read_bytes() == before


def test_fig4_and_fig5_render_two_sheets(sheets, tmp_path):
    for preset in ("fig4", "fig5"):
        out = tmp_path / f"{preset}.png"
        proc = run_render("--preset", preset, "--csv", str(sheets["s1"]),
                          str(sheets["s0"]), "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        assert out.stat().st_size > 1000


def test_rerender_is_idempotent_in_size(sheets, tmp_path):
    out1, out2 = tmp_path / "a.png", tmp_path / "b.png"
    for out in (out1, out2):
        proc = run_render("--preset", "fig3", "--csv", str(sheets["fig3"]),
                          "--out", str(out))
        assert proc.returncode == 0
    assert abs(out1.stat().st_size - out2.stat().st_size) < 200


def test_missing_columns_are_named(sheets, tmp_path):
    broken = tmp_path / "broken.csv"
    with open(sheets["fig3"]) as f:
        rows = list(csv.reader(f))
    keep = [i for i, name in enumerate(rows[0]) if name not in ("p_m", "p_q")]
    with open(broken, "w", newline="") as f:
        writer = csv.writer(f)
        for row in rows:
            writer.writerow([row[i] for i in keep])
    proc = run_render("--preset", "fig3", "--csv", str(broken),
                      "--out", str(tmp_path / "x.png"))
    assert proc.returncode != 0
    assert "p_q" in proc.stderr and "p_m" in proc.stderr


def test_empty_csv_is_schema_error(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.touch()
    proc = run_render("--preset", "fig2", "--csv", str(empty),
                      "--out", str(tmp_path / "x.png"))
    assert proc.returncode != 0
    assert "schema error" in proc.stderr


def test_wrong_sheet_count_rejected(sheets, tmp_path):
    proc = run_render("--preset", "fig4", "--csv", str(sheets["s1"]),
                      "--out", str(tmp_path / "x.png"))
    assert proc.returncode != 0


# ---------------------------------------------------------------------------
# Acceptance: render every preset from freshly generated data (several
# minutes; the fig4/fig5 grids are the full published sheets).

def generate(preset, out_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "purityswap", "figdata", "--preset", preset,
         "--out", str(out_dir), "--jobs", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return [Path(line) for line in proc.stdout.splitlines()]


def test_acceptance_all_presets_render_from_fresh_data(tmp_path):
    produced = {}
    for preset in ("fig2", "fig3", "fig4", "fig5"):
        produced[preset] = generate(preset, tmp_path / "data")

    # the pure-preparation sheet must carry identical purity columns
    s1_sheet = next(p for p in produced["fig4"] if p.name.endswith("_s1.csv"))
    with open(s1_sheet) as f:
        rows = list(csv.DictReader(f))
    worst = max(abs(float(r["p_q"]) - float(r["p_m"])) for r in rows)
    assert worst <= 1e-10, f"fig4 s=1 sheet p_q vs p_m deviates by {worst}"

    for preset, paths in produced.items():
        out = tmp_path / f"{preset}.png"
        proc = run_render("--preset", preset, "--csv",
                          *[str(p) for p in paths], "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        assert out.stat().st_size > 1000
    print(f"acceptance [PASS] figure rendering: all presets rendered; "
          f"fig4 pure-sheet purity columns agree to {worst:.2e}")
