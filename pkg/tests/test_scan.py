import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from purityswap import (
    BlockConvention,
    GridSpec,
    InterferometerConfig,
    audit_araki_lieb,
    figdata,
    locate_recreation,
    summarize,
    sweep,
)
from purityswap.scan import COLUMNS, SweepRow, write_csv, write_json

LITERAL = BlockConvention.LITERAL_PAPER


def small_spec(**overrides):
    params = dict(
        s_values=(0.0, 1.0),
        nbar_values=(0.0, 1.0),
        theta_range=(0.0, 0.3, 0.1),
        phi_values=(0.0,),
    )
    params.update(overrides)
    return GridSpec(**params)


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "purityswap", *args],
        capture_output=True, text=True,
    )


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        small_spec(theta_range=(0.0, 1.0, -0.1))
    with pytest.raises(ValueError):
        small_spec(theta_range=(1.0, 0.0, 0.1))
    with pytest.raises(ValueError):
        small_spec(s_values=())


@pytest.mark.parametrize("rng,count", [
    ((0.0, 6.0, 0.05), 121),
    ((0.0, 1.5, 0.002), 751),
    ((0.0, 8.0, 0.005), 1601),
    ((0.0, 0.0, 0.1), 1),
])
def test_theta_grid_counts(rng, count):
    assert len(small_spec(theta_range=rng).theta_values()) == count


def test_row_count_formula_matches_emitted_rows():
    spec = small_spec()
    rows = list(sweep(spec))
    assert len(rows) == spec.row_count() == 2 * 2 * 1 * 4


def test_rows_in_lexicographic_order():
    rows = list(sweep(small_spec()))
    keys = [(r.s, r.nbar, r.phi, r.theta) for r in rows]
    assert keys == sorted(keys)


def test_single_point_sweep_matches_summarize():
    spec = GridSpec((0.3,), (2.0,), (0.7, 0.7, 0.1))
    (row,) = sweep(spec)
    summary = summarize(InterferometerConfig(s=0.3, nbar=2.0, theta=0.7))
    assert row.p_q == summary.p_q
    assert row.p_m == summary.p_m
    assert row.w_plus == summary.w_plus
    assert (row.sx, row.sy, row.sz) == tuple(summary.bloch_final)
    assert row.dim == 34
    assert row.convention == "standard"


def test_parallel_sweep_is_byte_identical():
    spec = small_spec(theta_range=(0.0, 0.5, 0.05))
    buffers = []
    for jobs in (1, 2):
        buf = io.StringIO()
        write_csv(sweep(spec, jobs=jobs), buf)
        buffers.append(buf.getvalue())
    assert buffers[0] == buffers[1]


def test_csv_header_and_roundtrip():
    buf = io.StringIO()
    write_csv(sweep(small_spec()), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == (
        "s,nbar,theta,phi,dim,convention,w_plus,w_minus,predictability,"
        "visibility,contrast_re,contrast_im,c_up_re,c_up_im,c_down_re,"
        "c_down_im,sx,sy,sz,p_q,p_m,g_q,g_m,g_joint,mutual_info,"
        "al_left_slack,al_right_slack"
    )
    reader = csv.DictReader(io.StringIO(buf.getvalue()))
    first = next(reader)
    # .17g formatting must round-trip through float()
    row = next(iter(sweep(small_spec())))
    assert float(first["p_m"]) == row.p_m
    assert float(first["w_plus"]) == row.w_plus


def test_json_format_mirrors_columns():
    spec = GridSpec((0.0,), (0.0,), (0.0, 0.1, 0.1))
    buf = io.StringIO()
    write_json(sweep(spec), buf, spec)
    payload = json.loads(buf.getvalue())
    assert payload["schema_version"] == 1
    assert payload["config"]["convention"] == "standard"
    assert payload["config"]["theta_range"] == [0.0, 0.1, 0.1]
    assert len(payload["rows"]) == 2
    assert tuple(payload["rows"][0].keys()) == COLUMNS


def test_audit_clean_on_standard_grid():
    report = audit_araki_lieb(small_spec(theta_range=(0.0, 1.0, 0.05)))
    assert report.violation_count == 0
    assert report.points == 2 * 2 * 21
    assert report.worst_slack >= -1e-12


def test_audit_pure_preparation_grid_is_tight():
    spec = small_spec(s_values=(1.0,), theta_range=(0.0, 1.0, 0.1))
    report = audit_araki_lieb(spec)
    assert report.violation_count == 0
    # g_joint = 0 and g_q = g_m for pure preparations: left slack pinned at 0
    assert abs(report.worst_slack) <= 1e-10


def test_audit_equality_point():
    spec = GridSpec((0.0,), (0.0,), (0.25, 0.25, 0.1))
    report = audit_araki_lieb(spec)
    (row,) = sweep(spec)
    assert report.violation_count == 0
    assert row.al_left_slack == pytest.approx(0.0, abs=1e-12)
    assert row.al_right_slack == pytest.approx(0.0, abs=1e-12)


def test_audit_literal_convention_finds_violations_and_reproduces():
    # The literal blocks are not unitary, so the conserved-joint-purity
    # bookkeeping breaks and the audit must surface that as violations.
    spec = small_spec(s_values=(-1.0, -0.5), nbar_values=(0.0,),
                      theta_range=(0.1, 0.5, 0.1), convention=LITERAL)
    report = audit_araki_lieb(spec)
    assert report.violation_count > 0
    worst = report.worst_row
    summary = summarize(InterferometerConfig(
        s=worst.s, nbar=worst.nbar, theta=worst.theta, phi=worst.phi,
        convention=LITERAL))
    assert summary.al_left_slack == pytest.approx(worst.al_left_slack, abs=1e-12)
    assert summary.al_right_slack == pytest.approx(worst.al_right_slack, abs=1e-12)


def test_audit_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        audit_araki_lieb(small_spec(), tolerance=0.0)


def test_locate_recreation_validation():
    with pytest.raises(ValueError):
        locate_recreation(0.0, 0.0)
    with pytest.raises(ValueError):
        locate_recreation(5.0, 0.0, window=(2.0, 1.0))


def test_locate_recreation_finds_purity_gain():
    result = locate_recreation(5.0, 0.0, step=0.01)
    assert result.p_q_peak > 0.85
    assert 0.3 < result.ratio < 1.0
    assert result.attractor_fid > 0.9
    assert result.theta_star == pytest.approx(result.ratio * np.sqrt(5.0), abs=1e-12)


def test_figdata_fig2_has_inequality_columns(tmp_path):
    # thinly resample the preset grid shape with a direct spec write instead
    # of the full preset to keep this quick; the full presets run in the
    # acceptance suite
    paths = figdata("fig2", tmp_path, jobs=2)
    assert [p.name for p in paths] == ["fig2.csv"]
    with open(paths[0]) as f:
        reader = csv.DictReader(f)
        header = reader.fieldnames
        rows = list(reader)
    assert header[-2:] == ["g_diff_abs", "g_sum"]
    assert len(rows) == 751
    for row in rows[::150]:
        assert float(row["g_diff_abs"]) == pytest.approx(
            abs(float(row["g_q"]) - float(row["g_m"])), abs=1e-15)
        assert float(row["g_sum"]) == pytest.approx(
            float(row["g_q"]) + float(row["g_m"]), abs=1e-15)


def test_figdata_rejects_unknown_preset(tmp_path):
    with pytest.raises(ValueError):
        figdata("fig9", tmp_path)


def test_cli_usage_errors_exit_one():
    assert run_cli("nonsense").returncode == 1
    assert run_cli("sweep", "--theta", "bad").returncode == 1
    assert run_cli("sweep").returncode == 1  # --theta is required


def test_cli_sweep_writes_csv(tmp_path):
    out = tmp_path / "rows.csv"
    proc = run_cli("sweep", "--theta", "0:0.2:0.1", "--s", "0,1",
                   "--out", str(out))
    assert proc.returncode == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 1 + 2 * 3
    assert lines[0].startswith("s,nbar,theta")


def test_cli_sweep_json_stdout():
    proc = run_cli("sweep", "--theta", "0:0.1:0.1", "--format", "json")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["schema_version"] == 1


def test_cli_audit_exit_codes(tmp_path):
    clean = run_cli("audit", "--s", "0", "--nbar", "0",
                    "--theta", "0:0.5:0.1")
    assert clean.returncode == 0
    assert "violations: 0" in clean.stdout

    out = tmp_path / "viol.csv"
    dirty = run_cli("audit", "--s", "-1", "--nbar", "0",
                    "--theta", "0.1:0.5:0.1", "--convention", "literal",
                    "--out", str(out))
    assert dirty.returncode == 3
    assert out.exists()
    with open(out) as f:
        violations = list(csv.DictReader(f))
    assert len(violations) > 0
    assert violations[0]["convention"] == "literal"


def test_cli_oracle_check():
    proc = run_cli("oracle-check", "--theta", "0:0.4:0.2", "--s", "0,1",
                   "--nbar", "0,1")
    assert proc.returncode == 0
    assert "max unitarity defect" in proc.stdout


def test_cli_recreation_json():
    proc = run_cli("recreation", "--nbar", "5", "--step", "0.05",
                   "--format", "json")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["p_q_peak"] > 0.8


def test_cli_fixed_dim_flag():
    proc = run_cli("sweep", "--theta", "0:0.1:0.1", "--dim", "25")
    assert proc.returncode == 0
    assert ",25,standard," in proc.stdout.splitlines()[1]


def test_sweep_row_field_order_is_frozen():
    assert SweepRow._fields[:6] == ("s", "nbar", "theta", "phi", "dim", "convention")
    assert SweepRow._fields[-2:] == ("al_left_slack", "al_right_slack")
