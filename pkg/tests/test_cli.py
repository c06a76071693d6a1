"""CLI behaviour: exit codes, file formats, determinism, schemas."""

import json
import math

import jsonschema
import pytest

from nilscroll.cli import main
from nilscroll.io_formats import load_schema


def run(tmp_path, *argv):
    import contextlib
    import io
    import os

    cwd = os.getcwd()
    out = io.StringIO()
    err = io.StringIO()
    os.chdir(tmp_path)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(argv))
    finally:
        os.chdir(cwd)
    return code, out.getvalue(), err.getvalue()


def test_surface_small_grid(tmp_path):
    code, _, _ = run(
        tmp_path,
        "surface", "--h", "tanh(s)", "--H", "1", "--s-range", "0:1",
        "--t-range", "0:1", "--grid", "2x2", "--target", "l3", "--out", "m",
    )
    assert code == 0
    lines = (tmp_path / "m_l3.obj").read_text().splitlines()
    vs = [l for l in lines if l.startswith("v ")]
    fs = [l for l in lines if l.startswith("f ")]
    assert len(vs) == 4 and len(fs) == 1
    assert fs[0] == "f 1 2 4 3"
    assert all(l.startswith(("v ", "f ")) for l in lines)


def test_surface_both_targets(tmp_path):
    code, out, _ = run(
        tmp_path,
        "surface", "--h", "tanh(s)", "--s-range", "-1.2:1.2",
        "--t-range", "-3:3", "--grid", "24x6", "--target", "both", "--out", "mesh",
    )
    assert code == 0
    assert (tmp_path / "mesh_l3.obj").exists()
    assert (tmp_path / "mesh_nil3.obj").exists()
    # 23*5 quads each
    body = (tmp_path / "mesh_nil3.obj").read_text()
    assert body.count("\nf ") + body.startswith("f ") == 23 * 5


def test_surface_determinism(tmp_path):
    args = (
        "surface", "--h", "s + s^3", "--s-range", "-1:1", "--t-range", "-2:2",
        "--grid", "16x8", "--target", "nil3", "--out", "d",
    )
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    assert run(tmp_path / "a", *args)[0] == 0
    assert run(tmp_path / "b", *args)[0] == 0
    assert (tmp_path / "a" / "d_nil3.obj").read_bytes() == (
        tmp_path / "b" / "d_nil3.obj"
    ).read_bytes()


def test_domain_error_exit_2(tmp_path):
    code, _, err = run(tmp_path, "surface", "--h", "log(s)", "--s-range", "-1:1")
    assert code == 2
    assert "log" in err


def test_parse_error_exit_2(tmp_path):
    code, _, err = run(tmp_path, "singular", "--h", "tanh(s", "--s-range", "0:1")
    assert code == 2


def test_bad_range_exit_2(tmp_path):
    code, _, _ = run(tmp_path, "singular", "--h", "tanh(s)", "--s-range", "1:0")
    assert code == 2


def test_singular_report_and_schema(tmp_path):
    code, _, _ = run(
        tmp_path,
        "singular", "--h", "s + s^3", "--H", "1", "--s-range", "-1:1",
        "--out", "sing",
    )
    assert code == 0
    payload = json.loads((tmp_path / "sing.json").read_text())
    jsonschema.validate(payload, load_schema("singular_report"))
    pts = payload["points"]
    assert len(pts) == 2
    assert all(p["kind"] == "cuspidal_cross_cap" for p in pts)
    assert pts[0]["s"] == pytest.approx(-1 / math.sqrt(6), abs=1e-10)
    assert pts[1]["s"] == pytest.approx(1 / math.sqrt(6), abs=1e-10)
    # CSV: header + 256 samples, 17-significant-digit numbers, CRLF rows
    raw = (tmp_path / "sing_curve.csv").read_bytes()
    lines = raw.decode().split("\r\n")
    assert lines[0] == "s,t"
    assert len([l for l in lines if l]) == 257


def test_singular_unbounded_rows_blank(tmp_path):
    code, _, _ = run(
        tmp_path,
        "singular", "--h", "tanh(s)", "--s-range", "-1:1", "--grid-n", "33",
        "--out", "u",
    )
    assert code == 0
    lines = (tmp_path / "u_curve.csv").read_bytes().decode().split("\r\n")
    # s = 0 is a grid point of the 33-point grid; B3(0) = 0 -> blank t
    blank = [l for l in lines[1:] if l.endswith(",")]
    assert len(blank) == 1
    assert float(blank[0][:-1]) == pytest.approx(0.0, abs=1e-15)


def test_singular_swallowtail(tmp_path):
    code, _, _ = run(
        tmp_path, "singular", "--h", "tanh(s)", "--s-range", "0.1:1", "--out", "sw"
    )
    assert code == 0
    payload = json.loads((tmp_path / "sw.json").read_text())
    assert [p["kind"] for p in payload["points"]] == ["swallowtail"]


def test_verify_pass_and_schema(tmp_path):
    code, _, _ = run(
        tmp_path,
        "verify", "--h", "tanh(s)", "--s-range", "-1:1", "--report", "v.json",
    )
    assert code == 0
    payload = json.loads((tmp_path / "v.json").read_text())
    jsonschema.validate(payload, load_schema("verify_report"))
    assert payload["all_pass"]
    assert payload["box_sign"] in (-1, 1)


def test_verify_corrupted_tolerance_fails(tmp_path):
    code, _, _ = run(
        tmp_path,
        "verify", "--h", "tanh(s)", "--s-range", "-1:1",
        "--fd-tol", "1e-16", "--report", "v.json",
    )
    assert code == 1
    payload = json.loads((tmp_path / "v.json").read_text())
    assert not payload["checks"]["fundamental_forms_fd"]["pass"]
    # only the corrupted check fails
    others = [c for k, c in payload["checks"].items() if k != "fundamental_forms_fd"]
    assert all(c["pass"] for c in others)


def test_verify_degenerate_generator(tmp_path):
    code, _, _ = run(
        tmp_path, "verify", "--h", "s", "--s-range", "0.1:1", "--report", "v.json"
    )
    payload = json.loads((tmp_path / "v.json").read_text())
    assert payload["checks"]["frame_invariants"]["pass"]
    assert set(payload["singular_kinds"]) == {"non_front_degenerate"}


def test_verify_determinism(tmp_path):
    args = ("verify", "--h", "tanh(s)", "--s-range", "-1:1", "--report", "v.json")
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    run(tmp_path / "a", *args)
    run(tmp_path / "b", *args)
    assert (tmp_path / "a" / "v.json").read_bytes() == (
        tmp_path / "b" / "v.json"
    ).read_bytes()


def test_frame_flow_matches_closed_form(tmp_path):
    # tanh frame at s = 0 for H = 1
    init = "1 1 0  0.5 -0.5 0  0 0 -1"
    code, _, _ = run(
        tmp_path,
        "frame", "--kappa2", "2", "--H", "1", "--init-frame", init,
        "--s-range", "0:1", "--report", "f.json",
    )
    assert code == 0
    payload = json.loads((tmp_path / "f.json").read_text())
    jsonschema.validate(payload, load_schema("frame_report"))
    worst = 0.0
    for row in payload["frames"]:
        s = row["s"]
        A = [math.cosh(2 * s), 1.0, -math.sinh(2 * s)]
        worst = max(worst, max(abs(a - b) for a, b in zip(row["A"], A)))
        assert row["worst_residual"] < 1e-8
    assert worst < 1e-7


def test_frame_invalid_init_exit_2(tmp_path):
    code, _, _ = run(
        tmp_path,
        "frame", "--kappa2", "2", "--init-frame", "1 0 0 0 1 0 0 0 1",
        "--s-range", "0:1",
    )
    assert code == 2


def test_family_find_notce(tmp_path):
    code, _, _ = run(
        tmp_path,
        "family", "--h", "tanh(s)", "--find-notce", "--s", "0",
        "--report", "fam.json",
    )
    assert code == 0
    payload = json.loads((tmp_path / "fam.json").read_text())
    r1, r2 = payload["transform"]["residuals"]
    assert abs(r1) < 1e-8 and abs(r2) < 1e-8
    assert payload["transform"]["kind_at_s"] in ("swallowtail", "front_other")


def test_family_boost_invariance(tmp_path):
    code, _, _ = run(
        tmp_path,
        "family", "--h", "s + s^3", "--boost", "0.4", "--s-range", "-1:1",
        "--report", "fam.json",
    )
    assert code == 0
    payload = json.loads((tmp_path / "fam.json").read_text())
    assert payload["invariance"]["ccr_preserved"]
    assert payload["invariance"]["front_preserved"]


def test_zero_H_exit_2(tmp_path):
    code, _, _ = run(tmp_path, "singular", "--h", "tanh(s)", "--H", "0")
    assert code == 2
