import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from freearr.cli import InputError, main, parse_alphas, parse_form

SVG = "{http://www.w3.org/2000/svg}"


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def analyze(capsys, *argv):
    code, out, _ = run(["analyze", *argv], capsys)
    assert code == 0
    return json.loads(out)


def test_analyze_family_A(capsys):
    r = analyze(capsys, "--family", "A", "--alpha", "-2")
    assert r["freeness"]["status"] == "free" and r["freeness"]["exponents"] == [1, 4, 4]
    assert r["kpi1"]["status"] == "NotKPi1" and r["kpi1"]["reason"] == "simple_triangle"
    assert r["chambers"]["count"] == 50
    assert r["schema"] == "freearr.report/1" and "tool_version" in r
    assert "timing_seconds" not in r


def test_analyze_family_B_nonfree(capsys):
    r = analyze(capsys, "--family", "B", "--alpha", "-1")
    assert r["freeness"]["status"] == "not_free"
    assert r["freeness"]["certificate_kind"] in ("chi_roots", "hilbert_mismatch")


def test_analyze_empty_file(capsys, tmp_path):
    path = tmp_path / "empty.arr"
    path.write_text("arrangement dim=3\n")
    r = analyze(capsys, "--file", str(path))
    assert r["freeness"]["status"] == "free" and r["freeness"]["exponents"] == [0, 0, 0]
    assert r["kpi1"]["status"] == "KPi1"
    assert r["input"] == {"file": str(path)}


def test_analyze_timing_flag(capsys):
    r = analyze(capsys, "--family", "A", "--alpha", "1", "--timing")
    assert r["timing_seconds"] >= 0


@pytest.mark.parametrize("argv", [
    ["analyze", "--family", "A", "--alpha", "0.5"],
    ["analyze", "--family", "A", "--alpha", "1/0"],
    ["analyze", "--family", "C", "--alpha", "1"],
    ["analyze"],
    ["analyze", "--file", "/nonexistent/file.arr"],
    ["sweep", "--family", "A"],
    ["plot", "--family", "A", "--alpha", "-2"],
    ["plot", "--family", "A", "--alpha", "-2", "--infinity", "x+y+z"],
    ["plot", "--family", "braid", "--alpha", "4", "--infinity", "x-y"],
    ["bogus"],
])
def test_input_errors_exit_2(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_decimal_hint(capsys):
    _, _, err = run(["analyze", "--family", "A", "--alpha", "0.5"], capsys)
    assert "1/2" in err


def test_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.arr"
    path.write_text("arrangement dim=3\n1 0\n")
    code, _, err = run(["analyze", "--file", str(path)], capsys)
    assert code == 2 and "bad.arr" in err


def test_sweep_B(capsys):
    code, out, _ = run(["sweep", "--family", "B", "--alphas", "-2,-1,0,1,2", "--json"], capsys)
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["alpha"] for r in rows] == ["-2", "-1", "0", "1", "2"]
    assert [r["status"] for r in rows] == ["free", "not_free", "free", "free", "free"]


def test_sweep_A_exponents_and_lattices(capsys):
    _, out, _ = run(["sweep", "--family", "A", "--alphas", "-1,0,1,-2", "--json"], capsys)
    by_alpha = {r["alpha"]: r["exponents"] for r in json.loads(out)["rows"]}
    assert by_alpha == {"-1": [1, 3, 5], "0": [1, 2, 3], "1": [1, 2, 3], "-2": [1, 4, 4]}
    _, out, _ = run(["sweep", "--family", "A", "--alphas", "-2,-3,2,1/2", "--json"], capsys)
    digests = {r["labeled_lattice"] for r in json.loads(out)["rows"]}
    assert len(digests) == 1


def test_sweep_range_and_table(capsys):
    code, out, _ = run(["sweep", "--family", "A", "--alphas", "-1:1:1"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split()[0] == "alpha" and len(lines) == 4


def test_sweep_parallel_matches_serial(capsys):
    argv = ["sweep", "--family", "A", "--alphas", "-3,-1,2", "--json"]
    _, serial, _ = run(argv, capsys)
    _, parallel, _ = run(argv + ["--jobs", "2"], capsys)
    assert serial == parallel


def _plot(capsys, *argv):
    code, out, _ = run(["plot", *argv], capsys)
    assert code == 0
    root = ET.fromstring(out)
    return root.findall(f".//{SVG}line"), root.findall(f".//{SVG}polygon")


def test_plot_family_A(capsys):
    lines, polys = _plot(capsys, "--family", "A", "--alpha", "-2", "--infinity", "z")
    assert len(lines) == 8 and len(polys) >= 1
    lines, polys = _plot(capsys, "--family", "A", "--alpha", "-1", "--infinity", "z")
    assert len(lines) == 8 and not polys


def test_plot_boolean_file(capsys, tmp_path):
    path = tmp_path / "bool.arr"
    path.write_text("arrangement dim=3\n1 0 0\n0 1 0\n0 0 1\n")
    lines, _ = _plot(capsys, "--file", str(path), "--infinity", "0,0,1")
    assert len(lines) == 2


def test_verify_round_trip(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    run(["analyze", "--family", "A", "--alpha", "-2", "--cert", str(cert)], capsys)
    code, out, _ = run(["verify", str(cert)], capsys)
    assert code == 0 and "ok" in out

    data = json.loads(cert.read_text())
    data["exponents"] = [1, 3, 5]
    edited = tmp_path / "edited.json"
    edited.write_text(json.dumps(data))
    code, out, _ = run(["verify", str(edited)], capsys)
    assert code == 1 and "claim exponents" in out

    truncated = tmp_path / "truncated.json"
    truncated.write_text(cert.read_text()[:100])
    code, _, _ = run(["verify", str(truncated)], capsys)
    assert code == 2


def test_verify_nonfree_certificate(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    run(["analyze", "--family", "B", "--alpha", "-1", "--cert", str(cert)], capsys)
    assert run(["verify", str(cert)], capsys)[0] == 0


def test_reports_are_byte_identical(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        subprocess.run([sys.executable, "-m", "freearr.cli", "analyze", "--family", "A",
                        "--alpha", "-1/2", "--out", str(path)], check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_parse_helpers():
    assert parse_form("x-2y", 3) == (1, -2, 0)
    assert parse_form("z", 3) == (0, 0, 1)
    assert parse_form("0,1/2,1", 3) == (0, 1, 2)
    with pytest.raises(InputError):
        parse_form("x+q", 3)
    with pytest.raises(InputError):
        parse_form("1,2", 3)
    assert [str(a) for a in parse_alphas("0:1:1/2")] == ["0", "1/2", "1"]
    with pytest.raises(InputError):
        parse_alphas("1:0:0")
