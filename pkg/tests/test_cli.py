"""The command-line interface: outputs, files and exit codes."""

from __future__ import annotations

import subprocess
import sys
from importlib import resources

import pytest

from tilepump.cli import main


def fixture_file(name: str) -> str:
    return str(resources.files("tilepump").joinpath("fixtures", f"{name}.tiles"))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_simulate(capsys, tmp_path):
    code, out, _ = run(capsys, "simulate", fixture_file("line"), "--radius", "3", "--ascii")
    assert code == 0
    assert out.splitlines()[0] == "tiles=7 window=3 center=(0,0) terminal=no"
    assert out.splitlines()[4] == "AAAAAAA"
    svg = tmp_path / "line.svg"
    assert run(capsys, "simulate", fixture_file("line"), "--radius", "3", "--svg", str(svg))[0] == 0
    assert svg.read_text().startswith("<svg")


def test_check_directed(capsys):
    code, out, _ = run(capsys, "check-directed", fixture_file("appendix_a_reduced"), "--radius", "20",
                       "--center", "3", "3")
    assert code == 0
    assert out.startswith("NOT_DIRECTED")
    assert "conflict at" in out


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", fixture_file("grid"), "--radius", "10")
    assert code == 0
    assert out.splitlines()[0] == "class=BI_PERIODIC u=(1,0) v=(0,1) window=10 bound=64"


def test_decompose_and_verify_round_trip(capsys, tmp_path):
    doc = tmp_path / "comb.dec"
    code, out, _ = run(capsys, "decompose", fixture_file("comb"), "--radius", "15", "--out", str(doc))
    assert code == 0 and out == "complexity=2 sets=4\n"
    code, out, _ = run(capsys, "verify", fixture_file("comb"), "--decomposition", str(doc))
    assert code == 0 and out.startswith("VERIFIED tiles=")
    code, out, _ = run(capsys, "verify", fixture_file("comb"), "--decomposition", str(doc),
                       "--radius", "20")
    assert code == 0 and "window=20" in out


def test_verify_rejects_other_tile_files(capsys, tmp_path):
    doc = tmp_path / "comb.dec"
    run(capsys, "decompose", fixture_file("comb"), "--radius", "15", "--out", str(doc))
    code, _, err = run(capsys, "verify", fixture_file("line"), "--decomposition", str(doc))
    assert code == 1 and "different tile file" in err


def test_verify_detects_tampering(capsys, tmp_path):
    doc = tmp_path / "comb.dec"
    run(capsys, "decompose", fixture_file("comb"), "--radius", "15", "--out", str(doc))
    lines = doc.read_text().splitlines()
    lines = [ln.replace("type=T", "type=B") if ln.startswith("linear") else ln for ln in lines]
    doc.write_text("\n".join(lines) + "\n")
    code, _, err = run(capsys, "verify", fixture_file("comb"), "--decomposition", str(doc))
    assert code == 1 and "VERIFICATION_FAILED" in err


def test_input_errors_exit_with_two(capsys, tmp_path):
    bad = tmp_path / "bad.tiles"
    bad.write_text("tile A N=g\n")
    assert run(capsys, "simulate", str(bad), "--radius", "2")[0] == 2
    assert run(capsys, "simulate", str(tmp_path / "missing.tiles"), "--radius", "2")[0] == 2


def test_window_too_small_exits_with_one(capsys):
    code, _, err = run(capsys, "classify", fixture_file("appendix_c"), "--radius", "4")
    assert code == 1 and err.startswith("error:")


def test_argparse_errors():
    with pytest.raises(SystemExit) as info:
        main(["simulate"])
    assert info.value.code == 2


def test_console_entry_point():
    result = subprocess.run([sys.executable, "-m", "tilepump.cli", "simulate", fixture_file("grid"),
                             "--radius", "1"], capture_output=True, text=True, check=True)
    assert result.stdout.startswith("tiles=9 ")
