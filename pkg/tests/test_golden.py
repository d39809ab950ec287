"""CLI outputs on the bundled fixtures, compared with stored golden files.

Set ``TILEPUMP_REGEN_GOLDEN=1`` to rewrite the golden files.
"""

from __future__ import annotations

import os
from pathlib import Path

import pytest

from support import FIXTURE_RADIUS
from test_cli import fixture_file
from tilepump.cli import main

GOLDEN = Path(__file__).parent / "golden"
NAMES = ["line", "grid", "comb", "appendix_a", "appendix_c"]
COMMANDS = {
    "simulate": ["--ascii"],
    "classify": [],
    "decompose": [],
}


@pytest.mark.parametrize("command", COMMANDS)
@pytest.mark.parametrize("name", NAMES)
def test_golden(capsys, name, command):
    argv = [command, fixture_file(name), "--radius", str(FIXTURE_RADIUS[name]), *COMMANDS[command]]
    assert main(argv) == 0
    out = capsys.readouterr().out
    target = GOLDEN / f"{name}.{command}.txt"
    if os.environ.get("TILEPUMP_REGEN_GOLDEN"):
        target.write_text(out)
    assert out == target.read_text()
