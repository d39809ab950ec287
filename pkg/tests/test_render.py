"""ASCII and SVG rendering."""

from __future__ import annotations

import xml.etree.ElementTree as ET

from support import fixture_system
from tilepump.model import Window, grow_to_terminal
from tilepump.render import render_ascii, render_svg, type_color


def test_ascii_comb():
    t, _ = fixture_system("comb")
    w = Window((0, 1), 1)
    alpha = grow_to_terminal(t, Window((0, 0), 4))
    assert render_ascii(alpha, w) == "TTT\nTTT\nBBB\n"


def test_svg_is_well_formed():
    t, w = fixture_system("comb", 3)
    alpha = grow_to_terminal(t, w)
    root = ET.fromstring(render_svg(alpha, w))
    rects = root.findall("{http://www.w3.org/2000/svg}rect")
    assert len(rects) == 1 + len(alpha)


def test_type_colors_are_stable():
    assert type_color("A") == type_color("A")
    assert type_color("A").startswith("#") and len(type_color("A")) == 7
