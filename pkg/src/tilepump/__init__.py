"""Simulation and finite description of temperature-1 tile assembly systems."""

from __future__ import annotations

from tilepump.kernels import BACKEND
from tilepump.model import (
    Assembly,
    Glue,
    Side,
    Tile,
    TileAssemblySystem,
    TileType,
    Window,
    check_directed,
    grow_to_terminal,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Assembly",
    "Glue",
    "Side",
    "Tile",
    "TileAssemblySystem",
    "TileType",
    "Window",
    "check_directed",
    "grow_to_terminal",
]
