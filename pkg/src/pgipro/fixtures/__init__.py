"""Bundled problem instances.

The Osdorp instance is a small two-objective street grid (route length in
meters versus street crossings) between an origin O and a destination D. Its
exact Pareto front is known and doubles as the regression reference for the
search engine; `pgipro fixture-verify` re-derives it by exhaustive
enumeration.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..mograph import MultiObjectiveGraph, Vec, load_graph

OSDORP_SOURCE = "O"
OSDORP_TARGET = "D"

# Reference front of the bundled instance, sorted by length.
OSDORP_FRONT: tuple[Vec, ...] = (
    (568.0, 8.0),
    (574.0, 7.0),
    (586.0, 6.0),
    (603.0, 5.0),
    (703.0, 4.0),
    (928.0, 3.0),
    (1335.0, 2.0),
)


def osdorp_path() -> Path:
    with resources.as_file(resources.files(__package__) / "osdorp.json") as p:
        return Path(p)


def load_osdorp() -> MultiObjectiveGraph:
    return load_graph(osdorp_path())
