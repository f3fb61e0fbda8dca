"""Shared graphs, configurations and symmetries for the symframe tests."""

import json
from fractions import Fraction as F
from pathlib import Path

import pytest

from symframe.core.symmetry import pair_from_generators
from symframe.models.framework import Configuration, Framework
from symframe.models.graph import Graph, Permutation
from symframe.models.statics import LiftedFramework
from symframe.models.symmetry import OrthogonalElement


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def prism_graph() -> Graph:
    """Triangular prism: triangles 135 and 246 joined by the rungs 12, 34, 56."""
    return Graph.from_edges(
        6, [(1, 3), (3, 5), (1, 5), (2, 4), (4, 6), (2, 6), (1, 2), (3, 4), (5, 6)]
    )


def desargues_graph() -> Graph:
    """Prism with triangles 123 and 456 and rungs 14, 25, 36."""
    return Graph.from_edges(
        6, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (1, 4), (2, 5), (3, 6)]
    )


def desargues_config() -> Configuration:
    """Nested triangles whose rung lines meet at (0, 1/3), mirror-symmetric in the y-axis."""
    return Configuration(
        [
            [F(-1), F(0)],
            [F(1), F(0)],
            [F(0), F(4, 3)],
            [F(-3), F(-2, 3)],
            [F(3), F(-2, 3)],
            [F(0), F(10, 3)],
        ]
    )


def k4_with_ear_graph() -> Graph:
    """K4 plus a degree-2 vertex 5 attached to 2 and 3."""
    return Graph.from_edges(
        5, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (2, 5), (3, 5)]
    )


def k4_with_ear_config() -> Configuration:
    return Configuration([[0, 0], [4, 0], [0, 4], [1, 1], [3, 3]])


def bipyramid_graph() -> Graph:
    """Triangular bipyramid: base 123, apexes 4 and 5."""
    return Graph.from_edges(
        5, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4), (1, 5), (2, 5), (3, 5)]
    )


def bipyramid_config() -> Configuration:
    return Configuration(
        [
            [F(2), F(0), F(0)],
            [F(-1), F(2), F(0)],
            [F(-1), F(-2), F(0)],
            [F(1, 5), F(1, 7), F(2)],
            [F(-1, 3), F(1, 4), F(-2)],
        ]
    )


def _write_json(path: Path, data) -> Path:
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

@pytest.fixture
def prism():
    return prism_graph()


@pytest.fixture
def desargues():
    g = desargues_graph()
    return Framework(g, desargues_config())


@pytest.fixture
def desargues_mirror(desargues):
    """The mirror (1 2)(4 5) in the y-axis."""
    g = desargues.graph
    return pair_from_generators(
        g,
        [Permutation.from_cycles(6, [(1, 2), (4, 5)])],
        [OrthogonalElement.reflection_degrees(90)],
    )


@pytest.fixture
def seven_vertex_mirror_graph():
    """Seven vertices, eleven edges, mirror-symmetric under (2 3)(6 7)."""
    return Graph.from_edges(
        7,
        [
            (1, 2), (1, 6), (1, 7), (1, 3), (2, 6), (3, 7),
            (4, 5), (2, 4), (3, 4), (5, 6), (5, 7),
        ],
    )


@pytest.fixture
def k4_with_ear():
    return Framework(k4_with_ear_graph(), k4_with_ear_config())


@pytest.fixture
def bipyramid():
    return LiftedFramework(bipyramid_graph(), bipyramid_config())


@pytest.fixture
def write_json(tmp_path):
    """Write a dict to ``tmp_path / name`` and return the path."""

    def write(name: str, data) -> Path:
        return _write_json(tmp_path / name, data)

    return write
