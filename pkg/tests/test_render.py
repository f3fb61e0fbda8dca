"""Tests for SVG rendering of frameworks."""

from fractions import Fraction as F

import numpy as np
import pytest

from symframe.errors import InvalidInput
from symframe.io.render import edge_styles, render_svg, save_svg
from symframe.models.framework import Configuration, Framework
from symframe.models.graph import Graph
from symframe.utils.constants import (
    COLOR_AXIS,
    COLOR_NEGATIVE,
    COLOR_POSITIVE,
    COLOR_VERTEX,
    COLOR_ZERO,
)


@pytest.fixture
def k4():
    """K4 with vertex 4 at the barycentre of the outer triangle."""
    config = Configuration([[0, 0], [10, 0], [0, 10], [F(10, 3), F(10, 3)]])
    return Framework(Graph.complete(4), config)


K4_STRESS = np.array([F(-1), F(-1), F(3), F(-1), F(3), F(3)], dtype=object)


class TestEdgeStyles:

    def test_unstressed(self, k4):
        """Without a stress every bar is solid black."""
        assert edge_styles(k4) == [(COLOR_VERTEX, "solid")] * 6

    def test_signs(self, k4):
        """Compressed outer bars are red; tensed spokes are blue."""
        styles = edge_styles(k4, K4_STRESS)
        assert [c for c, _ in styles] == [
            COLOR_NEGATIVE,
            COLOR_NEGATIVE,
            COLOR_POSITIVE,
            COLOR_NEGATIVE,
            COLOR_POSITIVE,
            COLOR_POSITIVE,
        ]

    def test_zero_is_dashed(self, k4):
        omega = K4_STRESS.copy()
        omega[0] = F(0)
        assert edge_styles(k4, omega)[0] == (COLOR_ZERO, "dashed")

    def test_length_mismatch(self, k4):
        with pytest.raises(InvalidInput):
            edge_styles(k4, K4_STRESS[:3])


class TestRenderSvg:

    def test_document(self, k4):
        """An SVG document carrying the stress colours."""
        svg = render_svg(k4, K4_STRESS)
        assert svg.startswith("<?xml")
        assert "<svg" in svg
        assert COLOR_NEGATIVE in svg and COLOR_POSITIVE in svg

    def test_deterministic(self, k4):
        """Identical inputs give identical text."""
        assert render_svg(k4, K4_STRESS) == render_svg(k4, K4_STRESS)

    def test_mirror_axis_drawn(self, desargues, desargues_mirror):
        """Mirror lines are drawn in the axis colour."""
        assert COLOR_AXIS in render_svg(desargues, pair=desargues_mirror)
        assert COLOR_AXIS not in render_svg(desargues)

    def test_spatial_rejected(self, bipyramid):
        """Only planar frameworks are drawn."""
        fw = Framework(bipyramid.graph, bipyramid.config)
        with pytest.raises(InvalidInput):
            render_svg(fw)

    def test_save(self, tmp_path, k4):
        out = tmp_path / "k4.svg"
        save_svg(out, k4, K4_STRESS)
        assert out.read_text(encoding="utf-8") == render_svg(k4, K4_STRESS)
