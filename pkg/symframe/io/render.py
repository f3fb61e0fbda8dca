"""SVG drawings of planar frameworks with stress-sign colouring."""

import io
import logging
import math
from pathlib import Path
from typing import List, Optional, Tuple

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from symframe.core.stress_classify import support
from symframe.errors import InvalidInput
from symframe.models.framework import Framework
from symframe.models.symmetry import SymmetryPair
from symframe.utils.constants import (
    COLOR_AXIS,
    COLOR_NEGATIVE,
    COLOR_POSITIVE,
    COLOR_VERTEX,
    COLOR_ZERO,
)

logger = logging.getLogger(__name__)

EdgeStyle = Tuple[str, str]


def edge_styles(fw: Framework, omega: Optional[np.ndarray] = None) -> List[EdgeStyle]:
    """(colour, linestyle) per edge in graph edge order.

    Negative coefficients are red, positive blue, zero dashed grey. Without a
    stress every edge is drawn solid black.

    Examples:
        >>> from symframe.models.graph import Graph
        >>> from symframe.models.framework import Configuration
        >>> fw = Framework(Graph.path(2), Configuration([[0, 0], [1, 0]]))
        >>> edge_styles(fw)
        [('#000000', 'solid')]
    """
    edges = fw.graph.edges
    if omega is None:
        return [(COLOR_VERTEX, "solid")] * len(edges)
    if len(omega) != len(edges):
        raise InvalidInput(f"Stress has {len(omega)} entries for {len(edges)} edges")
    live = support(omega, edges)
    styles = []
    for e, w in zip(edges, omega):
        if e not in live:
            styles.append((COLOR_ZERO, "dashed"))
        elif w < 0:
            styles.append((COLOR_NEGATIVE, "solid"))
        else:
            styles.append((COLOR_POSITIVE, "solid"))
    return styles


def _axes_lines(pair: SymmetryPair, radius: float) -> Tuple[List[np.ndarray], bool]:
    """Mirror lines through the origin, and whether a rotation centre is marked."""
    lines = []
    rotation = False
    seen = set()
    for _, img in pair.elements():
        if img.is_reflection and img.angle not in seen:
            seen.add(img.angle)
            theta = math.pi * float(img.angle)
            u = np.array([math.cos(theta), math.sin(theta)]) * radius
            lines.append(np.array([-u, u]))
        elif img.is_rotation and not img.is_identity:
            rotation = True
    return lines, rotation


def render_svg(
    fw: Framework,
    omega: Optional[np.ndarray] = None,
    pair: Optional[SymmetryPair] = None,
    size: float = 4.0,
) -> str:
    """Draw a planar framework as an SVG 1.1 document.

    Args:
        fw: Framework with d = 2
        omega: Optional stress used to colour edges
        pair: Optional symmetry whose mirror axes and rotation centre are drawn
        size: Figure side in inches

    Returns:
        SVG text, identical for identical inputs

    Raises:
        InvalidInput: If the framework is not planar-dimensional
    """
    if fw.config.d != 2:
        raise InvalidInput(f"Only planar frameworks can be drawn, got d={fw.config.d}")
    pts = np.array(fw.config.to_float().points, dtype=float).reshape(-1, 2)

    fig = Figure(figsize=(size, size))
    ax = fig.add_subplot(1, 1, 1)
    ax.set_aspect("equal")
    ax.axis("off")

    if pair is not None:
        extent = float(np.abs(pts).max()) if pts.size else 1.0
        lines, rotation = _axes_lines(pair, 1.2 * max(extent, 1.0))
        for line in lines:
            ax.plot(line[:, 0], line[:, 1], color=COLOR_AXIS, linestyle="dashdot", linewidth=0.8)
        if rotation:
            ax.plot([0.0], [0.0], marker="+", color=COLOR_AXIS, markersize=10)

    for (i, j), (colour, style) in zip(fw.graph.edges, edge_styles(fw, omega)):
        a, b = pts[i - 1], pts[j - 1]
        ax.plot([a[0], b[0]], [a[1], b[1]], color=colour, linestyle=style, linewidth=1.5)

    if pts.size:
        ax.scatter(pts[:, 0], pts[:, 1], s=24, color=COLOR_VERTEX, zorder=3)
        for v, (x, y) in enumerate(pts, start=1):
            ax.annotate(str(v), (x, y), textcoords="offset points", xytext=(4, 4), fontsize=8)

    buf = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": "symframe", "svg.fonttype": "none"}):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    logger.debug("Rendered %d vertices and %d edges", fw.graph.n, fw.graph.m)
    return buf.getvalue()


def save_svg(path: Path, fw: Framework, omega: Optional[np.ndarray] = None, pair=None) -> None:
    Path(path).write_text(render_svg(fw, omega, pair), encoding="utf-8")
