"""JSON file formats for graphs, configurations, symmetries, polynomials and loads.

Every ``load_*`` accepts a path or an already parsed dict; every ``*_to_dict``
produces the dict that the matching loader reads back. Rational scalars are
written as "num/den" strings, floats as JSON numbers.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from symframe.core.symmetry import pair_from_generators
from symframe.errors import InvalidInput
from symframe.models.framework import Configuration
from symframe.models.graph import Edge, Graph, Permutation, normalise_edge
from symframe.models.polynomial import MultiPoly, variable_names
from symframe.models.statics import LiftedFramework, LoadVector
from symframe.models.symmetry import OrthogonalElement, SymmetryPair
from symframe.utils.constants import SCALAR_FLOAT, SCALAR_RATIONAL
from symframe.utils.helpers import format_scalar, parse_scalar

Source = Union[str, Path, Dict[str, Any]]


def read_json(source: Source) -> Dict[str, Any]:
    """Parse a JSON file, or pass a dict through.

    Raises:
        InvalidInput: If the file cannot be read or parsed
    """
    if isinstance(source, dict):
        return source
    try:
        with open(source, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"Cannot read {source}: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidInput(f"{source} does not contain a JSON object")
    return data


def dumps(data: Any) -> str:
    """Deterministic JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _field(data: Dict[str, Any], key: str) -> Any:
    if key not in data:
        raise InvalidInput(f"Missing field {key!r}")
    return data[key]


# ----------------------------------------------------------------------------
# Graph and configuration
# ----------------------------------------------------------------------------


def load_graph(source: Source) -> Graph:
    """{"n": 6, "edges": [[1, 2], ...]}"""
    data = read_json(source)
    return Graph.from_edges(int(_field(data, "n")), _field(data, "edges"))


def graph_to_dict(g: Graph) -> Dict[str, Any]:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def load_configuration(source: Source, scalar: Optional[str] = None) -> Configuration:
    """{"d": 2, "points": [["0", "1/2"], ...], "scalar": "rational"}

    ``scalar`` overrides the file's mode; rational files with float entries
    are rejected.
    """
    data = read_json(source)
    d = int(data.get("d", 2))
    raw = _field(data, "points")
    points = [[parse_scalar(x) for x in row] for row in raw]
    has_float = any(isinstance(x, float) for row in points for x in row)
    mode = scalar or data.get("scalar") or (SCALAR_FLOAT if has_float else SCALAR_RATIONAL)
    if mode == SCALAR_RATIONAL and has_float:
        raise InvalidInput("Rational configuration contains float coordinates")
    if mode == SCALAR_FLOAT:
        points = [[float(x) for x in row] for row in points]
    return Configuration(points, scalar=mode, d=d)


def configuration_to_dict(c: Configuration) -> Dict[str, Any]:
    return {
        "d": c.d,
        "points": [[format_scalar(x) for x in row] for row in c.points],
        "scalar": c.scalar,
    }


# ----------------------------------------------------------------------------
# Symmetry
# ----------------------------------------------------------------------------


def _parse_generator(n: int, raw: Sequence) -> Permutation:
    """A generator is a list of cycles or a full image list."""
    if raw and all(isinstance(c, (list, tuple)) for c in raw):
        return Permutation.from_cycles(n, raw)
    if len(raw) != n:
        raise InvalidInput(f"Image list {raw} does not have {n} entries")
    return Permutation(tuple(raw))


def _parse_image(raw: Dict[str, Any]) -> OrthogonalElement:
    kind = raw.get("kind")
    if kind == "identity":
        return OrthogonalElement.identity()
    if kind == "rotation":
        return OrthogonalElement.rotation(int(_field(raw, "k")), int(_field(raw, "q")))
    if kind == "reflection":
        return OrthogonalElement.reflection_degrees(parse_scalar(_field(raw, "axis_deg")))
    raise InvalidInput(f"Unknown orthogonal element kind {kind!r}")


def image_to_dict(img: OrthogonalElement) -> Dict[str, Any]:
    if img.is_identity:
        return {"kind": "identity"}
    if img.is_rotation:
        return {"kind": "rotation", "k": img.angle.numerator, "q": img.angle.denominator}
    return {"kind": "reflection", "axis_deg": format_scalar(img.axis_degrees)}


def load_symmetry(source: Source, g: Graph) -> SymmetryPair:
    """{"generators": [[[1, 2], [4, 5]]], "images": [{"kind": "reflection", "axis_deg": 90}]}"""
    data = read_json(source)
    gens = [_parse_generator(g.n, raw) for raw in _field(data, "generators")]
    images = [_parse_image(raw) for raw in _field(data, "images")]
    return pair_from_generators(g, gens, images)


def symmetry_to_dict(pair: SymmetryPair) -> Dict[str, Any]:
    gens = pair.rep.generator_images()
    return {
        "generators": [list(g.image) for g, _ in gens],
        "images": [image_to_dict(img) for _, img in gens],
        "label": pair.label,
        "order": pair.order,
    }


# ----------------------------------------------------------------------------
# Polynomials
# ----------------------------------------------------------------------------


def load_polynomial(source: Source) -> MultiPoly:
    """{"vars": ["x1", "y1", ...], "terms": [{"exp": [...], "num": "3", "den": "1"}]}"""
    data = read_json(source)
    names = _field(data, "vars")
    if len(names) % 2:
        raise InvalidInput("Polynomial variables must come in (x, y) pairs")
    n = len(names) // 2
    if list(names) != variable_names(n):
        raise InvalidInput(f"Variables must be {variable_names(n)}")
    terms = []
    for term in _field(data, "terms"):
        coeff = Fraction(int(_field(term, "num")), int(term.get("den", 1)))
        terms.append((_field(term, "exp"), coeff))
    return MultiPoly.from_terms(n, terms)


def polynomial_to_dict(p: MultiPoly) -> Dict[str, Any]:
    return {
        "vars": variable_names(p.n),
        "terms": [
            {"exp": list(exp), "num": str(c.numerator), "den": str(c.denominator)}
            for exp, c in p.terms()
        ],
    }


# ----------------------------------------------------------------------------
# Lifts, loads, weights and stresses
# ----------------------------------------------------------------------------


def load_lift(source: Source, g: Graph) -> LiftedFramework:
    """A planar configuration plus "z" heights and optional "faces"."""
    data = read_json(source)
    base = load_configuration({k: v for k, v in data.items() if k != "z"} | {"d": 2})
    z = [parse_scalar(x) for x in _field(data, "z")]
    if len(z) != base.n:
        raise InvalidInput(f"{len(z)} heights for {base.n} points")
    mode = base.scalar
    if mode == SCALAR_RATIONAL and any(isinstance(x, float) for x in z):
        raise InvalidInput("Rational lift contains float heights")
    points = [
        list(row) + [h if mode == SCALAR_RATIONAL else float(h)] for row, h in zip(base.points, z)
    ]
    faces = data.get("faces")
    return LiftedFramework(
        g,
        Configuration(points, scalar=mode, d=3),
        tuple(tuple(f) for f in faces) if faces is not None else None,
        data.get("outer_face"),
    )


def lift_to_dict(lf: LiftedFramework) -> Dict[str, Any]:
    points = lf.config.points
    out = {
        "d": 2,
        "points": [[format_scalar(x) for x in row[:2]] for row in points],
        "scalar": lf.config.scalar,
        "z": [format_scalar(x) for x in points[:, 2]],
    }
    if lf.faces is not None:
        out["faces"] = [list(f) for f in lf.faces]
        out["outer_face"] = lf.outer_face
    return out


def load_loads(source: Source) -> List[LoadVector]:
    """{"loads": [[beta_1, ..., beta_n], ...]} for vertical loads, or lists of 3-vectors."""
    data = read_json(source)
    loads = []
    for raw in _field(data, "loads"):
        if raw and isinstance(raw[0], (list, tuple)):
            vals = np.array([[parse_scalar(x) for x in row] for row in raw], dtype=object)
            loads.append(LoadVector(vals))
        else:
            loads.append(LoadVector.vertical([parse_scalar(x) for x in raw]))
    return loads


def load_weights(source: Source) -> Dict[Edge, Union[Fraction, float]]:
    """{"weights": [[i, j, "w"], ...]}"""
    data = read_json(source)
    weights = {}
    for entry in _field(data, "weights"):
        if len(entry) != 3:
            raise InvalidInput(f"Weight entry {entry} must be [i, j, w]")
        i, j, w = entry
        weights[normalise_edge(int(i), int(j))] = parse_scalar(w)
    return weights


def weights_to_dict(weights: Dict[Edge, Any]) -> Dict[str, Any]:
    return {"weights": [[i, j, format_scalar(w)] for (i, j), w in sorted(weights.items())]}


def load_stress(source: Source, g: Graph) -> np.ndarray:
    """{"stress": ["w_e", ...]} in graph edge order."""
    data = read_json(source)
    values = [parse_scalar(x) for x in _field(data, "stress")]
    if len(values) != g.m:
        raise InvalidInput(f"Stress has {len(values)} entries for {g.m} edges")
    if any(isinstance(x, float) for x in values):
        return np.array([float(x) for x in values], dtype=float)
    return np.array(values, dtype=object)


def stress_to_list(omega: np.ndarray) -> List[Any]:
    return [format_scalar(x) for x in omega]


def edge_key(e: Tuple[int, int]) -> str:
    return f"{e[0]}-{e[1]}"
