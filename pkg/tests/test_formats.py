"""Tests for the JSON file formats and report exporters."""

import hashlib
import json
from fractions import Fraction as F

import pytest

from symframe.core.maxwell_count import algorithm1
from symframe.core.pure_condition import bracket
from symframe.io.exporters import (
    file_digest,
    package_versions,
    rubber_band_to_dict,
    scan_to_dict,
    write_report,
)
from symframe.io.formats import (
    configuration_to_dict,
    dumps,
    edge_key,
    graph_to_dict,
    lift_to_dict,
    load_configuration,
    load_graph,
    load_lift,
    load_loads,
    load_polynomial,
    load_stress,
    load_symmetry,
    load_weights,
    polynomial_to_dict,
    read_json,
    stress_to_list,
    symmetry_to_dict,
    weights_to_dict,
)
from symframe.core.rubber_band import algorithm3
from symframe.errors import InvalidInput
from symframe.models.graph import Graph
from symframe.models.report import AnalysisReport
from symframe.utils.constants import SCALAR_FLOAT, SCALAR_RATIONAL


# ---------------------------------------------------------------------------
# read_json / dumps
# ---------------------------------------------------------------------------

class TestJson:

    def test_read_file(self, write_json):
        """Files are parsed; dicts pass through."""
        path = write_json("g.json", {"n": 2, "edges": [[1, 2]]})
        assert read_json(path) == {"n": 2, "edges": [[1, 2]]}
        assert read_json({"a": 1}) == {"a": 1}

    def test_unreadable(self, tmp_path):
        """Missing files, broken JSON and non-objects are invalid input."""
        with pytest.raises(InvalidInput):
            read_json(tmp_path / "missing.json")
        broken = tmp_path / "broken.json"
        broken.write_text("{", encoding="utf-8")
        with pytest.raises(InvalidInput):
            read_json(broken)
        listing = tmp_path / "list.json"
        listing.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(InvalidInput):
            read_json(listing)

    def test_dumps_is_deterministic(self):
        """Sorted keys and a trailing newline."""
        assert dumps({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}\n'


# ---------------------------------------------------------------------------
# Graphs and configurations
# ---------------------------------------------------------------------------

class TestGraphAndConfiguration:

    def test_graph(self, prism):
        """Graphs read back from their dict form."""
        assert load_graph(graph_to_dict(prism)) == prism

    def test_graph_missing_field(self):
        """The edge list is required."""
        with pytest.raises(InvalidInput):
            load_graph({"n": 3})

    def test_rational_configuration(self):
        """Fraction strings and integers are exact."""
        c = load_configuration({"points": [["1/2", 0], [1, "-3/4"]]})
        assert c.scalar == SCALAR_RATIONAL
        assert c[2][1] == F(-3, 4)
        assert configuration_to_dict(c)["points"] == [["1/2", "0"], ["1", "-3/4"]]

    def test_float_configuration(self):
        """Any JSON float switches to floating mode."""
        c = load_configuration({"points": [[0.5, 0], [1, 2]]})
        assert c.scalar == SCALAR_FLOAT
        assert configuration_to_dict(c)["points"] == [[0.5, 0.0], [1.0, 2.0]]

    def test_rational_override_with_floats(self):
        """Requesting rational mode with float input is refused."""
        with pytest.raises(InvalidInput):
            load_configuration({"points": [[0.5, 0]]}, scalar=SCALAR_RATIONAL)

    def test_float_override(self):
        """Exact input may be read in floating mode."""
        c = load_configuration({"points": [["1/4", 1]]}, scalar=SCALAR_FLOAT)
        assert c.scalar == SCALAR_FLOAT
        assert c[1][0] == 0.25


# ---------------------------------------------------------------------------
# Symmetry
# ---------------------------------------------------------------------------

class TestSymmetry:

    def test_cycles_and_images_agree(self, desargues):
        """A generator may be given as cycles or as an image list."""
        g = desargues.graph
        image = {"kind": "reflection", "axis_deg": 90}
        a = load_symmetry({"generators": [[[1, 2], [4, 5]]], "images": [image]}, g)
        b = load_symmetry({"generators": [[2, 1, 3, 5, 4, 6]], "images": [image]}, g)
        assert a.rep.images == b.rep.images
        assert a.label == "Cs"

    def test_serialised_form(self, desargues_mirror):
        """Generators are written as image lists with their labels."""
        out = symmetry_to_dict(desargues_mirror)
        assert out["generators"] == [[2, 1, 3, 5, 4, 6]]
        assert out["images"] == [{"kind": "reflection", "axis_deg": "90"}]
        assert (out["label"], out["order"]) == ("Cs", 2)

    def test_rotation_image(self):
        """Rotations are given by k and q."""
        pair = load_symmetry(
            {"generators": [[[1, 2, 3]]], "images": [{"kind": "rotation", "k": 1, "q": 3}]},
            Graph.complete(3),
        )
        assert pair.label == "C3"

    def test_unknown_kind(self):
        """Only identity, rotation and reflection are understood."""
        with pytest.raises(InvalidInput):
            load_symmetry(
                {"generators": [[[1, 2]]], "images": [{"kind": "glide"}]}, Graph.complete(3)
            )

    def test_short_image_list(self):
        """An image list needs one entry per vertex."""
        with pytest.raises(InvalidInput):
            load_symmetry(
                {"generators": [[2, 1]], "images": [{"kind": "identity"}]}, Graph.complete(3)
            )


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class TestPolynomial:

    def test_bracket_reads_back(self):
        """The written polynomial is the one read back."""
        b = bracket(3, 1, 2, 3)
        data = json.loads(dumps(polynomial_to_dict(b)))
        assert data["vars"] == ["x1", "y1", "x2", "y2", "x3", "y3"]
        assert load_polynomial(data) == b

    def test_wrong_variables(self):
        """Variables must follow the x1, y1, ... convention."""
        with pytest.raises(InvalidInput):
            load_polynomial({"vars": ["y1", "x1"], "terms": []})
        with pytest.raises(InvalidInput):
            load_polynomial({"vars": ["x1"], "terms": []})

    def test_fraction_coefficients(self):
        """num/den pairs give rational coefficients."""
        p = load_polynomial(
            {"vars": ["x1", "y1"], "terms": [{"exp": [1, 0], "num": "3", "den": "2"}]}
        )
        assert p.terms() == [((1, 0), F(3, 2))]


# ---------------------------------------------------------------------------
# Lifts, loads, weights and stresses
# ---------------------------------------------------------------------------

class TestStaticsFormats:

    def test_lift(self, k4_with_ear):
        """A lift is a planar configuration plus heights."""
        g = k4_with_ear.graph
        data = {
            "points": [[0, 0], [4, 0], [0, 4], [1, 1], [3, 3]],
            "z": [0, 0, 0, "-4/3", 0],
            "faces": [[1, 2, 5, 3]],
            "outer_face": 0,
        }
        lf = load_lift(data, g)
        assert lf.config.d == 3
        assert lf.heights[3] == F(-4, 3)
        assert lf.faces == ((1, 2, 5, 3),)
        assert lift_to_dict(lf)["z"] == ["0", "0", "0", "-4/3", "0"]

    def test_lift_float_heights_in_rational_mode(self, k4_with_ear):
        """Rational points with float heights are inconsistent."""
        with pytest.raises(InvalidInput):
            load_lift(
                {
                    "points": [[0, 0], [4, 0], [0, 4], [1, 1], [3, 3]],
                    "scalar": "rational",
                    "z": [0.5, 0, 0, 0, 0],
                },
                k4_with_ear.graph,
            )

    def test_loads(self):
        """Height lists are vertical loads; 3-vector lists are general ones."""
        loads = load_loads({"loads": [["1", "2"], [[0, 0, 1], [1, 0, 0]]]})
        assert loads[0].is_vertical
        assert not loads[1].is_vertical

    def test_weights(self):
        """Weights are keyed by normalised edges."""
        w = load_weights({"weights": [[2, 1, "3/2"], [1, 3, 1]]})
        assert w == {(1, 2): F(3, 2), (1, 3): F(1)}
        assert weights_to_dict(w) == {"weights": [[1, 2, "3/2"], [1, 3, "1"]]}
        with pytest.raises(InvalidInput):
            load_weights({"weights": [[1, 2]]})

    def test_stress(self, prism):
        """Stresses are read in edge order, exact unless floats appear."""
        exact = load_stress({"stress": ["1/2"] * 9}, prism)
        assert exact.dtype == object
        assert stress_to_list(exact)[0] == "1/2"
        floating = load_stress({"stress": [0.5] * 9}, prism)
        assert floating.dtype == float
        with pytest.raises(InvalidInput):
            load_stress({"stress": [1, 2]}, prism)

    def test_edge_key(self):
        assert edge_key((1, 2)) == "1-2"


# ---------------------------------------------------------------------------
# Exporters
# ---------------------------------------------------------------------------

class TestExporters:

    def test_file_digest(self, tmp_path):
        """SHA-256 of the file bytes."""
        path = tmp_path / "x.json"
        path.write_bytes(b"{}")
        assert file_digest(path) == hashlib.sha256(b"{}").hexdigest()

    def test_versions(self):
        """The report records the numerical stack."""
        assert {"symframe", "numpy", "scipy", "sympy", "networkx"} <= set(package_versions())

    def test_write_report(self, tmp_path):
        """Reports are written exactly as returned."""
        report = AnalysisReport(command="analyze", result={"s": 1})
        out = tmp_path / "report.json"
        text = write_report(report, out)
        assert out.read_text(encoding="utf-8") == text
        assert json.loads(text)["result"] == {"s": 1}

    def test_scan_payload(self):
        """Scan entries serialise with their filter results."""
        payload = scan_to_dict(algorithm1(Graph.complete(3), probe_crossings=False))
        assert payload["count"] == 6
        assert all(p["detected_s"] == 0 for p in payload["pairs"])
        json.dumps(payload)

    def test_rubber_band_payload(self):
        """Rubber-band results serialise to plain JSON values."""
        weights = {(1, 4): F(1), (2, 4): F(1), (3, 4): F(1)}
        payload = rubber_band_to_dict(algorithm3(Graph.complete(4), (1, 2, 3), weights=weights))
        assert payload["config"]["points"][3] == ["10/3", "10/3"]
        assert payload["extensive"] is True
        json.dumps(payload)
