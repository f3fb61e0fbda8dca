"""Tests for projections, vertical loads, Maxwell-Cremona lifts and error bounds."""

import math
from fractions import Fraction as F

import numpy as np
import pytest

from symframe.core.framework_core import self_stress_basis
from symframe.core.statics import (
    diameter,
    face_is_planar,
    induced_load,
    maxwell_cremona_lift,
    perturbation_bound,
    planar_faces,
    project,
    projection_stress,
    residual_check,
    vertical_resolvability,
)
from symframe.errors import InvalidInput, NonPlanarInput, NotASelfStress
from symframe.models.framework import Configuration, Framework
from symframe.models.graph import Graph
from symframe.models.statics import LoadVector


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def projection_basis(lf):
    return self_stress_basis(project(lf))


# ---------------------------------------------------------------------------
# Projection and vertical loads
# ---------------------------------------------------------------------------

class TestVerticalLoads:

    def test_projection_drops_heights(self, bipyramid):
        """The projection keeps x and y."""
        fw = project(bipyramid)
        assert fw.d == 2
        assert list(fw.config[4]) == [F(1, 5), F(1, 7)]

    def test_induced_load_is_vertical(self, bipyramid):
        """A projection stress induces a purely vertical load."""
        omega = projection_basis(bipyramid).stress(0)
        load = induced_load(bipyramid, omega)
        assert load.is_vertical
        assert any(x != 0 for x in load.values[:, 2])

    def test_projection_stress_resolves_induced_load(self, bipyramid):
        """The resolution of an induced load certifies a projection stress."""
        omega = projection_basis(bipyramid).stress(0)
        result = projection_stress(bipyramid, induced_load(bipyramid, omega))
        assert result.residual == 0
        assert result.projected_residual == 0

    def test_horizontal_load_rejected(self, bipyramid):
        """Only vertical loads are accepted."""
        values = np.zeros((5, 3))
        values[0, 0] = 1.0
        with pytest.raises(InvalidInput):
            projection_stress(bipyramid, LoadVector(values))

    def test_resolvability(self, bipyramid):
        """Two projection stresses resolve a two-dimensional family of loads."""
        omega = projection_basis(bipyramid).stress(0)
        uniform = LoadVector.vertical([1] * 5)
        units = [LoadVector.vertical([F(int(i == k)) for i in range(5)]) for k in range(5)]
        result = vertical_resolvability(bipyramid, [uniform, induced_load(bipyramid, omega)])
        assert result.feasible == (True, True)
        assert result.stress_dim == 2
        assert result.resolved_dim == 2
        assert not all(vertical_resolvability(bipyramid, units).feasible)

    def test_vertical_builder(self):
        """LoadVector.vertical accepts fraction strings."""
        load = LoadVector.vertical(["1/2", 2])
        assert load.n == 2
        assert load.values[0, 2] == F(1, 2)
        assert load.is_vertical


# ---------------------------------------------------------------------------
# Faces and lifts
# ---------------------------------------------------------------------------

class TestLift:

    def test_faces_of_k4_with_ear(self, k4_with_ear):
        """Five faces; the outer one runs around 1, 2, 5, 3."""
        faces, outer = planar_faces(k4_with_ear)
        assert len(faces) == 5
        assert set(faces[outer]) == {1, 2, 3, 5}

    def test_lift_heights(self, k4_with_ear):
        """The outer face is flat and only the interior vertex rises."""
        basis = self_stress_basis(k4_with_ear)
        assert basis.s == 1
        omega = dict(zip(k4_with_ear.graph.edges, basis.stress(0)))
        assert omega[(2, 5)] == 0 and omega[(3, 5)] == 0
        lf = maxwell_cremona_lift(k4_with_ear, basis.stress(0))
        heights = dict(zip(k4_with_ear.graph.vertices, lf.heights))
        assert [heights[v] for v in (1, 2, 3, 5)] == [0, 0, 0, 0]
        assert heights[4] != 0
        assert all(face_is_planar(lf, face) for face in lf.faces)

    def test_lift_projects_back(self, k4_with_ear):
        """Dropping the heights recovers the plane framework."""
        lf = maxwell_cremona_lift(k4_with_ear, self_stress_basis(k4_with_ear).stress(0))
        assert project(lf).config == k4_with_ear.config

    def test_lift_needs_self_stress(self, k4_with_ear):
        """An arbitrary edge vector is not liftable."""
        with pytest.raises(NotASelfStress):
            maxwell_cremona_lift(k4_with_ear, np.array([F(1)] * 8, dtype=object))

    def test_lift_needs_plane_drawing(self):
        """K4 on a square has crossing diagonals."""
        fw = Framework(Graph.complete(4), Configuration([[0, 0], [1, 0], [1, 1], [0, 1]]))
        with pytest.raises(NonPlanarInput):
            maxwell_cremona_lift(fw, self_stress_basis(fw).stress(0))


# ---------------------------------------------------------------------------
# Fabrication error
# ---------------------------------------------------------------------------

class TestErrorBudget:

    def test_perturbation_bound(self):
        """eps / (2 sqrt(m) ||omega||), infinite when nothing constrains it."""
        assert perturbation_bound(9, 1.0, 1e-3) == pytest.approx(1e-3 / 6)
        assert perturbation_bound(0, 1.0, 1e-3) == math.inf
        assert perturbation_bound(4, 0.0, 1e-3) == math.inf

    def test_diameter(self):
        """Largest pairwise distance."""
        assert diameter(Configuration([[0, 0, 0], [3, 4, 0], [1, 1, 0]])) == pytest.approx(5.0)
        assert diameter(Configuration([[1, 2, 3]])) == 0.0

    def test_residual_within_bound(self, bipyramid):
        """A small perturbation keeps the load error under 2 sqrt(m) diam ||omega||."""
        omega = projection_basis(bipyramid).stress(0)
        rng = np.random.default_rng(11)
        e = Configuration((rng.uniform(-1e-3, 1e-3, size=(5, 3))).tolist())
        budget = residual_check(omega, bipyramid, e, eps=1e-2)
        assert budget.holds
        assert budget.residual > 0
        assert budget.diameter_bound == pytest.approx(
            perturbation_bound(9, budget.omega_norm, 1e-2)
        )

    def test_perturbation_shape_mismatch(self, bipyramid):
        """The perturbation needs one 3D offset per vertex."""
        with pytest.raises(InvalidInput):
            residual_check(np.zeros(9), bipyramid, Configuration([[0.0, 0.0, 0.0]]))
