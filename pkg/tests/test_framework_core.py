"""Tests for rigidity matrices, self-stresses, motions and generic counts."""

from fractions import Fraction as F

import pytest

from symframe.core.framework_core import (
    generic_counts,
    is_generically_isostatic,
    is_self_stress,
    maxwell_index,
    motion_basis,
    random_generic_configuration,
    rigidity_matrix,
    self_stress_basis,
    trivial_motions,
)
from symframe.errors import CoincidentPointsWarning, InvalidInput
from symframe.models.framework import Configuration, Framework
from symframe.models.graph import Graph
from symframe.utils.constants import SCALAR_FLOAT, SCALAR_RATIONAL


# ---------------------------------------------------------------------------
# Configuration model
# ---------------------------------------------------------------------------

class TestConfiguration:

    def test_scalar_inferred_from_entries(self):
        """Integers and fraction strings are exact; any float makes the mode floating."""
        assert Configuration([[0, "1/2"], [1, 0]]).scalar == SCALAR_RATIONAL
        assert Configuration([[0, 0.5], [1, 0]]).scalar == SCALAR_FLOAT

    def test_mixed_dimensions_rejected(self):
        """Points of different lengths are invalid."""
        with pytest.raises(InvalidInput):
            Configuration([[0, 0], [1, 0, 0]])

    def test_vector_roundtrip_layout(self):
        """The flat vector interleaves coordinates vertex by vertex."""
        c = Configuration([[1, 2], [3, 4]])
        assert list(c.vector()) == [F(1), F(2), F(3), F(4)]
        assert Configuration.from_vector(c.vector(), 2, SCALAR_RATIONAL) == c

    def test_coincident_pairs_warn(self):
        """A framework with coincident points warns and reports them."""
        fw = Framework(Graph.path(3), Configuration([[0, 0], [1, 0], [0, 0]]))
        assert fw.config.coincident_pairs() == [(1, 3)]
        with pytest.warns(CoincidentPointsWarning):
            assert not fw.check_distinct()

    def test_size_mismatch(self):
        """The configuration must have one point per vertex."""
        with pytest.raises(InvalidInput):
            Framework(Graph.path(3), Configuration([[0, 0], [1, 0]]))


# ---------------------------------------------------------------------------
# Rigidity matrix and stresses
# ---------------------------------------------------------------------------

class TestRigidityMatrix:

    def test_row_layout(self):
        """Row ij holds p_i - p_j at i and p_j - p_i at j."""
        fw = Framework(Graph.path(3), Configuration([[0, 0], [1, 0], [1, 2]]))
        r = rigidity_matrix(fw)
        assert r.shape == (2, 6)
        assert list(r[1]) == [F(0), F(0), F(0), F(-2), F(0), F(2)]


class TestSelfStressBasis:

    def test_collinear_triangle_has_one_stress(self):
        """Three collinear points carry a one-dimensional stress with full support."""
        fw = Framework(Graph.complete(3), Configuration([[0, 0], [1, 0], [3, 0]]))
        basis = self_stress_basis(fw)
        assert basis.s == 1
        assert all(x != 0 for x in basis.stress(0))
        assert is_self_stress(fw, basis.stress(0))

    def test_generic_triangle_is_stress_free(self):
        """A non-degenerate triangle has no self-stress."""
        fw = Framework(Graph.complete(3), Configuration([[0, 0], [1, 0], [0, 1]]))
        assert self_stress_basis(fw).s == 0

    def test_k4_stress_exact(self):
        """K4 in the plane has the classical one-dimensional stress."""
        fw = Framework(
            Graph.complete(4), Configuration([[0, 0], [10, 0], [0, 10], ["10/3", "10/3"]])
        )
        basis = self_stress_basis(fw)
        assert basis.s == 1
        omega = basis.stress(0)
        ratio = omega / omega[2]
        assert list(ratio) == [F(-1, 3), F(-1, 3), F(1), F(-1, 3), F(1), F(1)]

    def test_float_mode_matches_exact(self):
        """Floating mode finds the same stress direction."""
        fw = Framework(Graph.complete(4), Configuration(
            [[0.0, 0.0], [10.0, 0.0], [0.0, 10.0], [2.0, 3.0]]
        ))
        basis = self_stress_basis(fw)
        assert basis.s == 1
        assert is_self_stress(fw, basis.stress(0))

    def test_no_edges(self):
        """A graph with no edges has an empty stress basis."""
        fw = Framework(Graph(2, ()), Configuration([[0, 0], [1, 0]]))
        assert self_stress_basis(fw).s == 0

    def test_desargues_prism_stress(self, desargues):
        """Concurrent rungs give one full-support stress, outer triangle of opposite sign."""
        basis = self_stress_basis(desargues)
        assert basis.s == 1
        omega = dict(zip(desargues.graph.edges, basis.stress(0)))
        assert all(w != 0 for w in omega.values())
        outer = {omega[(4, 5)] > 0, omega[(4, 6)] > 0, omega[(5, 6)] > 0}
        inner = {omega[e] > 0 for e in [(1, 2), (1, 3), (2, 3), (1, 4), (2, 5), (3, 6)]}
        assert len(outer) == 1 and len(inner) == 1
        assert outer != inner


# ---------------------------------------------------------------------------
# Motions and counts
# ---------------------------------------------------------------------------

class TestMotions:

    def test_trivial_motions_dimension(self):
        """Three trivial motions in the plane, fewer for a single point."""
        assert trivial_motions(Configuration([[0, 0], [1, 0], [0, 1]])).shape[0] == 3
        assert trivial_motions(Configuration([[1, 1]])).shape[0] == 2

    def test_four_bar_has_one_flex(self):
        """A generic quadrilateral has one non-trivial flex."""
        fw = Framework(Graph.cycle(4), Configuration([[0, 0], [3, 0], [4, 2], [0, 1]]))
        assert motion_basis(fw).f == 1

    def test_maxwell_index(self, prism):
        """The prism has k = 0."""
        assert maxwell_index(prism).k == 0
        assert maxwell_index(Graph.complete(4)).k == -1


class TestGenericCounts:

    def test_seeded_configuration_is_reproducible(self, prism):
        """The same seed and trial give the same configuration."""
        a = random_generic_configuration(prism, seed=7)
        b = random_generic_configuration(prism, seed=7)
        c = random_generic_configuration(prism, seed=8)
        assert a == b
        assert a != c

    def test_generic_counts_prism(self, prism):
        """The prism is generically isostatic."""
        counts = generic_counts(prism)
        assert (counts.f, counts.s) == (0, 0)
        assert is_generically_isostatic(prism)

    def test_generic_counts_k4(self):
        """K4 generically has one stress and no flex."""
        counts = generic_counts(Graph.complete(4))
        assert (counts.f, counts.s) == (0, 1)
        assert not is_generically_isostatic(Graph.complete(4))

    def test_bad_trials(self, prism):
        """At least one trial is required."""
        with pytest.raises(InvalidInput):
            generic_counts(prism, trials=0)
