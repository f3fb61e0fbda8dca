"""Tests for graphs, permutations, automorphisms and drawing predicates."""

import pytest

from symframe.core.graph_core import (
    automorphism_group,
    conjugacy_classes,
    count_crossings,
    edge_and_vertex_orbits,
    fixed_elements,
    group_structure,
    independent_edges,
    is_peelable_without_edge,
    maxwell_sparsity,
    orbit_of_subgraph,
    subgroups,
)
from symframe.errors import AutGroupTooLarge, InvalidInput
from symframe.models.framework import Configuration
from symframe.models.graph import Graph, Permutation, Subgraph, Subgroup


# ---------------------------------------------------------------------------
# Graph and Permutation models
# ---------------------------------------------------------------------------

class TestGraphModel:

    def test_edges_are_normalised_and_sorted(self):
        """Edges are stored as (min, max) in lexicographic order."""
        g = Graph.from_edges(3, [(3, 1), (2, 1)])
        assert g.edges == ((1, 2), (1, 3))

    def test_rejects_loops_duplicates_and_range(self):
        """Loops, repeated edges and out-of-range endpoints are invalid."""
        with pytest.raises(InvalidInput):
            Graph.from_edges(2, [(1, 1)])
        with pytest.raises(InvalidInput):
            Graph.from_edges(2, [(1, 2), (2, 1)])
        with pytest.raises(InvalidInput):
            Graph.from_edges(2, [(1, 3)])

    def test_named_families(self):
        """Complete, cycle and path graphs have the expected edge counts."""
        assert Graph.complete(4).m == 6
        assert Graph.cycle(5).m == 5
        assert Graph.path(4).m == 3


class TestPermutation:

    def test_composition_is_function_composition(self):
        """(a * b)(i) == a(b(i))."""
        a = Permutation.from_cycles(3, [(1, 2)])
        b = Permutation.from_cycles(3, [(2, 3)])
        assert all((a * b)(i) == a(b(i)) for i in range(1, 4))

    def test_cycles_and_order(self):
        """Non-trivial cycles start at their smallest vertex."""
        p = Permutation.from_cycles(5, [(3, 1, 2), (4, 5)])
        assert p.cycles() == [(1, 2, 3), (4, 5)]
        assert p.order() == 6
        assert str(p) == "(1 2 3)(4 5)"

    def test_rejects_non_bijection(self):
        """An image list that is not a bijection is invalid."""
        with pytest.raises(InvalidInput):
            Permutation((1, 1, 2))


# ---------------------------------------------------------------------------
# Automorphisms and subgroups
# ---------------------------------------------------------------------------

class TestAutomorphismGroup:

    def test_triangle_is_s3(self):
        """Aut(K3) is the symmetric group of order 6."""
        assert automorphism_group(Graph.complete(3)).order == 6

    def test_prism_order_twelve(self, prism):
        """The triangular prism has 12 automorphisms."""
        aut = automorphism_group(prism)
        assert aut.order == 12
        assert all(p.is_automorphism_of(prism) for p in aut.elements)

    def test_cap_is_enforced(self):
        """Exceeding the cap raises instead of enumerating."""
        with pytest.raises(AutGroupTooLarge):
            automorphism_group(Graph.complete(5), cap=10)

    def test_subgroups_of_s3(self):
        """S3 has six subgroups: trivial, three of order 2, A3 and itself."""
        groups = subgroups(automorphism_group(Graph.complete(3)))
        assert [h.order for h in groups] == [1, 2, 2, 2, 3, 6]
        assert all(h.is_closed() for h in groups)

    def test_group_structure(self):
        """S3 is dihedral with q = 3; its order-3 subgroup is cyclic."""
        aut = automorphism_group(Graph.complete(3))
        s = group_structure(aut)
        assert (s.kind, s.q) == ("dihedral", 3)
        c3 = Subgroup.generated_by([Permutation.from_cycles(3, [(1, 2, 3)])], 3)
        assert group_structure(c3).kind == "cyclic"

    def test_conjugacy_classes_identity_first(self):
        """S3 splits into classes of sizes 1, 3, 2 with the identity first."""
        classes = conjugacy_classes(automorphism_group(Graph.complete(3)))
        assert classes[0].representative.is_identity
        assert sorted(c.size for c in classes) == [1, 2, 3]


# ---------------------------------------------------------------------------
# Fixed elements and orbits
# ---------------------------------------------------------------------------

class TestOrbits:

    def test_fixed_elements_of_prism_mirror(self, prism):
        """(1 3)(2 4) fixes vertices 5, 6 and the edges 56, 13, 24."""
        p = Permutation.from_cycles(6, [(1, 3), (2, 4)])
        vertices, edges = fixed_elements(p, prism)
        assert vertices == {5, 6}
        assert edges == {(5, 6), (1, 3), (2, 4)}

    def test_orbit_of_subgraph_disjoint_copies(self, prism):
        """A rung under the triangle rotation gives three disjoint copies."""
        rot = Permutation.from_cycles(6, [(1, 3, 5), (2, 4, 6)])
        group = Subgroup.generated_by([rot], 6)
        orbit = orbit_of_subgraph(group, Subgraph.from_edges([(1, 2)]))
        assert orbit.disjoint_copies
        assert orbit.union.edges == {(1, 2), (3, 4), (5, 6)}

    def test_orbit_of_triangle_not_disjoint(self, prism):
        """The triangle 135 is fixed set-wise by the rotation: one copy only."""
        rot = Permutation.from_cycles(6, [(1, 3, 5), (2, 4, 6)])
        group = Subgroup.generated_by([rot], 6)
        orbit = orbit_of_subgraph(group, Subgraph.from_edges([(1, 3), (3, 5), (1, 5)]))
        assert len(orbit.copies) == 1
        assert not orbit.disjoint_copies

    def test_edge_and_vertex_orbits(self, prism):
        """The rotation has two vertex orbits and three edge orbits."""
        rot = Permutation.from_cycles(6, [(1, 3, 5), (2, 4, 6)])
        vorbits, eorbits = edge_and_vertex_orbits(Subgroup.generated_by([rot], 6), prism)
        assert sorted(map(sorted, vorbits)) == [[1, 3, 5], [2, 4, 6]]
        assert len(eorbits) == 3
        assert sum(len(o) for o in eorbits) == prism.m


# ---------------------------------------------------------------------------
# Counting predicates
# ---------------------------------------------------------------------------

class TestCounting:

    def test_maxwell_sparsity(self, prism):
        """The prism is (2, 3)-sparse; K4 is not."""
        assert maxwell_sparsity(prism)
        assert not maxwell_sparsity(Graph.complete(4))

    def test_independent_edges_of_k4(self):
        """The pebble game accepts five of the six edges of K4."""
        assert len(independent_edges(Graph.complete(4))) == 5

    def test_peelable_without_edge(self, prism):
        """Deleting any prism edge leaves a 2-degenerate graph."""
        assert is_peelable_without_edge(prism)

    def test_k5_not_peelable(self):
        """K5 minus an edge still has a 3-core."""
        assert not is_peelable_without_edge(Graph.complete(5))


class TestCountCrossings:

    def test_square_diagonals_cross(self):
        """The two diagonals of a square cross once."""
        g = Graph.from_edges(4, [(1, 3), (2, 4)])
        c = Configuration([[0, 0], [1, 0], [1, 1], [0, 1]])
        report = count_crossings(g, c)
        assert report.crossings == 1
        assert report.crossing_pairs == (((1, 3), (2, 4)),)
        assert not report.is_plane

    def test_convex_cycle_is_plane(self):
        """A convex polygon has no crossings."""
        c = Configuration([[0, 0], [1, 0], [1, 1], [0, 1]])
        assert count_crossings(Graph.cycle(4), c).is_plane

    def test_collinear_overlap(self):
        """Overlapping collinear segments are reported as overlaps."""
        g = Graph.from_edges(4, [(1, 2), (3, 4)])
        c = Configuration([[0, 0], [2, 0], [1, 0], [3, 0]])
        report = count_crossings(g, c)
        assert report.crossings == 0
        assert report.overlaps == (((1, 2), (3, 4)),)

    def test_t_junction_is_a_touching(self):
        """A vertex resting on another edge touches it without crossing."""
        g = Graph.from_edges(4, [(1, 2), (3, 4)])
        c = Configuration([[0, 0], [2, 0], [1, 0], [1, 2]])
        report = count_crossings(g, c)
        assert report.crossings == 0
        assert report.touchings == (((1, 2), (3, 4)),)
        assert report.overlaps == ()
        assert not report.is_plane

    def test_endpoint_touching(self):
        """Segments meeting end to end at distinct vertices are a touching."""
        g = Graph.from_edges(4, [(1, 2), (3, 4)])
        c = Configuration([[0, 0], [1, 1], [1, 1], [2, 0]])
        report = count_crossings(g, c)
        assert report.crossings == 0
        assert len(report.touchings) == 1

    def test_coincident_edge_endpoints_rejected(self):
        """An edge of zero length is invalid."""
        g = Graph.from_edges(2, [(1, 2)])
        with pytest.raises(InvalidInput):
            count_crossings(g, Configuration([[0, 0], [0, 0]]))
