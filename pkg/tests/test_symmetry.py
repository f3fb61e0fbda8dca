"""Tests for orthogonal elements, representations, averaging and the degeneracy filter."""

from fractions import Fraction as F

import numpy as np
import pytest

from symframe.core.graph_core import automorphism_group, subgroups
from symframe.core.symmetry import (
    ADVISORY_REFLECTION_MOVES_EDGE,
    REASON_CENTRE_ON_EDGE,
    REASON_FIXED_NOT_PATHS,
    REASON_HALF_TURN_FIXES_TWO_EDGES,
    REASON_ROTATION_FIXES_TWO,
    act,
    average,
    averaging_matrix,
    degeneracy_filter,
    enumerate_faithful_reps,
    is_symmetric,
    pair_from_generators,
    random_symmetric_configuration,
    symmetric_generic_counts,
)
from symframe.errors import ExactnessDowngradeWarning, InvalidInput
from symframe.models.framework import Configuration
from symframe.models.graph import Graph, Permutation, Subgroup
from symframe.models.symmetry import (
    OrthogonalElement,
    PointGroupRep,
    SymmetryPair,
    point_group_label,
    two_cos_turn,
)
from symframe.utils.constants import SCALAR_FLOAT, SCALAR_RATIONAL


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def swap(n: int, *cycles) -> Permutation:
    return Permutation.from_cycles(n, cycles)


def k3_pair(image: OrthogonalElement) -> SymmetryPair:
    return pair_from_generators(Graph.complete(3), [swap(3, (1, 2))], [image])


def random_config(n: int, seed: int) -> Configuration:
    """Seeded rational points with small numerators and denominators."""
    rng = np.random.default_rng(seed)
    return Configuration(
        [
            [F(int(rng.integers(-9, 10)), int(rng.integers(1, 5))) for _ in range(2)]
            for _ in range(n)
        ]
    )


def quarter_turn_square() -> SymmetryPair:
    return pair_from_generators(
        Graph.cycle(4), [swap(4, (1, 2, 3, 4))], [OrthogonalElement.rotation(1, 4)]
    )


# ---------------------------------------------------------------------------
# OrthogonalElement
# ---------------------------------------------------------------------------

class TestOrthogonalElement:

    def test_reflection_in_y_axis_matrix(self):
        """The 90 degree mirror negates x."""
        m = OrthogonalElement.reflection_degrees(90).matrix()
        assert m.tolist() == [[F(-1), F(0)], [F(0), F(1)]]

    def test_quarter_turn_matrix(self):
        """Rotation by a quarter turn is exact."""
        m = OrthogonalElement.rotation(1, 4).matrix(SCALAR_RATIONAL)
        assert m.tolist() == [[F(0), F(-1)], [F(1), F(0)]]

    def test_inexact_angle(self):
        """A fifth turn has no rational matrix."""
        r = OrthogonalElement.rotation(1, 5)
        assert not r.is_exact
        with pytest.raises(InvalidInput):
            r.matrix(SCALAR_RATIONAL)
        assert np.allclose(r.matrix() @ r.matrix().T, np.eye(2))

    def test_composition_rules(self):
        """Two reflections compose to a rotation by twice the angle between the axes."""
        a = OrthogonalElement.reflection(F(1, 2))
        b = OrthogonalElement.reflection(F(0))
        assert a @ b == OrthogonalElement.rotation(1, 2)
        assert (a @ a).is_identity
        r = OrthogonalElement.rotation(1, 3)
        assert (r @ r @ r).is_identity
        assert r.inverse() == OrthogonalElement.rotation(2, 3)

    def test_composition_matches_matrices(self):
        """The tag algebra agrees with matrix multiplication."""
        a = OrthogonalElement.reflection_degrees(45)
        r = OrthogonalElement.rotation(1, 4)
        assert (a @ r).matrix().tolist() == np.dot(a.matrix(), r.matrix()).tolist()

    def test_trace(self):
        """Characters of the natural representation."""
        assert OrthogonalElement.rotation(1, 3).trace() == F(-1)
        assert OrthogonalElement.reflection_degrees(30).trace() == 0
        assert two_cos_turn(F(1, 6)) == F(1)
        assert two_cos_turn(F(1, 5)) == pytest.approx(0.6180339887)

    def test_point_group_label(self):
        """Schoenflies labels from element sets."""
        rot = [OrthogonalElement.rotation(k, 3) for k in range(3)]
        refl = [OrthogonalElement.reflection(F(k, 3)) for k in range(3)]
        assert point_group_label(rot) == "C3"
        assert point_group_label(rot + refl) == "C3v"
        assert point_group_label([OrthogonalElement.identity()]) == "C1"


# ---------------------------------------------------------------------------
# Representations and pairs
# ---------------------------------------------------------------------------

class TestRepresentations:

    def test_pair_from_generators(self, desargues_mirror):
        """A single mirror generates a Cs pair of order 2."""
        assert desargues_mirror.label == "Cs"
        assert desargues_mirror.order == 2

    def test_inconsistent_images(self):
        """A transposition cannot map to a third turn."""
        with pytest.raises(InvalidInput):
            k3_pair(OrthogonalElement.rotation(1, 3))

    def test_not_faithful(self):
        """Mapping a non-identity element to the identity is rejected."""
        group = Subgroup.generated_by([swap(3, (1, 2))], 3)
        with pytest.raises(InvalidInput):
            PointGroupRep.from_mapping(
                group, {p: OrthogonalElement.identity() for p in group.elements}
            )

    def test_non_automorphism_rejected(self):
        """The group must act by graph automorphisms."""
        with pytest.raises(InvalidInput):
            pair_from_generators(
                Graph.path(3), [swap(3, (1, 2))], [OrthogonalElement.reflection_degrees(90)]
            )

    def test_faithful_reps_of_s3_subgroups(self):
        """Counts of faithful planar representations over the subgroups of S3."""
        groups = subgroups(automorphism_group(Graph.complete(3)))
        counts = [len(enumerate_faithful_reps(h)) for h in groups]
        assert counts == [1, 2, 2, 2, 1, 1]

    def test_dihedral_reps_are_c3v(self):
        """The full rep of an order-6 dihedral subgroup is labelled C3v."""
        rot = swap(6, (1, 3, 5), (2, 4, 6))
        mirror = swap(6, (1, 3), (2, 4))
        group = Subgroup.generated_by([rot, mirror], 6)
        reps = enumerate_faithful_reps(group)
        assert reps and all(r.label == "C3v" for r in reps)


# ---------------------------------------------------------------------------
# Action and averaging
# ---------------------------------------------------------------------------

class TestAveraging:

    def test_symmetric_configuration_is_fixed(self, desargues, desargues_mirror):
        """Averaging a symmetric configuration returns it unchanged."""
        assert is_symmetric(desargues_mirror, desargues.config)
        assert average(desargues_mirror, desargues.config) == desargues.config

    def test_average_moves_vertex_onto_axis(self, desargues, desargues_mirror):
        """A vertex fixed by the mirror is projected onto the axis."""
        points = desargues.config.points.tolist()
        points[2] = [F(1, 2), F(4, 3)]
        skewed = Configuration(points)
        assert not is_symmetric(desargues_mirror, skewed)
        avg = average(desargues_mirror, skewed)
        assert list(avg[3]) == [F(0), F(4, 3)]
        assert is_symmetric(desargues_mirror, avg)

    def test_action_permutes_and_reflects(self, desargues, desargues_mirror):
        """(gamma . p)_i = tau(gamma^-1) p_gamma(i) fixes a symmetric configuration."""
        gamma = swap(6, (1, 2), (4, 5))
        assert act(desargues_mirror, gamma, desargues.config) == desargues.config

    def test_averaging_matrix_is_a_projector(self, desargues_mirror):
        """A is idempotent and agrees with the averaging map."""
        a = averaging_matrix(desargues_mirror)
        assert a.shape == (12, 12)
        assert (np.dot(a, a) == a).all()

    def test_averaging_matrix_matches_average(self, desargues_mirror):
        """A applied to the flat vector equals the averaged configuration."""
        base = Configuration([[k, k * k] for k in range(6)])
        a = averaging_matrix(desargues_mirror)
        expected = average(desargues_mirror, base).vector()
        assert list(np.dot(a, base.vector())) == list(expected)

    def test_random_symmetric_configuration(self, desargues_mirror):
        """Seeded symmetric samples are symmetric and reproducible."""
        p = random_symmetric_configuration(desargues_mirror, seed=3)
        assert is_symmetric(desargues_mirror, p)
        assert p == random_symmetric_configuration(desargues_mirror, seed=3)

    def test_inexact_rep_downgrades_with_warning(self):
        """An irrational tau turns rational input into floating output."""
        pair = pair_from_generators(
            Graph.cycle(5), [swap(5, (1, 2, 3, 4, 5))], [OrthogonalElement.rotation(1, 5)]
        )
        config = Configuration([[k, 1] for k in range(5)])
        with pytest.warns(ExactnessDowngradeWarning):
            avg = average(pair, config)
        assert avg.scalar == SCALAR_FLOAT
        assert is_symmetric(pair, avg)

    def test_symmetric_counts_of_mirrored_prism(self, prism):
        """The rung-fixing mirror forces a stress on the prism."""
        pair = pair_from_generators(
            prism, [swap(6, (1, 3), (2, 4))], [OrthogonalElement.reflection_degrees(90)]
        )
        counts = symmetric_generic_counts(pair)
        assert counts.s >= 1

    def test_symmetric_counts_need_a_trial(self, desargues_mirror):
        with pytest.raises(InvalidInput):
            symmetric_generic_counts(desargues_mirror, trials=0)


class TestProjectorLaws:

    @pytest.fixture(params=["mirror", "quarter-turn"])
    def exact_pair(self, request, desargues_mirror):
        return desargues_mirror if request.param == "mirror" else quarter_turn_square()

    @pytest.mark.parametrize("seed", range(10))
    def test_idempotent_and_symmetric_output(self, exact_pair, seed):
        """Averaging lands on a symmetric configuration and is idempotent."""
        p = random_config(exact_pair.graph.n, seed)
        avg = average(exact_pair, p)
        assert is_symmetric(exact_pair, avg)
        assert average(exact_pair, avg) == avg

    @pytest.mark.parametrize("seed", range(10))
    def test_matrix_agrees_with_average(self, exact_pair, seed):
        p = random_config(exact_pair.graph.n, seed)
        a = averaging_matrix(exact_pair)
        assert list(np.dot(a, p.vector())) == list(average(exact_pair, p).vector())

    def test_matrix_is_an_orthogonal_projector(self, exact_pair):
        """A^2 = A and A^T = A exactly."""
        a = averaging_matrix(exact_pair)
        assert (np.dot(a, a) == a).all()
        assert (a.T == a).all()

    @pytest.mark.filterwarnings("ignore::symframe.errors.ExactnessDowngradeWarning")
    @pytest.mark.parametrize("seed", range(10))
    def test_floating_third_turn(self, seed):
        """The laws hold to rounding for an irrational representation."""
        pair = pair_from_generators(
            Graph.complete(3), [swap(3, (1, 2, 3))], [OrthogonalElement.rotation(1, 3)]
        )
        p = random_config(3, seed).to_float()
        avg = average(pair, p)
        assert is_symmetric(pair, avg)
        assert np.allclose(average(pair, avg).points, avg.points)
        a = averaging_matrix(pair).astype(float)
        assert np.allclose(a @ a, a)
        assert np.allclose(a.T, a)
        assert np.allclose(a @ p.vector().astype(float), avg.vector().astype(float))


# ---------------------------------------------------------------------------
# degeneracy_filter
# ---------------------------------------------------------------------------

class TestDegeneracyFilter:

    def test_half_turn_of_triangle_rejected(self):
        """A half-turn of K3 fixes a vertex and an edge."""
        verdict = degeneracy_filter(k3_pair(OrthogonalElement.rotation(1, 2)))
        assert not verdict.accepted
        assert verdict.reasons == (REASON_CENTRE_ON_EDGE,)

    def test_mirror_of_triangle_accepted_with_advisory(self):
        """The mirror of K3 is accepted but maps edge 13 onto 23."""
        verdict = degeneracy_filter(k3_pair(OrthogonalElement.reflection_degrees(90)))
        assert verdict.accepted
        assert verdict.advisories == (ADVISORY_REFLECTION_MOVES_EDGE,)

    def test_rotation_fixing_two_vertices(self, prism):
        """A half-turn fixing 5 and 6 is rejected on several counts."""
        pair = pair_from_generators(
            prism, [swap(6, (1, 3), (2, 4))], [OrthogonalElement.rotation(1, 2)]
        )
        verdict = degeneracy_filter(pair)
        assert REASON_ROTATION_FIXES_TWO in verdict.reasons
        assert REASON_HALF_TURN_FIXES_TWO_EDGES in verdict.reasons

    def test_fixed_triangle_not_paths(self):
        """A mirror fixing a triangle pointwise is rejected."""
        g = Graph.from_edges(5, [(1, 2), (1, 3), (2, 3), (1, 4), (1, 5)])
        pair = pair_from_generators(g, [swap(5, (4, 5))], [OrthogonalElement.reflection_degrees(0)])
        verdict = degeneracy_filter(pair)
        assert verdict.reasons == (REASON_FIXED_NOT_PATHS,)


class TestModelDocumentation:

    @pytest.mark.parametrize(
        "method",
        [
            OrthogonalElement.identity,
            OrthogonalElement.rotation,
            OrthogonalElement.inverse,
            OrthogonalElement.order,
            PointGroupRep.from_mapping,
            PointGroupRep.trivial,
            PointGroupRep.key,
            PointGroupRep.generator_images,
            SymmetryPair.tau,
            SymmetryPair.elements,
            Permutation.from_cycles,
            Permutation.inverse,
            Permutation.order,
            Graph.from_edges,
            Graph.has_edge,
            Subgroup.generated_by,
        ],
    )
    def test_public_methods_document_their_result(self, method):
        """Public constructors and queries state what they return."""
        assert method.__doc__ is not None
        assert "Returns:" in method.__doc__
