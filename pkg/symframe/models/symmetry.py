"""Planar orthogonal elements, point-group representations and symmetric pairs."""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Tuple, Union

import numpy as np

from symframe.errors import InvalidInput
from symframe.models.graph import Graph, Permutation, Subgroup
from symframe.utils.constants import SCALAR_FLOAT, SCALAR_RATIONAL

Scalar = Union[Fraction, float]

ROTATION = "rotation"
REFLECTION = "reflection"

# (cos, sin) of quarter turns
_QUARTER_TURNS = {
    0: (Fraction(1), Fraction(0)),
    1: (Fraction(0), Fraction(1)),
    2: (Fraction(-1), Fraction(0)),
    3: (Fraction(0), Fraction(-1)),
}

# 2cos(2*pi*t) is rational exactly for these denominators of t
_RATIONAL_TWO_COS = {
    1: {0: Fraction(2)},
    2: {1: Fraction(-2)},
    3: {1: Fraction(-1), 2: Fraction(-1)},
    4: {1: Fraction(0), 3: Fraction(0)},
    6: {1: Fraction(1), 5: Fraction(1)},
}


def two_cos_turn(turn: Fraction) -> Scalar:
    """Return 2cos(2*pi*turn), exactly when the value is rational.

    Examples:
        >>> two_cos_turn(Fraction(1, 3))
        Fraction(-1, 1)
        >>> round(two_cos_turn(Fraction(1, 5)), 6)
        0.618034
    """
    turn = turn % 1
    table = _RATIONAL_TWO_COS.get(turn.denominator)
    if table is not None and turn.numerator in table:
        return table[turn.numerator]
    return 2.0 * math.cos(2.0 * math.pi * float(turn))


@dataclass(frozen=True, order=True)
class OrthogonalElement:
    """An element of O(2) with a rational angle tag.

    A rotation is stored by its turn ``t`` (angle 2*pi*t), a reflection by
    the angle of its mirror axis as a multiple of pi (the y-axis is 1/2).
    Both are reduced modulo 1.

    Attributes:
        kind: "rotation" or "reflection"
        angle: Turn of a rotation or axis of a reflection, in [0, 1)
    """

    kind: str
    angle: Fraction

    def __post_init__(self) -> None:
        if self.kind not in (ROTATION, REFLECTION):
            raise InvalidInput(f"Unknown orthogonal element kind {self.kind!r}")
        object.__setattr__(self, "angle", Fraction(self.angle) % 1)

    @classmethod
    def identity(cls) -> "OrthogonalElement":
        """The zero rotation.

        Returns:
            OrthogonalElement acting as the 2x2 identity
        """
        return cls(ROTATION, Fraction(0))

    @classmethod
    def rotation(cls, k: int, q: int) -> "OrthogonalElement":
        """Rotation by 2*pi*k/q.

        Args:
            k: Numerator of the turn
            q: Denominator of the turn, positive

        Returns:
            The rotation, with its turn reduced modulo 1

        Raises:
            InvalidInput: If q is not positive
        """
        if q <= 0:
            raise InvalidInput(f"Rotation denominator {q} must be positive")
        return cls(ROTATION, Fraction(k, q))

    @classmethod
    def reflection(cls, axis: Fraction) -> "OrthogonalElement":
        """Reflection in the line through the origin at angle ``axis * pi``.

        Args:
            axis: Axis angle as a fraction of pi; 1/2 is the y-axis

        Returns:
            The reflection
        """
        return cls(REFLECTION, Fraction(axis))

    @classmethod
    def reflection_degrees(cls, axis_deg: Union[int, Fraction, str]) -> "OrthogonalElement":
        """Reflection whose mirror axis makes ``axis_deg`` degrees with the x-axis.

        Args:
            axis_deg: Axis angle in degrees, an integer or rational string

        Returns:
            The reflection
        """
        return cls(REFLECTION, Fraction(axis_deg) / 180)

    @property
    def is_rotation(self) -> bool:
        return self.kind == ROTATION

    @property
    def is_reflection(self) -> bool:
        return self.kind == REFLECTION

    @property
    def is_identity(self) -> bool:
        return self.is_rotation and self.angle == 0

    @property
    def tag(self) -> str:
        """Kind name, with the identity reported as "identity"."""
        return "identity" if self.is_identity else self.kind

    @property
    def axis_degrees(self) -> Fraction:
        """Mirror axis (or rotation turn) converted to degrees."""
        return self.angle * 180

    def compose(self, other: "OrthogonalElement") -> "OrthogonalElement":
        """Return ``self`` after ``other`` (the matrix product self @ other)."""
        if self.is_rotation and other.is_rotation:
            return OrthogonalElement(ROTATION, self.angle + other.angle)
        if self.is_rotation:
            return OrthogonalElement(REFLECTION, other.angle + self.angle)
        if other.is_rotation:
            return OrthogonalElement(REFLECTION, self.angle - other.angle)
        return OrthogonalElement(ROTATION, self.angle - other.angle)

    def __matmul__(self, other: "OrthogonalElement") -> "OrthogonalElement":
        """Alias for :meth:`compose`."""
        return self.compose(other)

    def inverse(self) -> "OrthogonalElement":
        """Group inverse.

        Returns:
            The element itself for a reflection, the opposite turn for a rotation
        """
        if self.is_reflection:
            return self
        return OrthogonalElement(ROTATION, -self.angle)

    def order(self) -> int:
        """Order in O(2).

        Returns:
            2 for a reflection, the reduced denominator of the turn for a rotation
        """
        if self.is_reflection:
            return 2
        return self.angle.denominator

    @property
    def is_exact(self) -> bool:
        """True when the matrix has rational entries we represent exactly."""
        return (4 * self.angle).denominator == 1

    def matrix(self, mode: Optional[str] = None) -> np.ndarray:
        """The 2x2 matrix.

        Args:
            mode: "rational" for Fraction entries (requires ``is_exact``),
                "float" for float64; defaults to rational when exact

        Raises:
            InvalidInput: If rational entries are requested for an inexact angle
        """
        if mode is None:
            mode = SCALAR_RATIONAL if self.is_exact else SCALAR_FLOAT
        if mode == SCALAR_RATIONAL:
            if not self.is_exact:
                raise InvalidInput(f"{self} has no exact rational matrix")
            c, s = _QUARTER_TURNS[int(4 * self.angle)]
            if self.is_rotation:
                rows = [[c, -s], [s, c]]
            else:
                rows = [[c, s], [s, -c]]
            return np.array(rows, dtype=object)
        theta = 2.0 * math.pi * float(self.angle)
        c, s = math.cos(theta), math.sin(theta)
        if self.is_rotation:
            return np.array([[c, -s], [s, c]])
        return np.array([[c, s], [s, -c]])

    def trace(self) -> Scalar:
        """Character of the natural 2D representation."""
        if self.is_reflection:
            return Fraction(0)
        return two_cos_turn(self.angle)

    def determinant(self) -> int:
        """+1 for rotations, -1 for reflections."""
        return 1 if self.is_rotation else -1

    def __str__(self) -> str:
        if self.is_identity:
            return "id"
        if self.is_rotation:
            return f"rot({self.angle.numerator}/{self.angle.denominator})"
        return f"ref({self.axis_degrees}deg)"


def point_group_label(images: Iterable[OrthogonalElement]) -> str:
    """Schoenflies label of a finite subgroup of O(2) given by its elements.

    Examples:
        >>> mirror = OrthogonalElement.reflection(Fraction(1, 2))
        >>> point_group_label([OrthogonalElement.identity(), mirror])
        'Cs'
    """
    elems = list(images)
    rotations = [e for e in elems if e.is_rotation]
    q = len(rotations)
    if len(rotations) == len(elems):
        return f"C{q}"
    if q == 1:
        return "Cs"
    return f"C{q}v"


@dataclass(frozen=True)
class PointGroupRep:
    """A faithful homomorphism tau from a permutation group into O(2).

    Attributes:
        group: The abstract group as a permutation group
        images: (element, image) pairs sorted by element
    """

    group: Subgroup
    images: Tuple[Tuple[Permutation, OrthogonalElement], ...]

    def __post_init__(self) -> None:
        table = dict(self.images)
        if set(table) != set(self.group.elements):
            raise InvalidInput("Representation must assign an image to every group element")
        object.__setattr__(self, "images", tuple(sorted(table.items())))
        for a in self.group.elements:
            for b in self.group.elements:
                if table[a * b] != table[a] @ table[b]:
                    raise InvalidInput(f"tau is not a homomorphism at ({a}, {b})")
        for g, img in table.items():
            if img.is_identity and not g.is_identity:
                raise InvalidInput(f"tau is not faithful: {g} maps to the identity")

    @classmethod
    def from_mapping(
        cls, group: Subgroup, mapping: Dict[Permutation, OrthogonalElement]
    ) -> "PointGroupRep":
        """Build a representation from an element-to-image dictionary.

        Args:
            group: Domain of tau
            mapping: Image of every element of ``group``

        Returns:
            PointGroupRep, validated as a faithful homomorphism

        Raises:
            InvalidInput: If the mapping is partial, not a homomorphism or not faithful
        """
        return cls(group, tuple(mapping.items()))

    @classmethod
    def trivial(cls, n: int) -> "PointGroupRep":
        """The representation of the trivial group on n vertices.

        Args:
            n: Number of vertices

        Returns:
            PointGroupRep sending the identity permutation to the identity of O(2)
        """
        group = Subgroup.trivial(n)
        return cls(group, ((Permutation.identity(n), OrthogonalElement.identity()),))

    @cached_property
    def table(self) -> Dict[Permutation, OrthogonalElement]:
        """Images keyed by group element."""
        return dict(self.images)

    def __call__(self, g: Permutation) -> OrthogonalElement:
        """tau(g).

        Args:
            g: Element of the group

        Returns:
            Its image in O(2)

        Raises:
            KeyError: If g is not in the group
        """
        return self.table[g]

    @property
    def order(self) -> int:
        """|Gamma|."""
        return self.group.order

    @property
    def label(self) -> str:
        """Schoenflies label of the image group."""
        return point_group_label(img for _, img in self.images)

    @property
    def is_exact(self) -> bool:
        """True when every image has an exact rational matrix."""
        return all(img.is_exact for _, img in self.images)

    def key(self) -> Tuple:
        """Sort key that is stable across runs.

        Returns:
            Tuple of (permutation images, kind, angle) in element order
        """
        return tuple((g.image, img.kind, img.angle) for g, img in self.images)

    def generator_images(self) -> List[Tuple[Permutation, OrthogonalElement]]:
        """Images of the group generators.

        Returns:
            (generator, image) pairs in generator order
        """
        return [(g, self.table[g]) for g in self.group.generators]


@dataclass(frozen=True)
class SymmetryPair:
    """A graph with a symmetry group Gamma <= Aut(G) and a faithful tau.

    Attributes:
        graph: The underlying graph
        rep: The representation tau, whose domain is Gamma
    """

    graph: Graph
    rep: PointGroupRep

    def __post_init__(self) -> None:
        if self.rep.group.n != self.graph.n:
            raise InvalidInput(
                f"Group acts on {self.rep.group.n} points but the graph has {self.graph.n} vertices"
            )
        for g in self.rep.group.elements:
            if not g.is_automorphism_of(self.graph):
                raise InvalidInput(f"{g} is not an automorphism of the graph")

    @property
    def group(self) -> Subgroup:
        """The symmetry group Gamma."""
        return self.rep.group

    @property
    def order(self) -> int:
        """|Gamma|."""
        return self.rep.order

    @property
    def label(self) -> str:
        """Schoenflies label of tau(Gamma)."""
        return self.rep.label

    @property
    def d(self) -> int:
        """Dimension of the ambient space; pairs are planar."""
        return 2

    def tau(self, g: Permutation) -> OrthogonalElement:
        """The image of a group element.

        Args:
            g: Element of Gamma

        Returns:
            tau(g) in O(2)
        """
        return self.rep(g)

    def elements(self) -> List[Tuple[Permutation, OrthogonalElement]]:
        """Every (gamma, tau(gamma)) pair, sorted by gamma.

        Returns:
            List with one entry per group element
        """
        return list(self.rep.images)

    def __str__(self) -> str:
        gens = ", ".join(f"{g} -> {self.tau(g)}" for g in self.group.generators)
        return f"{self.label}<{gens}>" if gens else f"{self.label}<id>"


@dataclass(frozen=True)
class GroupStructure:
    """Recognised isomorphism type of a small permutation group.

    Attributes:
        kind: "trivial", "cyclic", "dihedral" or "other"
        q: Order of the rotation part (|Gamma| for cyclic, |Gamma|/2 for dihedral)
        rotation_generators: Generators of the candidate rotation subgroups (index 1 or 2);
            a dihedral group of order 4 has three, every other group at most one
    """

    kind: str
    q: int
    rotation_generators: Tuple[Permutation, ...] = ()


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    elements: Tuple[Permutation, ...]

    @property
    def size(self) -> int:
        return len(self.elements)


@dataclass(frozen=True, eq=False)
class AveragingOperator:
    """The symmetric averaging projector of a pair.

    Attributes:
        pair: The symmetric pair
        matrix: Optional materialised dn x dn matrix
        mode: Scalar mode of the matrix
    """

    pair: SymmetryPair
    matrix: Optional[np.ndarray] = field(default=None)
    mode: str = SCALAR_RATIONAL


@dataclass(frozen=True)
class FilterVerdict:
    """Outcome of the degeneracy filter for one pair.

    Attributes:
        accepted: False when any rejecting rule fired
        reasons: Rejection reasons, in rule order
        advisories: Non-rejecting observations about likely edge crossings
    """

    accepted: bool
    reasons: Tuple[str, ...] = ()
    advisories: Tuple[str, ...] = ()
