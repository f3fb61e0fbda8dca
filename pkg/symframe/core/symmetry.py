"""Point-group representations, the (Gamma, tau) action and the averaging projector."""

import logging
import math
import warnings
from fractions import Fraction
from typing import List, Optional

import networkx as nx
import numpy as np

from symframe.core import linalg
from symframe.core.framework_core import (
    random_generic_configuration,
    self_stress_basis,
    trivial_motions,
)
from symframe.core.graph_core import fixed_elements, group_structure
from symframe.errors import ExactnessDowngradeWarning, InvalidInput
from symframe.models.framework import Configuration, Framework, GenericCounts
from symframe.models.graph import Graph, Permutation, Subgroup, closure
from symframe.models.symmetry import (
    AveragingOperator,
    FilterVerdict,
    OrthogonalElement,
    PointGroupRep,
    SymmetryPair,
)
from symframe.utils.constants import (
    DEFAULT_GENERIC_TRIALS,
    DEFAULT_RANK_TOL,
    DEFAULT_SEED,
    DEFAULT_SYMMETRY_TOL,
    SCALAR_FLOAT,
    SCALAR_RATIONAL,
)
from symframe.utils.helpers import derive_seed

logger = logging.getLogger(__name__)

REASON_ROTATION_FIXES_TWO = "rotation fixes 2 vertices"
REASON_FIXED_NOT_PATHS = "fixed subgraph not paths"
REASON_HALF_TURN_FIXES_TWO_EDGES = "half-turn fixes 2 edges"
REASON_CENTRE_ON_EDGE = "rotation-fixed vertex with half-turn-fixed edge"
ADVISORY_REFLECTION_MOVES_EDGE = "reflection maps an edge to a distinct edge"

_HALF_TURN = Fraction(1, 2)
_Y_AXIS = Fraction(1, 2)


def _powers(g: Permutation, q: int) -> List[Permutation]:
    out = [Permutation.identity(g.n)]
    for _ in range(q - 1):
        out.append(g * out[-1])
    return out


def enumerate_faithful_reps(group: Subgroup) -> List[PointGroupRep]:
    """All faithful representations into O(2), up to conjugacy in O(2).

    A cyclic group of order q maps its generator to the rotations by
    2*pi*k/q with gcd(k, q) = 1 and k <= q/2; order 2 also admits the
    reflection in the y-axis. A dihedral group of order 2q maps a rotation
    generator r to rotation by 2*pi*k/q and r^j s to the reflection with axis
    pi/2 + j*pi*k/q. Other groups have no faithful planar representation.

    Args:
        group: The abstract group Gamma

    Returns:
        List of PointGroupRep, possibly empty
    """
    structure = group_structure(group)
    n = group.n
    reps: List[PointGroupRep] = []

    if structure.kind == "trivial":
        return [PointGroupRep.trivial(n)]

    if structure.kind == "cyclic":
        q = structure.q
        powers = _powers(structure.rotation_generators[0], q)
        for k in range(1, q // 2 + 1):
            if math.gcd(k, q) != 1:
                continue
            mapping = {p: OrthogonalElement.rotation(j * k, q) for j, p in enumerate(powers)}
            reps.append(PointGroupRep.from_mapping(group, mapping))
        if q == 2:
            mapping = {
                powers[0]: OrthogonalElement.identity(),
                powers[1]: OrthogonalElement.reflection(_Y_AXIS),
            }
            reps.append(PointGroupRep.from_mapping(group, mapping))

    elif structure.kind == "dihedral":
        q = structure.q
        for r in structure.rotation_generators:
            powers = _powers(r, q)
            rotations = frozenset(powers)
            s = min(x for x in group.elements if x not in rotations)
            for k in range(1, q // 2 + 1):
                if math.gcd(k, q) != 1:
                    continue
                mapping = {}
                for j, p in enumerate(powers):
                    mapping[p] = OrthogonalElement.rotation(j * k, q)
                    mapping[p * s] = OrthogonalElement.reflection(_Y_AXIS + Fraction(j * k, q))
                reps.append(PointGroupRep.from_mapping(group, mapping))

    logger.debug(
        "%d faithful reps for a %s group of order %d", len(reps), structure.kind, group.order
    )
    return reps


def working_mode(pair: SymmetryPair, config: Configuration, warn: bool = True) -> str:
    """Scalar mode for combining ``config`` with tau.

    Rational input stays rational only when every tau(gamma) has an exact
    matrix; otherwise it is downgraded to floating mode.
    """
    if config.scalar == SCALAR_FLOAT:
        return SCALAR_FLOAT
    if pair.rep.is_exact:
        return SCALAR_RATIONAL
    if warn:
        warnings.warn(
            f"{pair.label} has irrational matrix entries; continuing in floating mode",
            ExactnessDowngradeWarning,
            stacklevel=3,
        )
    return SCALAR_FLOAT


def _points(config: Configuration, mode: str) -> np.ndarray:
    return config.points if config.scalar == mode else config.to_float().points


def _check_lengths(pair: SymmetryPair, p: Configuration) -> None:
    if p.n != pair.graph.n:
        raise InvalidInput(f"Configuration has {p.n} points but the graph has {pair.graph.n}")
    if p.d != 2:
        raise InvalidInput(f"Planar symmetry needs d=2, got d={p.d}")


def act(
    pair: SymmetryPair, gamma: Permutation, p: Configuration, mode: Optional[str] = None
) -> Configuration:
    """The action (gamma . p)_i = tau(gamma^-1) p_{gamma(i)}."""
    _check_lengths(pair, p)
    mode = mode or working_mode(pair, p)
    pts = _points(p, mode)
    matrix = pair.tau(gamma.inverse()).matrix(mode)
    idx = [gamma(i) - 1 for i in range(1, p.n + 1)]
    moved = np.dot(pts[idx], matrix.T) if p.n else pts
    return Configuration(moved.tolist(), scalar=mode, d=2)


def average(pair: SymmetryPair, p: Configuration, mode: Optional[str] = None) -> Configuration:
    """The symmetric average Ap = (1/|Gamma|) sum_gamma gamma . p.

    Examples:
        >>> pair = SymmetryPair(Graph.path(2), PointGroupRep.trivial(2))
        >>> average(pair, Configuration([[0, 0], [1, 0]])).points.tolist()
        [[Fraction(0, 1), Fraction(0, 1)], [Fraction(1, 1), Fraction(0, 1)]]
    """
    _check_lengths(pair, p)
    mode = mode or working_mode(pair, p)
    pts = _points(p, mode)
    total = linalg.zeros((p.n, 2), mode)
    for gamma, _ in pair.elements():
        matrix = pair.tau(gamma.inverse()).matrix(mode)
        idx = [gamma(i) - 1 for i in range(1, p.n + 1)]
        if p.n:
            total = total + np.dot(pts[idx], matrix.T)
    scale = Fraction(1, pair.order) if mode == SCALAR_RATIONAL else 1.0 / pair.order
    return Configuration((total * scale).tolist(), scalar=mode, d=2)


def averaging_matrix(pair: SymmetryPair, mode: Optional[str] = None) -> np.ndarray:
    """Materialise A as a 2n x 2n matrix acting on (x_1, y_1, x_2, ...).

    Block (gamma(j), j) accumulates tau(gamma) / |Gamma|.
    """
    if mode is None:
        mode = SCALAR_RATIONAL if pair.rep.is_exact else SCALAR_FLOAT
    n = pair.graph.n
    a = linalg.zeros((2 * n, 2 * n), mode)
    weight = Fraction(1, pair.order) if mode == SCALAR_RATIONAL else 1.0 / pair.order
    for gamma, img in pair.elements():
        block = img.matrix(mode) * weight
        for j in range(1, n + 1):
            i = gamma(j)
            a[2 * (i - 1) : 2 * i, 2 * (j - 1) : 2 * j] += block
    return a


def averaging_operator(pair: SymmetryPair, materialise: bool = True) -> AveragingOperator:
    mode = SCALAR_RATIONAL if pair.rep.is_exact else SCALAR_FLOAT
    matrix = averaging_matrix(pair, mode) if materialise else None
    return AveragingOperator(pair=pair, matrix=matrix, mode=mode)


def is_symmetric(
    pair: SymmetryPair, p: Configuration, tol: float = DEFAULT_SYMMETRY_TOL
) -> bool:
    """Check tau(gamma) p_i = p_{gamma(i)} on the generators of Gamma.

    Exact in rational mode with an exact tau; otherwise within
    ``tol * max(1, max |p|)``.
    """
    _check_lengths(pair, p)
    mode = working_mode(pair, p, warn=False)
    pts = _points(p, mode)
    scale = max(1.0, float(np.max(np.abs(pts.astype(float))))) if p.n else 1.0
    for gamma in pair.group.generators:
        matrix = pair.tau(gamma).matrix(mode)
        for i in range(1, p.n + 1):
            diff = np.dot(matrix, pts[i - 1]) - pts[gamma(i) - 1]
            if mode == SCALAR_RATIONAL:
                if not linalg.is_zero(diff, mode):
                    return False
            elif np.max(np.abs(diff.astype(float))) > tol * scale:
                return False
    return True


def random_symmetric_configuration(
    pair: SymmetryPair, seed: int = DEFAULT_SEED, trial: int = 0
) -> Configuration:
    """Average of a seeded random rational configuration.

    The result is rational when tau is exact and floating otherwise.
    """
    base = random_generic_configuration(
        pair.graph, 2, derive_seed(seed, "symmetric-configuration"), trial
    )
    mode = SCALAR_RATIONAL if pair.rep.is_exact else SCALAR_FLOAT
    return average(pair, base, mode=mode)


def symmetric_generic_counts(
    pair: SymmetryPair,
    trials: int = DEFAULT_GENERIC_TRIALS,
    seed: int = DEFAULT_SEED,
    rel_tol: float = DEFAULT_RANK_TOL,
) -> GenericCounts:
    """Flex and stress counts at (Gamma, tau)-generic configurations."""
    if trials < 1:
        raise InvalidInput(f"trials must be at least 1, got {trials}")
    g = pair.graph
    best_rank, best_trivial = -1, 0
    for trial in range(trials):
        config = random_symmetric_configuration(pair, seed, trial)
        rank = self_stress_basis(Framework(g, config), rel_tol).rank
        if rank > best_rank:
            best_rank = rank
            best_trivial = trivial_motions(config).shape[0]
    return GenericCounts(
        f=2 * g.n - best_rank - best_trivial, s=g.m - best_rank, rank=best_rank, trials=trials
    )


def _is_path_forest(g: Graph, vertices) -> bool:
    sub = g.to_networkx().subgraph(vertices)
    if sub.number_of_nodes() == 0:
        return True
    return nx.is_forest(sub) and max(dict(sub.degree()).values()) <= 2


def degeneracy_filter(pair: SymmetryPair) -> FilterVerdict:
    """Reject pairs that force coincident points or obvious edge crossings.

    Rejects when a non-trivial rotation fixes two vertices, when the
    vertices fixed by a reflection do not induce a disjoint union of paths,
    when a half-turn fixes two edges, or when a rotation fixes a vertex
    while a half-turn fixes an edge. A reflection mapping some edge to a
    different edge is reported as an advisory only.

    Args:
        pair: The pair (Gamma, tau) on its graph

    Returns:
        FilterVerdict
    """
    g = pair.graph
    reasons: List[str] = []
    advisories: List[str] = []
    rotation_fixes_vertex = False
    half_turn_fixes_edge = False

    for gamma, img in pair.elements():
        if img.is_identity:
            continue
        fixed_v, fixed_e = fixed_elements(gamma, g)
        if img.is_rotation:
            if len(fixed_v) >= 2 and REASON_ROTATION_FIXES_TWO not in reasons:
                reasons.append(REASON_ROTATION_FIXES_TWO)
            rotation_fixes_vertex = rotation_fixes_vertex or bool(fixed_v)
            if img.angle == _HALF_TURN:
                if len(fixed_e) >= 2 and REASON_HALF_TURN_FIXES_TWO_EDGES not in reasons:
                    reasons.append(REASON_HALF_TURN_FIXES_TWO_EDGES)
                half_turn_fixes_edge = half_turn_fixes_edge or bool(fixed_e)
        else:
            if not _is_path_forest(g, fixed_v) and REASON_FIXED_NOT_PATHS not in reasons:
                reasons.append(REASON_FIXED_NOT_PATHS)
            if len(fixed_e) < g.m and ADVISORY_REFLECTION_MOVES_EDGE not in advisories:
                advisories.append(ADVISORY_REFLECTION_MOVES_EDGE)

    if rotation_fixes_vertex and half_turn_fixes_edge:
        reasons.append(REASON_CENTRE_ON_EDGE)

    logger.debug("Filter %s: reasons=%s advisories=%s", pair, reasons, advisories)
    return FilterVerdict(accepted=not reasons, reasons=tuple(reasons), advisories=tuple(advisories))


def pair_from_generators(
    graph: Graph, generators: List[Permutation], images: List[OrthogonalElement]
) -> SymmetryPair:
    """Extend generator images to a representation by breadth-first closure.

    Raises:
        InvalidInput: If the images are inconsistent with the group relations
            or the representation is not faithful
    """
    if len(generators) != len(images):
        raise InvalidInput("Need one image per generator")
    n = graph.n
    identity = Permutation.identity(n)
    table = {identity: OrthogonalElement.identity()}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, img in zip(generators, images):
                y = g * x
                value = img @ table[x]
                if y in table:
                    if table[y] != value:
                        raise InvalidInput(f"Images are inconsistent at {y}: {table[y]} vs {value}")
                    continue
                table[y] = value
                nxt.append(y)
        frontier = nxt
    group = Subgroup(n, closure(generators, n))
    return SymmetryPair(graph, PointGroupRep.from_mapping(group, table))
