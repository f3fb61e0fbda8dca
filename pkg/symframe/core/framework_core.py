"""Rigidity matrix, self-stresses, infinitesimal motions and generic counts."""

import logging
from fractions import Fraction
from typing import Optional

import numpy as np

from symframe.core import linalg
from symframe.core.graph_core import maxwell_sparsity
from symframe.errors import InvalidInput
from symframe.models.framework import (
    Configuration,
    Framework,
    GenericCounts,
    MaxwellIndex,
    MotionBasis,
    StressBasis,
)
from symframe.models.graph import Graph
from symframe.utils.constants import (
    DEFAULT_DIMENSION,
    DEFAULT_GENERIC_TRIALS,
    DEFAULT_RANK_TOL,
    DEFAULT_SEED,
    GENERIC_DENOMINATOR,
    GENERIC_NUMERATOR_BOUND,
    SCALAR_RATIONAL,
)
from symframe.utils.helpers import make_rng

logger = logging.getLogger(__name__)


def rigidity_matrix(fw: Framework) -> np.ndarray:
    """Build the rigidity matrix R(p).

    The row of edge ij holds p_i - p_j in the columns of vertex i and
    p_j - p_i in the columns of vertex j. Rows follow the lexicographic
    edge order.

    Args:
        fw: Framework (G, p)

    Returns:
        (m, d*n) array; object dtype of Fractions in rational mode

    Examples:
        >>> fw = Framework(Graph.from_edges(2, [(1, 2)]), Configuration([[0, 0], [1, 0]]))
        >>> [int(x) for x in rigidity_matrix(fw)[0]]
        [-1, 0, 1, 0]
    """
    g, d = fw.graph, fw.d
    mode = fw.config.scalar
    r = linalg.zeros((g.m, d * g.n), mode)
    for row, (i, j) in enumerate(g.edges):
        diff = fw.config[i] - fw.config[j]
        r[row, d * (i - 1) : d * i] = diff
        r[row, d * (j - 1) : d * j] = -diff
    return r


def equilibrium_residual(fw: Framework, omega: np.ndarray) -> np.ndarray:
    """Return omega^T R(p), the unbalanced force at every joint."""
    return linalg.matmul(np.asarray(omega), rigidity_matrix(fw))


def is_self_stress(fw: Framework, omega: np.ndarray, tol: float = DEFAULT_RANK_TOL) -> bool:
    """Exact check in rational mode; relative to ``tol * |omega| * |R|`` otherwise."""
    residual = equilibrium_residual(fw, omega)
    if fw.is_exact and all(isinstance(x, (Fraction, int)) for x in np.asarray(omega).flat):
        return linalg.is_zero(residual, SCALAR_RATIONAL)
    scale = max(linalg.norm(omega), 1.0) * max(linalg.norm(rigidity_matrix(fw).reshape(-1)), 1.0)
    return linalg.norm(residual) <= tol * scale


def trivial_motions(config: Configuration) -> np.ndarray:
    """Basis of the trivial infinitesimal motions realised at ``config``.

    Translations and the rotations u_i = S p_i with S skew are generated
    and reduced to an independent set, so degenerate configurations get
    the smaller trivial space they actually span.
    """
    n, d, mode = config.n, config.d, config.scalar
    one = Fraction(1) if mode == SCALAR_RATIONAL else 1.0
    candidates = []
    for k in range(d):
        t = linalg.zeros((d * n,), mode)
        t[k::d] = one
        candidates.append(t)
    for a in range(d):
        for b in range(a + 1, d):
            u = linalg.zeros((d * n,), mode)
            for i in range(n):
                u[d * i + a] = config.points[i, b]
                u[d * i + b] = -config.points[i, a]
            candidates.append(u)
    if n == 0 or not candidates:
        return linalg.zeros((0, d * n), mode)
    stacked = np.array(candidates, dtype=object if mode == SCALAR_RATIONAL else float)
    return linalg.row_basis(stacked, mode)


def self_stress_basis(fw: Framework, rel_tol: float = DEFAULT_RANK_TOL) -> StressBasis:
    """Basis of the self-stress space S(p), the left kernel of R(p).

    Args:
        fw: Framework
        rel_tol: Relative singular-value threshold for floating mode

    Returns:
        StressBasis with one stress per row
    """
    mode = fw.config.scalar
    g = fw.graph
    r = rigidity_matrix(fw)
    if g.m == 0:
        vectors = linalg.zeros((0, 0), mode)
    else:
        vectors = linalg.left_kernel(r, mode, rel_tol)
    s = vectors.shape[0]
    logger.debug("Self-stress space of dimension %d (m=%d, mode=%s)", s, g.m, mode)
    return StressBasis(
        vectors=vectors,
        edges=g.edges,
        mode=mode,
        rank=g.m - s,
        rel_tol=None if mode == SCALAR_RATIONAL else rel_tol,
    )


def motion_basis(fw: Framework, rel_tol: float = DEFAULT_RANK_TOL) -> MotionBasis:
    """Infinitesimal motions: the kernel of R(p) and its trivial part."""
    mode = fw.config.scalar
    dn = fw.d * fw.graph.n
    if fw.graph.m == 0:
        vectors = linalg.identity(dn, mode)
    else:
        vectors = linalg.kernel(rigidity_matrix(fw), mode, rel_tol)
    trivial = trivial_motions(fw.config)
    return MotionBasis(vectors=vectors, trivial=trivial, mode=mode)


def maxwell_index(g: Graph, d: int = DEFAULT_DIMENSION) -> MaxwellIndex:
    """k = d*n - m - d(d+1)/2.

    Examples:
        >>> maxwell_index(Graph.complete(4)).k
        -1
    """
    return MaxwellIndex(k=d * g.n - g.m - d * (d + 1) // 2, d=d, n=g.n, m=g.m)


def random_generic_configuration(
    g: Graph, d: int = DEFAULT_DIMENSION, seed: int = DEFAULT_SEED, trial: int = 0
) -> Configuration:
    """Seeded rational configuration drawn from a large integer box.

    Numerators are uniform in [-GENERIC_NUMERATOR_BOUND, GENERIC_NUMERATOR_BOUND]
    over the fixed denominator GENERIC_DENOMINATOR.
    """
    rng = make_rng(seed, "generic-configuration", d, trial)
    nums = rng.integers(-GENERIC_NUMERATOR_BOUND, GENERIC_NUMERATOR_BOUND + 1, size=(g.n, d))
    points = [[Fraction(int(x), GENERIC_DENOMINATOR) for x in row] for row in nums]
    return Configuration(points, scalar=SCALAR_RATIONAL, d=d)


def generic_counts(
    g: Graph,
    d: int = DEFAULT_DIMENSION,
    trials: int = DEFAULT_GENERIC_TRIALS,
    seed: int = DEFAULT_SEED,
) -> GenericCounts:
    """Generic flex and stress counts from the maximal rank over samples.

    Args:
        g: Graph
        d: Dimension
        trials: Number of rational samples
        seed: Root seed

    Returns:
        GenericCounts
    """
    if trials < 1:
        raise InvalidInput(f"trials must be at least 1, got {trials}")
    best_rank, best_trivial = -1, 0
    for trial in range(trials):
        config = random_generic_configuration(g, d, seed, trial)
        fw = Framework(g, config)
        rank = g.m - self_stress_basis(fw).s
        if rank > best_rank:
            best_rank = rank
            best_trivial = trivial_motions(config).shape[0]
    f = d * g.n - best_rank - best_trivial
    s = g.m - best_rank
    logger.debug("Generic counts f=%d s=%d (rank %d over %d trials)", f, s, best_rank, trials)
    return GenericCounts(f=f, s=s, rank=best_rank, trials=trials)


def is_generically_isostatic(
    g: Graph, seed: int = DEFAULT_SEED, trials: Optional[int] = None
) -> bool:
    """Planar generic isostaticity: the count m = 2n - 3, sparsity, and full generic rank."""
    if g.n < 2 or g.m != 2 * g.n - 3:
        return False
    if not maxwell_sparsity(g):
        return False
    counts = generic_counts(g, 2, trials or DEFAULT_GENERIC_TRIALS, seed)
    return counts.f == 0 and counts.s == 0
