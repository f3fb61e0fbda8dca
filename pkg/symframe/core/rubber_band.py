"""Force-density (rubber-band) construction of frameworks with a self-stress."""

import itertools
import logging
import warnings
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from symframe.core import linalg
from symframe.core.framework_core import is_self_stress, self_stress_basis
from symframe.errors import (
    Infeasible,
    InvalidInput,
    NotASelfStress,
    PlanarityWarning,
    SingularSystem,
)
from symframe.models.framework import Configuration, Framework
from symframe.models.graph import Edge, Graph
from symframe.models.statics import RubberBandProblem, RubberBandResult
from symframe.utils.constants import (
    DEFAULT_RANK_TOL,
    DEFAULT_SEED,
    SAMPLER_RETRY_CAP,
    SCALAR_FLOAT,
    SCALAR_RATIONAL,
    WEIGHT_DENOMINATOR,
    WEIGHT_MAX,
    WEIGHT_MIN,
)
from symframe.utils.helpers import derive_seed, make_rng

logger = logging.getLogger(__name__)


def choose_boundary(g: Graph, d: int = 2) -> Optional[Tuple[int, ...]]:
    """First (d+1)-clique in lexicographic vertex order, or None with a warning."""
    for vs in itertools.combinations(g.vertices, d + 1):
        if all(g.has_edge(a, b) for a, b in itertools.combinations(vs, 2)):
            return vs
    warnings.warn(
        f"No K_{d + 1} in the graph; boundary feasibility is not guaranteed",
        PlanarityWarning,
        stacklevel=2,
    )
    return None


def default_boundary_points(
    boundary: Sequence[int], d: int = 2
) -> Dict[int, Tuple[Fraction, ...]]:
    """Place the boundary at the origin and 10 e_k (an affinely spanning simplex)."""
    points = {}
    for k, v in enumerate(boundary):
        p = [Fraction(0)] * d
        if k:
            p[k - 1] = Fraction(10)
        points[v] = tuple(p)
    return points


def random_weights(
    g: Graph, boundary: Sequence[int], seed: int = DEFAULT_SEED, mixed_sign: bool = False
) -> Dict[Edge, Fraction]:
    """Rational weights in [WEIGHT_MIN, WEIGHT_MAX] on every edge with an interior endpoint.

    With ``mixed_sign`` each weight gets an independent random sign.
    """
    rng = make_rng(seed, "rubber-band-weights", tuple(boundary), mixed_sign)
    b = set(boundary)
    weights = {}
    for e in g.edges:
        if e[0] in b and e[1] in b:
            continue
        w = Fraction(
            int(rng.integers(WEIGHT_MIN * WEIGHT_DENOMINATOR, WEIGHT_MAX * WEIGHT_DENOMINATOR + 1)),
            WEIGHT_DENOMINATOR,
        )
        if mixed_sign and rng.integers(2):
            w = -w
        weights[e] = w
    return weights


def _mode(pr: RubberBandProblem) -> str:
    values = list(pr.weights.values()) + [x for p in pr.boundary_points.values() for x in p]
    if all(isinstance(x, (Fraction, int)) for x in values):
        return SCALAR_RATIONAL
    return SCALAR_FLOAT


def _scalar(x, mode: str):
    return Fraction(x) if mode == SCALAR_RATIONAL else float(x)


def check_problem(pr: RubberBandProblem) -> None:
    """Validate general position and warn when the guarantees do not apply.

    Raises:
        InvalidInput: If the boundary placement does not affinely span R^d
    """
    mode = _mode(pr)
    base = pr.boundary_points[pr.boundary[0]]
    diffs = np.array(
        [
            [_scalar(a, mode) - _scalar(b, mode) for a, b in zip(pr.boundary_points[v], base)]
            for v in pr.boundary[1:]
        ],
        dtype=object if mode == SCALAR_RATIONAL else float,
    )
    if linalg.rank(diffs, mode) < pr.d:
        raise InvalidInput(f"Boundary placement of {pr.boundary} does not affinely span R^{pr.d}")
    g = pr.graph
    if g.n > pr.d + 1 and nx.node_connectivity(g.to_networkx()) < pr.d + 1:
        warnings.warn(
            f"Graph is not {pr.d + 1}-connected; the interior solve may be singular",
            PlanarityWarning,
            stacklevel=3,
        )
    if len(pr.boundary_edges) < pr.d * (pr.d + 1) // 2:
        warnings.warn(
            f"Boundary {pr.boundary} does not induce K_{pr.d + 1}",
            PlanarityWarning,
            stacklevel=3,
        )


def solve_interior(pr: RubberBandProblem) -> Configuration:
    """Place every interior vertex at the weighted equilibrium of its neighbours.

    Solves sum_j w_ij (p_i - p_j) = 0 for each interior i with the
    boundary fixed; exact in rational mode.

    Raises:
        SingularSystem: If the equilibrium system has no unique solution
    """
    check_problem(pr)
    mode = _mode(pr)
    d = pr.d
    interior = pr.interior
    index = {v: k for k, v in enumerate(interior)}
    size = len(interior)
    lap = linalg.zeros((size, size), mode)
    rhs = linalg.zeros((size, d), mode)
    for (i, j), w in pr.weights.items():
        w = _scalar(w, mode)
        for a, b in ((i, j), (j, i)):
            if a not in index:
                continue
            lap[index[a], index[a]] += w
            if b in index:
                lap[index[a], index[b]] -= w
            else:
                for k in range(d):
                    rhs[index[a], k] += w * _scalar(pr.boundary_points[b][k], mode)

    solution = linalg.zeros((size, d), mode)
    for k in range(d):
        try:
            x, _, unique = linalg.solve(lap, rhs[:, k], mode)
        except Infeasible as exc:
            raise SingularSystem(
                "Interior equilibrium system is singular and inconsistent"
            ) from exc
        if not unique:
            raise SingularSystem("Interior equilibrium system is singular")
        solution[:, k] = x

    points = []
    for v in pr.graph.vertices:
        if v in index:
            points.append(list(solution[index[v]]))
        else:
            points.append([_scalar(x, mode) for x in pr.boundary_points[v]])
    logger.debug("Solved %d interior positions in %s mode", size, mode)
    return Configuration(points, scalar=mode, d=d)


def solve_boundary_stress(
    pr: RubberBandProblem, config: Configuration
) -> Tuple[Dict[Edge, object], bool]:
    """Coefficients on the boundary-induced edges balancing the interior pull.

    Returns:
        (coefficient per boundary edge, whether they are unique)

    Raises:
        Infeasible: If no boundary coefficients balance the load (carries the residual)
    """
    mode = config.scalar
    d = pr.d
    bedges = pr.boundary_edges
    col = {e: k for k, e in enumerate(bedges)}
    row = {v: k for k, v in enumerate(pr.boundary)}
    a = linalg.zeros((d * len(pr.boundary), len(bedges)), mode)
    b = linalg.zeros((d * len(pr.boundary),), mode)
    for (i, j) in pr.graph.edges:
        for u, v in ((i, j), (j, i)):
            if u not in row:
                continue
            diff = config[u] - config[v]
            for k in range(d):
                r = d * row[u] + k
                if (i, j) in col:
                    a[r, col[(i, j)]] += diff[k]
                else:
                    b[r] -= _scalar(pr.weights[(i, j)], mode) * diff[k]
    x, residual, unique = linalg.solve(a, b, mode)
    logger.debug(
        "Boundary stress on %d edges (residual %.3e, unique=%s)", len(bedges), residual, unique
    )
    return {e: x[col[e]] for e in bedges}, unique


def _solve_random(
    g: Graph,
    boundary: Tuple[int, ...],
    boundary_points: Dict[int, Tuple],
    seed: int,
    d: int,
    mixed_sign: bool,
) -> Tuple[RubberBandProblem, Configuration]:
    weights = random_weights(g, boundary, seed, mixed_sign=mixed_sign)
    pr = RubberBandProblem(g, boundary, boundary_points, weights, d)
    if not mixed_sign:
        return pr, solve_interior(pr)
    for attempt in range(1, SAMPLER_RETRY_CAP + 1):
        try:
            return pr, solve_interior(pr)
        except SingularSystem:
            if attempt == SAMPLER_RETRY_CAP:
                raise
            logger.info("Singular mixed-sign draw %d of %d; redrawing", attempt, SAMPLER_RETRY_CAP)
            weights = random_weights(
                g, boundary, derive_seed(seed, "rubber-band-retry", attempt), mixed_sign=True
            )
            pr = RubberBandProblem(g, boundary, boundary_points, weights, d)
    raise SingularSystem("Interior equilibrium system is singular")


def algorithm3(
    g: Graph,
    boundary: Sequence[int],
    boundary_points: Optional[Dict[int, Tuple]] = None,
    weights: Optional[Dict[Edge, object]] = None,
    seed: int = DEFAULT_SEED,
    d: int = 2,
    rel_tol: float = DEFAULT_RANK_TOL,
    mixed_sign: bool = False,
) -> RubberBandResult:
    """Rubber-band a framework into equilibrium and close it with boundary stresses.

    Args:
        g: Graph
        boundary: d+1 boundary vertices
        boundary_points: Boundary positions; an affinely spanning simplex when omitted
        weights: Interior weights; seeded positive rationals when omitted
        seed: Root seed for default weights
        d: Dimension
        rel_tol: Rank threshold in floating mode
        mixed_sign: Draw default weights with random signs; a singular draw is redrawn
            under a derived seed up to SAMPLER_RETRY_CAP times

    Returns:
        RubberBandResult with the configuration and its self-stress

    Raises:
        SingularSystem: If the interior system is singular (after every redraw)
        Infeasible: If the boundary stresses cannot balance the interior
        NotASelfStress: If the assembled stress fails equilibrium
    """
    boundary = tuple(boundary)
    if boundary_points is None:
        boundary_points = default_boundary_points(boundary, d)
    if weights is not None:
        pr = RubberBandProblem(g, boundary, boundary_points, weights, d)
        config = solve_interior(pr)
    else:
        pr, config = _solve_random(g, boundary, boundary_points, seed, d, mixed_sign)
    bstress, unique = solve_boundary_stress(pr, config)

    mode = config.scalar
    omega = linalg.zeros((g.m,), mode)
    for k, e in enumerate(g.edges):
        omega[k] = bstress[e] if e in bstress else _scalar(pr.weights[e], mode)
    fw = Framework(g, config)
    if not is_self_stress(fw, omega, rel_tol):
        raise NotASelfStress("Assembled rubber-band stress is not in equilibrium")
    s = self_stress_basis(fw, rel_tol).s
    logger.info("Rubber-band framework with s=%d (boundary %s)", s, boundary)
    return RubberBandResult(config=config, stress=omega, s=s, boundary_unique=unique)
