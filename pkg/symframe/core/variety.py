"""Sampling configurations on the variety of a pure-condition factor."""

import logging
from collections import Counter
from fractions import Fraction
from typing import FrozenSet, List, Optional, Tuple, Union

import numpy as np

from symframe.core.framework_core import self_stress_basis
from symframe.core.stress_classify import support
from symframe.errors import InvalidInput, NoRealPointFound
from symframe.models.framework import Configuration, Framework
from symframe.models.graph import Edge, Graph
from symframe.models.polynomial import (
    COLLINEARITY,
    CONCURRENCY,
    RESIDUAL,
    RESIDUAL_UNFACTORED,
    Factor,
    FactorProfile,
    MultiPoly,
    VarietySample,
)
from symframe.utils.constants import (
    DEFAULT_RESIDUAL_TOL,
    DEFAULT_SEED,
    GENERIC_DENOMINATOR,
    GENERIC_NUMERATOR_BOUND,
    PROFILE_TRIALS,
    SAMPLER_RETRY_CAP,
    SCALAR_FLOAT,
    SCALAR_RATIONAL,
)
from symframe.utils.helpers import make_rng

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, Fraction]


def _random_points(rng: np.random.Generator, n: int) -> List[List[Fraction]]:
    nums = rng.integers(-GENERIC_NUMERATOR_BOUND, GENERIC_NUMERATOR_BOUND + 1, size=(n, 2))
    return [[Fraction(int(x), GENERIC_DENOMINATOR) for x in row] for row in nums]


def _random_parameter(rng: np.random.Generator) -> Fraction:
    """A rational t outside {0, 1}."""
    while True:
        t = Fraction(int(rng.integers(-2000, 3001)), 1000)
        if t not in (0, 1):
            return t


def _cross(u: List[Fraction], v: List[Fraction]) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _sub(u: List[Fraction], v: List[Fraction]) -> List[Fraction]:
    return [u[0] - v[0], u[1] - v[1]]


def _place_collinear(points, triple, rng) -> bool:
    i, j, k = triple
    pi, pj = points[i - 1], points[j - 1]
    if pi == pj:
        return False
    t = _random_parameter(rng)
    points[k - 1] = [pi[0] + t * (pj[0] - pi[0]), pi[1] + t * (pj[1] - pi[1])]
    return True


def _place_concurrent(points, lines, rng) -> bool:
    (a, b), (c, d), (e, f) = lines
    pa, pb, pc, pd, pe = (points[v - 1] for v in (a, b, c, d, e))
    u, w = _sub(pb, pa), _sub(pd, pc)
    denom = _cross(u, w)
    if denom == 0:
        return False
    s = _cross(_sub(pc, pa), w) / denom
    meet = [pa[0] + s * u[0], pa[1] + s * u[1]]
    if meet == pe:
        return False
    t = _random_parameter(rng)
    points[f - 1] = [pe[0] + t * (meet[0] - pe[0]), pe[1] + t * (meet[1] - pe[1])]
    return True


def _solve_residual(
    poly: MultiPoly, points, rng, tol: float
) -> Optional[Tuple[Configuration, float, str]]:
    """Fix all but one coordinate and solve the univariate restriction."""
    variables = poly.variables
    linear = [k for k in variables if poly.degree_in(k) == 1]
    var = linear[0] if linear else variables[int(rng.integers(len(variables)))]
    coords = [x for row in points for x in row]
    coeffs = poly.restrict(coords, var)

    if len(coeffs) == 2:
        if coeffs[1] == 0:
            return None
        coords[var] = -coeffs[0] / coeffs[1]
        config = Configuration.from_vector(coords, 2, SCALAR_RATIONAL)
        return config, abs(float(poly.evaluate(config))), "linear-solve"

    if all(c == 0 for c in coeffs[1:]):
        return None
    roots = np.roots([float(c) for c in reversed(coeffs)])
    real = sorted(
        float(r.real) for r in roots if abs(r.imag) <= 1e-9 * max(1.0, abs(r))
    )
    if not real:
        return None
    values = [float(x) for x in coords]
    values[var] = real[int(rng.integers(len(real)))]
    config = Configuration.from_vector(values, 2, SCALAR_FLOAT)
    residual = abs(float(poly.evaluate(config)))
    scale = sum(abs(float(v)) for v in poly.term_values(config))
    if residual > tol * max(scale, 1.0):
        return None
    return config, residual, "root-finding"


def sample_variety(
    f: Union[Factor, MultiPoly],
    seed: int = DEFAULT_SEED,
    trial: int = 0,
    retries: int = SAMPLER_RETRY_CAP,
    tol: float = DEFAULT_RESIDUAL_TOL,
) -> VarietySample:
    """Draw a configuration on V(f).

    Collinearity factors place the third point on the line through the
    first two; concurrency factors move one endpoint of the third line so
    that it passes through the meeting point of the other two. Both are
    exact. Residual factors fix every coordinate but one at random
    rationals and solve for the last one (exactly when f is linear in it,
    by numerical root finding otherwise).

    Args:
        f: A factor, or a bare polynomial treated as a residual
        seed: Root seed
        trial: Trial index
        retries: Draws before giving up
        tol: Relative residual accepted from root finding

    Returns:
        VarietySample

    Raises:
        InvalidInput: If f is constant
        NoRealPointFound: If no real point is found within ``retries`` draws
    """
    factor = f if isinstance(f, Factor) else Factor(f, 1, RESIDUAL_UNFACTORED, RESIDUAL)
    poly = factor.poly
    if poly.is_constant:
        raise InvalidInput("Cannot sample the variety of a constant polynomial")
    rng = make_rng(seed, "variety", factor.kind, tuple(factor.vertices), trial)

    for attempt in range(1, retries + 1):
        points = _random_points(rng, poly.n)
        if factor.kind == COLLINEARITY:
            ok = _place_collinear(points, factor.vertices, rng)
            construction = "collinear"
        elif factor.kind == CONCURRENCY:
            ok = _place_concurrent(points, factor.vertices, rng)
            construction = "concurrent"
        else:
            solved = _solve_residual(poly, points, rng, tol)
            if solved is None:
                logger.debug("Residual sampling attempt %d found no real point", attempt)
                continue
            config, residual, construction = solved
            return VarietySample(config, residual, construction, seed, trial, attempt)
        if not ok:
            continue
        config = Configuration(points, scalar=SCALAR_RATIONAL, d=2)
        value = poly.evaluate(config)
        if value != 0:
            raise InvalidInput(f"Constructive sample is off the variety of {factor.describe()}")
        return VarietySample(config, 0.0, construction, seed, trial, attempt)

    raise NoRealPointFound(f"No real point on {factor.describe()} after {retries} draws")


def _stress_support(g: Graph, config: Configuration) -> Tuple[int, FrozenSet[Edge]]:
    basis = self_stress_basis(Framework(g, config))
    edges: FrozenSet[Edge] = frozenset()
    for k in range(basis.s):
        edges |= support(basis.stress(k), g.edges)
    return basis.s, edges


def factor_stress_profile(
    g: Graph, f: Factor, trials: int = PROFILE_TRIALS, seed: int = DEFAULT_SEED
) -> FactorProfile:
    """Stress dimension and support at sampled points of V(f).

    The support of a stress space is the union of the supports of a basis
    (the support of a generic member). Reports the most common
    (dimension, support) pair and whether every trial agreed.
    """
    if trials < 1:
        raise InvalidInput(f"trials must be at least 1, got {trials}")
    observed = []
    for trial in range(trials):
        sample = sample_variety(f, seed, trial)
        observed.append(_stress_support(g, sample.config))
    (dim, edges), _ = Counter(observed).most_common(1)[0]
    stable = len(set(observed)) == 1
    if not stable:
        logger.debug("Unstable profile for %s: %s", f.describe(), Counter(d for d, _ in observed))
    return FactorProfile(dim=dim, support=edges, stable=stable, trials=trials)
