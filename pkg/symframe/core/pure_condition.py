"""Pure conditions of planar isostatic graphs and their staged factorisation."""

import itertools
import logging
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

from symframe.core.framework_core import is_generically_isostatic
from symframe.errors import (
    FactorisationMismatch,
    InvalidInput,
    NotIsostatic,
    PolynomialTooLarge,
    TieDownDivisionFailed,
)
from symframe.models.framework import Configuration
from symframe.models.graph import Edge, Graph
from symframe.models.polynomial import (
    COLLINEARITY,
    CONCURRENCY,
    GEOMETRIC_CANDIDATE,
    RESIDUAL,
    RESIDUAL_UNFACTORED,
    Factor,
    FactorList,
    IrreducibilityEvidence,
    MultiPoly,
    Scalar,
    polynomial_ring,
    x_index,
    y_index,
)
from symframe.utils.constants import (
    DEFAULT_SEED,
    IRREDUCIBILITY_TRIALS,
    PURE_CONDITION_MAX_VERTICES,
)
from symframe.utils.helpers import make_rng, to_fraction

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------------
# Geometric candidates
# ----------------------------------------------------------------------------


def bracket(n: int, i: int, j: int, k: int) -> MultiPoly:
    """[i j k] = det[p_j - p_i, p_k - p_i], zero iff the three points are collinear."""
    x, y = MultiPoly.x, MultiPoly.y
    return (x(n, j) - x(n, i)) * (y(n, k) - y(n, i)) - (y(n, j) - y(n, i)) * (x(n, k) - x(n, i))


def _line(n: int, a: int, b: int) -> Tuple[MultiPoly, MultiPoly, MultiPoly]:
    """Homogeneous coordinates of the line through p_a and p_b."""
    x, y = MultiPoly.x, MultiPoly.y
    return (
        y(n, a) - y(n, b),
        x(n, b) - x(n, a),
        x(n, a) * y(n, b) - x(n, b) * y(n, a),
    )


def concurrency(n: int, l1: Edge, l2: Edge, l3: Edge) -> MultiPoly:
    """Determinant of three lines, zero iff they meet in a (possibly ideal) point."""
    (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = (_line(n, *l) for l in (l1, l2, l3))
    return a1 * (b2 * c3 - b3 * c2) - b1 * (a2 * c3 - a3 * c2) + c1 * (a2 * b3 - a3 * b2)


def _collinearity_candidates(vertices: Sequence[int]) -> Iterator[Tuple[int, int, int]]:
    return itertools.combinations(sorted(vertices), 3)


def _concurrency_candidates(
    vertices: Sequence[int], lines: Optional[Sequence[Edge]] = None
) -> Iterator[Tuple[Edge, Edge, Edge]]:
    pool = sorted(lines) if lines is not None else list(itertools.combinations(sorted(vertices), 2))
    vs = set(vertices)
    pool = [l for l in pool if l[0] in vs and l[1] in vs]
    for triple in itertools.combinations(pool, 3):
        ends = [v for l in triple for v in l]
        if len(set(ends)) == 6:
            yield triple


# ----------------------------------------------------------------------------
# Pure condition
# ----------------------------------------------------------------------------


def tie_down(g: Graph) -> Tuple[int, int]:
    """Tie-down pair (a, b): pin x_a, y_a and x_b for the first edge ab."""
    if not g.edges:
        raise InvalidInput("A tie-down needs at least one edge")
    return g.edges[0]


def symbolic_rigidity_matrix(g: Graph) -> List[List[MultiPoly]]:
    """R(x) with polynomial entries x_i - x_j, y_i - y_j."""
    n = g.n
    zero = MultiPoly.constant(n, 0)
    rows = []
    for i, j in g.edges:
        row = [zero] * (2 * n)
        for a, b in ((i, j), (j, i)):
            row[x_index(a)] = MultiPoly.x(n, a) - MultiPoly.x(n, b)
            row[y_index(a)] = MultiPoly.y(n, a) - MultiPoly.y(n, b)
        rows.append(row)
    return rows


def tie_down_factor(n: int, a: int, b: int) -> MultiPoly:
    """Extra factor introduced by pinning x_a, y_a and x_b.

    The trivial motions restricted to those three coordinates have
    determinant y_b - y_a; on K3 the tied-down determinant is exactly
    (y_b - y_a) times the collinearity bracket.
    """
    return MultiPoly.y(n, b) - MultiPoly.y(n, a)


def pure_condition(
    g: Graph,
    tie: Optional[Tuple[int, int]] = None,
    max_vertices: int = PURE_CONDITION_MAX_VERTICES,
    seed: int = DEFAULT_SEED,
) -> MultiPoly:
    """Pure condition C_G of a planar isostatic graph.

    The tied-down matrix [R(x); pins] reduces by cofactor expansion along
    the three pin rows to the square minor of R(x) without the columns
    x_a, y_a and x_b. Its determinant is computed fraction-free over
    QQ[x, y], divided exactly by the tie-down factor and normalised to a
    primitive polynomial with positive leading coefficient.

    Args:
        g: A generically isostatic graph in the plane
        tie: Tie-down pair (a, b) with ab an edge; defaults to the first edge
        max_vertices: Largest n expanded symbolically
        seed: Seed for the isostaticity check

    Returns:
        The normalised pure condition

    Raises:
        NotIsostatic: If g is not generically isostatic
        PolynomialTooLarge: If n exceeds ``max_vertices``
        TieDownDivisionFailed: If the tie-down factor does not divide exactly
    """
    if not is_generically_isostatic(g, seed):
        raise NotIsostatic(f"Graph with n={g.n}, m={g.m} is not generically isostatic")
    if g.n > max_vertices:
        raise PolynomialTooLarge(
            f"Symbolic determinant for n={g.n} exceeds the cap of {max_vertices} vertices"
        )
    a, b = tie if tie is not None else tie_down(g)
    if not g.has_edge(a, b):
        raise InvalidInput(f"Tie-down pair ({a}, {b}) is not an edge")

    n = g.n
    r = polynomial_ring(n)
    dropped = {x_index(a), y_index(a), x_index(b)}
    keep = [k for k in range(2 * n) if k not in dropped]
    rows = [[row[k].poly for k in keep] for row in symbolic_rigidity_matrix(g)]
    size = len(keep)
    det = DomainMatrix(rows, (size, size), r.to_domain()).det()
    logger.debug("Tied-down determinant has %d terms (n=%d, tie %d-%d)", len(det), n, a, b)

    quotient, remainder = MultiPoly(n, det).divide(tie_down_factor(n, a, b))
    if not remainder.is_zero:
        raise TieDownDivisionFailed(f"y{b} - y{a} does not divide the tied-down determinant")
    _, result = quotient.normalised()
    logger.info("Pure condition of degree %d with %d terms", result.total_degree, len(result.poly))
    return result


def evaluate(p: MultiPoly, config: Configuration) -> Scalar:
    """Value of a polynomial at a configuration (exact for rational input)."""
    return p.evaluate(config)


# ----------------------------------------------------------------------------
# Factorisation
# ----------------------------------------------------------------------------


def _divide_out(f: MultiPoly, candidate: MultiPoly) -> Tuple[MultiPoly, int]:
    """Divide f by candidate as often as it goes exactly."""
    count = 0
    while not f.is_constant and candidate.total_degree <= f.total_degree:
        q, rem = f.divide(candidate)
        if not rem.is_zero:
            break
        f, count = q, count + 1
    return f, count


def _plane_restriction(f: MultiPoly, rng) -> PolyElement:
    """Substitute x_k = a_k + b_k s + c_k t with small random rationals."""
    s_ring, s, t = ring("s,t", QQ, grlex)
    forms = [
        s_ring(QQ(int(rng.integers(-50, 51)), 7))
        + QQ(int(rng.integers(-50, 51)), 5) * s
        + QQ(int(rng.integers(-50, 51)), 3) * t
        for _ in range(2 * f.n)
    ]
    result = s_ring.zero
    for exp, coeff in f.poly.terms():
        term = s_ring(coeff)
        for k, e in enumerate(exp):
            if e:
                term *= forms[k] ** e
        result += term
    return result


def irreducibility_evidence(
    f: MultiPoly, trials: int = IRREDUCIBILITY_TRIALS, seed: int = DEFAULT_SEED
) -> IrreducibilityEvidence:
    """Factor random plane restrictions of f over QQ.

    A reducible f always restricts to a reducible polynomial, so a single
    reducible full-degree restriction disproves irreducibility while
    agreement over every trial is strong evidence for it.
    """
    rng = make_rng(seed, "irreducibility", f.total_degree, len(f.poly))
    degree = f.total_degree
    irreducible = 0
    for _ in range(trials):
        h = _plane_restriction(f, rng)
        h_degree = max((sum(m) for m in h.monoms()), default=0)
        if h_degree != degree:
            continue
        _, parts = h.factor_list()
        if len(parts) == 1 and parts[0][1] == 1:
            irreducible += 1
    return IrreducibilityEvidence(trials=trials, irreducible=irreducible)


def factorize(
    p: MultiPoly,
    lines: Optional[Sequence[Edge]] = None,
    irreducibility_trials: int = IRREDUCIBILITY_TRIALS,
    seed: int = DEFAULT_SEED,
) -> FactorList:
    """Staged factorisation of a polynomial in point coordinates.

    Stages: (1) content; (2) trial division by every collinearity bracket
    and then every three-line concurrency condition, each to maximal
    multiplicity; (3) square-free decomposition of what is left, which
    exposes perfect powers; (4) irreducibility evidence for each residual
    part. Residuals are a valid outcome and are labelled as such.

    Args:
        p: Polynomial to factor
        lines: Restrict concurrency candidates to these vertex pairs (e.g. the
            graph's edges); all vertex pairs when omitted
        irreducibility_trials: Plane restrictions per residual factor
        seed: Seed for the restrictions

    Returns:
        FactorList whose expansion equals ``p`` exactly

    Raises:
        FactorisationMismatch: If the factors do not multiply back to ``p``
    """
    n = p.n
    if p.is_zero:
        return FactorList(content=p.leading_coefficient, factors=())
    content, f = p.normalised()
    factors: List[Factor] = []
    vertices = f.vertices

    for i, j, k in _collinearity_candidates(vertices):
        if f.is_constant:
            break
        _, cand = bracket(n, i, j, k).normalised()
        if not set(cand.variables) <= set(f.variables):
            continue
        f, count = _divide_out(f, cand)
        if count:
            logger.debug("Bracket [%d %d %d] divides with multiplicity %d", i, j, k, count)
            factors.append(Factor(cand, count, GEOMETRIC_CANDIDATE, COLLINEARITY, (i, j, k)))

    for triple in _concurrency_candidates(f.vertices, lines):
        if f.total_degree < 4:
            break
        _, cand = concurrency(n, *triple).normalised()
        if not set(cand.variables) <= set(f.variables):
            continue
        f, count = _divide_out(f, cand)
        if count:
            logger.debug("Concurrency %s divides with multiplicity %d", triple, count)
            factors.append(Factor(cand, count, GEOMETRIC_CANDIDATE, CONCURRENCY, triple))

    # Trial division keeps f primitive up to a unit
    unit, f = f.normalised()
    content *= unit

    if not f.is_constant:
        coeff, parts = f.poly.sqf_list()
        content *= to_fraction(coeff)
        for part, mult in parts:
            unit, residual = MultiPoly(n, part).normalised()
            content *= unit**mult
            evidence = irreducibility_evidence(residual, irreducibility_trials, seed)
            factors.append(
                Factor(residual, mult, RESIDUAL_UNFACTORED, RESIDUAL, residual.vertices, evidence)
            )

    result = FactorList(content=content, factors=tuple(factors))
    if result.expand(n) != p:
        raise FactorisationMismatch("Factors do not multiply back to the input polynomial")
    logger.info(
        "Factored into %d factors (%d geometric)",
        len(factors),
        sum(1 for fac in factors if fac.provenance == GEOMETRIC_CANDIDATE),
    )
    return result
