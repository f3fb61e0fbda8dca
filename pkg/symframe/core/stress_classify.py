"""Support, Gamma-localisation and extensiveness of self-stresses."""

import itertools
import logging
import math
from fractions import Fraction
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from symframe.core import linalg
from symframe.core.framework_core import self_stress_basis
from symframe.core.graph_core import edge_and_vertex_orbits, orbit_of_subgraph
from symframe.errors import InvalidInput, OrbitProductTooLarge, SymframeError
from symframe.models.framework import Framework, StressBasis
from symframe.models.graph import Edge, Graph, Subgraph, SubgraphOrbit, Subgroup
from symframe.models.stress import (
    ANTI_SYMMETRIC,
    FULLY_SYMMETRIC,
    MIXED,
    ZERO,
    StressClassification,
    StressVerdict,
)
from symframe.utils.constants import (
    DEFAULT_RANK_TOL,
    DEFAULT_SUPPORT_TOL,
    ORBIT_PRODUCT_CAP,
    SCALAR_RATIONAL,
)

logger = logging.getLogger(__name__)


def _is_exact(omega: np.ndarray) -> bool:
    return all(isinstance(x, (Fraction, int)) for x in np.asarray(omega).flat)


def _zero_threshold(omega: np.ndarray, tol: Optional[float]) -> float:
    scale = float(np.max(np.abs(np.asarray(omega, dtype=float)))) if len(omega) else 0.0
    return (DEFAULT_SUPPORT_TOL if tol is None else tol) * scale


def support(
    omega: np.ndarray, edges: Sequence[Edge], tol: Optional[float] = None
) -> FrozenSet[Edge]:
    """Edges with a non-zero stress coefficient.

    Rational stresses use exact zero tests. Floating stresses treat
    |omega_e| <= tol * max|omega| as zero (tol defaults to 1e-8).

    Examples:
        >>> sorted(support(np.array([Fraction(0), Fraction(2)], dtype=object), [(1, 2), (2, 3)]))
        [(2, 3)]
    """
    if _is_exact(omega):
        return frozenset(e for e, x in zip(edges, omega) if x != 0)
    threshold = _zero_threshold(omega, tol)
    return frozenset(e for e, x in zip(edges, omega) if abs(float(x)) > threshold)


def _support_closure(edges: FrozenSet[Edge]) -> Subgraph:
    return Subgraph.from_edges(edges)


def is_strongly_localised(
    group: Subgroup, fw: Framework, omega: np.ndarray, tol: Optional[float] = None
) -> Tuple[bool, Optional[SubgraphOrbit]]:
    """Strong localisation with H the support closure.

    True iff the Gamma-orbit of H is |Gamma| pairwise vertex-disjoint copies.
    The zero stress and the trivial group give False.

    Returns:
        (flag, orbit of H); the orbit is None for the zero stress
    """
    supp = support(omega, fw.graph.edges, tol)
    if not supp:
        return False, None
    orbit = orbit_of_subgraph(group, _support_closure(supp))
    if group.is_trivial:
        return False, orbit
    return orbit.disjoint_copies, orbit


def is_weakly_localised(
    group: Subgroup, fw: Framework, omega: np.ndarray, tol: Optional[float] = None
) -> bool:
    """True iff the support misses at least one edge of every edge orbit (False for zero)."""
    supp = support(omega, fw.graph.edges, tol)
    if not supp:
        return False
    _, edge_orbits = edge_and_vertex_orbits(group, fw.graph)
    return all(not orbit <= supp for orbit in edge_orbits)


def weakly_localised_span(
    group: Subgroup,
    fw: Framework,
    basis: Optional[StressBasis] = None,
    cap: int = ORBIT_PRODUCT_CAP,
    order_seed: Optional[int] = None,
    rel_tol: float = DEFAULT_RANK_TOL,
) -> np.ndarray:
    """Span of the weakly Gamma-localised self-stresses.

    For each selection of one edge per edge orbit, the stresses vanishing
    on the selected edges form a subspace; the span is the sum of those
    subspaces. Enumeration stops early once the sum is all of S(p).

    Args:
        group: The group Gamma
        fw: Framework
        basis: Precomputed stress basis
        cap: Largest number of selections enumerated
        order_seed: Shuffle the enumeration order (the span does not depend on it)
        rel_tol: Rank threshold in floating mode

    Returns:
        (k, m) array, a basis of the span

    Raises:
        OrbitProductTooLarge: If the number of selections exceeds ``cap``
    """
    basis = basis or self_stress_basis(fw, rel_tol)
    mode = basis.mode
    s, m = basis.s, fw.graph.m
    if s == 0:
        return linalg.zeros((0, m), mode)

    _, edge_orbits = edge_and_vertex_orbits(group, fw.graph)
    count = math.prod(len(o) for o in edge_orbits)
    if count > cap:
        raise OrbitProductTooLarge(
            f"{count} selection functions exceed the cap of {cap}; raise the cap to continue"
        )

    index = fw.graph.edge_index
    choices: List[List[int]] = [sorted(index[e] for e in orbit) for orbit in edge_orbits]
    if order_seed is not None:
        rng = np.random.default_rng(order_seed)
        choices = [list(rng.permutation(c)) for c in choices]
        rng.shuffle(choices)

    b = basis.vectors
    span = linalg.zeros((0, m), mode)
    for selection in itertools.product(*choices):
        cols = list(selection)
        constraint = np.array(b[:, cols].T)
        coeffs = linalg.kernel(constraint, mode, rel_tol)
        if coeffs.shape[0] == 0:
            continue
        stresses = linalg.matmul(coeffs, b)
        span = linalg.row_basis(np.vstack([span, stresses]), mode, rel_tol)
        if span.shape[0] == s:
            break
    logger.debug("Weakly localised span of dimension %d out of s=%d", span.shape[0], s)
    return span


def is_gamma_extensive(
    group: Subgroup,
    fw: Framework,
    omega: np.ndarray,
    span: Optional[np.ndarray] = None,
    rel_tol: float = DEFAULT_RANK_TOL,
) -> bool:
    """True iff omega lies outside the weakly localised span."""
    if span is None:
        span = weakly_localised_span(group, fw, rel_tol=rel_tol)
    mode = SCALAR_RATIONAL if _is_exact(omega) and fw.is_exact else "float"
    if mode != SCALAR_RATIONAL:
        span = np.asarray(span, dtype=float)
        omega = np.asarray(omega, dtype=float)
    return not linalg.in_row_span(np.asarray(omega), span, mode, rel_tol)


def is_extensive(
    fw: Framework, basis: Optional[StressBasis] = None, tol: Optional[float] = None
) -> Tuple[bool, Optional[np.ndarray]]:
    """Extensive self-stress: s = 1 and the stress has full support.

    Args:
        fw: Framework
        basis: Precomputed stress basis of fw
        tol: Support threshold in floating mode

    Returns:
        (flag, the stress when flagged)

    Raises:
        InvalidInput: If the basis is indexed by other edges
        SymframeError: If a flagged basis disagrees with m - rank(R) = 1
    """
    basis = basis or self_stress_basis(fw)
    if tuple(basis.edges) != tuple(fw.graph.edges):
        raise InvalidInput("Stress basis belongs to a different graph")
    if basis.s != 1:
        return False, None
    omega = basis.stress(0)
    if len(support(omega, fw.graph.edges, tol)) != fw.graph.m:
        return False, None
    if fw.graph.m - basis.rank != 1:
        raise SymframeError(
            f"Extensive stress flagged but m - rank = {fw.graph.m - basis.rank}, expected s = 1"
        )
    return True, omega


def _ratio_sign(a, b, exact: bool, threshold: float) -> Optional[int]:
    """+1 if a == b, -1 if a == -b, else None."""
    if exact:
        if a == b:
            return 1
        if a == -b:
            return -1
        return None
    if abs(float(a) - float(b)) <= threshold:
        return 1
    if abs(float(a) + float(b)) <= threshold:
        return -1
    return None


def stress_symmetry_type(
    group: Subgroup, g: Graph, omega: np.ndarray, tol: Optional[float] = None
) -> str:
    """How a stress transforms under the group's action on edges.

    "fully-symmetric" when constant on every edge orbit, "anti-symmetric"
    when omega_{gamma(e)} = chi(gamma) omega_e for a non-trivial sign
    character chi, "mixed" otherwise and "zero" for the zero stress.
    """
    exact = _is_exact(omega)
    threshold = 0.0 if exact else _zero_threshold(omega, tol)
    supp = support(omega, g.edges, tol)
    if not supp:
        return ZERO

    index = g.edge_index
    signs = {}
    for gamma in group.sorted_elements():
        sign = None
        for e in g.edges:
            a, b = omega[index[gamma.map_edge(e)]], omega[index[e]]
            r = _ratio_sign(a, b, exact, threshold)
            if r is None:
                return MIXED
            if e in supp:
                if sign is None:
                    sign = r
                elif sign != r:
                    return MIXED
        signs[gamma] = sign if sign is not None else 1

    if all(v == 1 for v in signs.values()):
        return FULLY_SYMMETRIC
    return ANTI_SYMMETRIC


def classify(
    group: Subgroup,
    fw: Framework,
    rel_tol: float = DEFAULT_RANK_TOL,
    tol: Optional[float] = None,
    cap: int = ORBIT_PRODUCT_CAP,
) -> StressClassification:
    """Run every stress predicate on a basis of S(p).

    Args:
        group: The group Gamma (the trivial group is allowed)
        fw: Framework
        rel_tol: Rank threshold in floating mode
        tol: Support threshold in floating mode
        cap: Orbit-product cap for the weakly localised span

    Returns:
        StressClassification
    """
    basis = self_stress_basis(fw, rel_tol)
    span = weakly_localised_span(group, fw, basis, cap=cap, rel_tol=rel_tol)
    verdicts = []
    for k in range(basis.s):
        omega = basis.stress(k)
        strong, witness = is_strongly_localised(group, fw, omega, tol)
        verdicts.append(
            StressVerdict(
                index=k,
                stress=omega,
                support=support(omega, fw.graph.edges, tol),
                strongly_localised=strong,
                witness=witness,
                weakly_localised=is_weakly_localised(group, fw, omega, tol),
                gamma_extensive=is_gamma_extensive(group, fw, omega, span, rel_tol),
                symmetry_type=stress_symmetry_type(group, fw.graph, omega, tol),
            )
        )
    extensive, stress = is_extensive(fw, basis, tol)
    logger.info(
        "Classified s=%d stresses; weak span %d; extensive=%s", basis.s, span.shape[0], extensive
    )
    return StressClassification(
        s=basis.s,
        verdicts=tuple(verdicts),
        weak_span=span,
        extensive=extensive,
        extensive_stress=stress,
        mode=basis.mode,
    )
