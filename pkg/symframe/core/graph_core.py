"""Combinatorial layer: automorphisms, subgroups, orbits and drawing predicates."""

import logging
from typing import Dict, FrozenSet, List, Set, Tuple

import networkx as nx
import numpy as np

from symframe.errors import AutGroupTooLarge, InvalidInput
from symframe.models.framework import Configuration, CrossingReport
from symframe.models.graph import (
    Edge,
    Graph,
    Permutation,
    Subgraph,
    SubgraphOrbit,
    Subgroup,
    closure,
)
from symframe.models.symmetry import ConjugacyClass, GroupStructure
from symframe.utils.constants import AUT_GROUP_CAP

logger = logging.getLogger(__name__)

_INVARIANT_KEY = "invariant"


def automorphism_group(g: Graph, cap: int = AUT_GROUP_CAP) -> Subgroup:
    """Compute the full automorphism group Aut(G).

    Vertices are labelled by their degree and the sorted degrees of their
    neighbours; only label-preserving assignments are searched.

    Args:
        g: Input graph
        cap: Largest group order enumerated before giving up

    Returns:
        Aut(G) as a Subgroup

    Raises:
        AutGroupTooLarge: If more than ``cap`` automorphisms exist

    Examples:
        >>> automorphism_group(Graph.path(3)).order
        2
    """
    if g.n == 0:
        return Subgroup.trivial(0)

    nxg = g.to_networkx()
    for v in g.vertices:
        nbr_degrees = tuple(sorted(g.degree(w) for w in g.neighbours(v)))
        nxg.nodes[v][_INVARIANT_KEY] = (g.degree(v), nbr_degrees)

    elements = set()
    for mapping in nx.vf2pp_all_isomorphisms(nxg, nxg, node_label=_INVARIANT_KEY):
        elements.add(Permutation.from_mapping(g.n, mapping))
        if len(elements) > cap:
            raise AutGroupTooLarge(
                f"Automorphism group has more than {cap} elements; raise the cap to continue"
            )

    logger.debug("Aut(G) of order %d for n=%d, m=%d", len(elements), g.n, g.m)
    return Subgroup(g.n, frozenset(elements))


def subgroups(a: Subgroup) -> List[Subgroup]:
    """Enumerate every subgroup of a finite permutation group.

    Cyclic subgroups are formed first; larger subgroups are obtained by
    repeatedly joining a known subgroup with a cyclic one until no new
    element set appears.

    Args:
        a: The ambient group

    Returns:
        All distinct subgroups ordered by (order, sorted element images)
    """
    cyclic: Dict[FrozenSet[Permutation], Permutation] = {}
    for g in sorted(a.elements):
        elems = closure([g], a.n)
        cyclic.setdefault(elems, g)

    found: Dict[FrozenSet[Permutation], Tuple[Permutation, ...]] = {
        elems: (g,) for elems, g in cyclic.items()
    }
    frontier = list(found)
    while frontier:
        next_frontier = []
        for elems in frontier:
            gens = found[elems]
            for g in cyclic.values():
                if g in elems:
                    continue
                joined = closure(gens + (g,), a.n)
                if joined not in found:
                    found[joined] = gens + (g,)
                    next_frontier.append(joined)
        frontier = next_frontier

    groups = [Subgroup(a.n, elems) for elems in found]
    groups.sort(key=lambda h: (h.order, [p.image for p in h.sorted_elements()]))
    logger.debug("Found %d subgroups of a group of order %d", len(groups), a.order)
    return groups


def fixed_elements(p: Permutation, g: Graph) -> Tuple[FrozenSet[int], FrozenSet[Edge]]:
    """Vertices and edges fixed by a permutation.

    An edge is fixed when its endpoints are fixed or swapped.
    """
    vertices = frozenset(v for v in g.vertices if p(v) == v)
    edges = frozenset(e for e in g.edges if p.map_edge(e) == e)
    return vertices, edges


def orbit_of_subgraph(s: Subgroup, h: Subgraph) -> SubgraphOrbit:
    """Gamma-orbit of a subgraph and the disjoint-copies test for strong localisation.

    Args:
        s: The group Gamma
        h: The subgraph H

    Returns:
        SubgraphOrbit with the union, the distinct copies and whether the orbit
        is |Gamma| pairwise vertex-disjoint copies of H
    """
    copies: List[Subgraph] = []
    for p in s.sorted_elements():
        image = h.image(p)
        if image not in copies:
            copies.append(image)

    union = Subgraph(frozenset(), frozenset())
    for c in copies:
        union = union.union(c)

    disjoint = len(copies) == s.order and all(
        not (copies[i].vertices & copies[j].vertices)
        for i in range(len(copies))
        for j in range(i + 1, len(copies))
    )
    return SubgraphOrbit(union=union, copies=tuple(copies), disjoint_copies=disjoint)


def edge_and_vertex_orbits(
    s: Subgroup, g: Graph
) -> Tuple[List[FrozenSet[int]], List[FrozenSet[Edge]]]:
    """Orbit partitions of the vertex and edge sets under a group.

    Returns:
        (vertex orbits, edge orbits), each sorted by smallest member
    """
    vertex_orbits: List[FrozenSet[int]] = []
    seen_v: Set[int] = set()
    for v in g.vertices:
        if v in seen_v:
            continue
        orbit = frozenset(p(v) for p in s.elements)
        seen_v |= orbit
        vertex_orbits.append(orbit)

    edge_orbits: List[FrozenSet[Edge]] = []
    seen_e: Set[Edge] = set()
    for e in g.edges:
        if e in seen_e:
            continue
        orbit_e = frozenset(p.map_edge(e) for p in s.elements)
        seen_e |= orbit_e
        edge_orbits.append(orbit_e)

    return vertex_orbits, edge_orbits


def is_peelable_without_edge(g: Graph, d: int = 2) -> bool:
    """Check that G - e peels to nothing for every edge e.

    Peeling repeatedly removes vertices of degree at most ``d``; a graph
    peels completely iff its (d+1)-core is empty. A graph without edges is
    accepted vacuously.

    Args:
        g: Input graph
        d: Dimension

    Returns:
        True when every single-edge deletion peels to the empty graph
    """
    if d < 1:
        raise InvalidInput(f"Dimension {d} must be at least 1")
    base = g.to_networkx()
    for e in g.edges:
        h = base.copy()
        h.remove_edge(*e)
        cores = nx.core_number(h)
        if cores and max(cores.values()) > d:
            logger.debug("G - %s has a non-empty %d-core", e, d + 1)
            return False
    return True


def _orient(a: np.ndarray, b: np.ndarray, c: np.ndarray):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _sign(x) -> int:
    return int(x > 0) - int(x < 0)


def _on_segment(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> bool:
    """c collinear with a, b lies in their bounding box."""
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def count_crossings(g: Graph, c: Configuration) -> CrossingReport:
    """Count intersections between non-adjacent edge segments.

    Pairwise segment tests. Only intersections interior to both segments
    count as crossings. T-junctions, where an endpoint of one edge lies on
    the other, are reported as touchings and collinear overlaps as overlaps.

    Args:
        g: Input graph
        c: Planar configuration

    Returns:
        CrossingReport

    Raises:
        InvalidInput: If d != 2 or an edge has coincident endpoints
    """
    if c.d != 2:
        raise InvalidInput(f"Crossings need a planar configuration, got d={c.d}")
    if c.n != g.n:
        raise InvalidInput(f"Configuration has {c.n} points but the graph has {g.n} vertices")
    for i, j in g.edges:
        if all(c[i][k] == c[j][k] for k in range(2)):
            raise InvalidInput(f"Edge {(i, j)} has coincident endpoints")

    crossings: List[Tuple[Edge, Edge]] = []
    overlaps: List[Tuple[Edge, Edge]] = []
    touchings: List[Tuple[Edge, Edge]] = []
    edges = g.edges
    for x in range(len(edges)):
        a_i, a_j = edges[x]
        a, b = c[a_i], c[a_j]
        for y in range(x + 1, len(edges)):
            b_i, b_j = edges[y]
            if {a_i, a_j} & {b_i, b_j}:
                continue
            p, q = c[b_i], c[b_j]
            o1, o2 = _sign(_orient(a, b, p)), _sign(_orient(a, b, q))
            o3, o4 = _sign(_orient(p, q, a)), _sign(_orient(p, q, b))
            if o1 == o2 == o3 == o4 == 0:
                if (
                    _on_segment(a, b, p)
                    or _on_segment(a, b, q)
                    or _on_segment(p, q, a)
                    or _on_segment(p, q, b)
                ):
                    overlaps.append((edges[x], edges[y]))
                continue
            if o1 * o2 < 0 and o3 * o4 < 0:
                crossings.append((edges[x], edges[y]))
            elif o1 * o2 <= 0 and o3 * o4 <= 0:
                if (
                    (o1 == 0 and _on_segment(a, b, p))
                    or (o2 == 0 and _on_segment(a, b, q))
                    or (o3 == 0 and _on_segment(p, q, a))
                    or (o4 == 0 and _on_segment(p, q, b))
                ):
                    touchings.append((edges[x], edges[y]))

    if touchings:
        logger.debug("%d T-junctions in the drawing", len(touchings))
    return CrossingReport(
        crossings=len(crossings),
        crossing_pairs=tuple(crossings),
        overlaps=tuple(overlaps),
        touchings=tuple(touchings),
    )


class _PebbleGame:
    """The (2, 3)-pebble game on a growing directed graph."""

    def __init__(self, n: int, k: int = 2):
        self.free = {v: k for v in range(1, n + 1)}
        self.out: Dict[int, Set[int]] = {v: set() for v in range(1, n + 1)}

    def _collect(self, u: int, v: int) -> bool:
        """Move one free pebble onto ``u`` without touching ``v``."""
        seen = {u, v}
        parent: Dict[int, int] = {}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in sorted(self.out[x]):
                if y in seen:
                    continue
                seen.add(y)
                parent[y] = x
                if self.free[y] > 0:
                    self.free[y] -= 1
                    while y != u:
                        x_prev = parent[y]
                        self.out[x_prev].remove(y)
                        self.out[y].add(x_prev)
                        y = x_prev
                    self.free[u] += 1
                    return True
                stack.append(y)
        return False

    def add_edge(self, u: int, v: int) -> bool:
        """Insert the edge if it is independent; return whether it was."""
        while self.free[u] < 2:
            if not self._collect(u, v):
                return False
        while self.free[v] < 2:
            if not self._collect(v, u):
                return False
        self.free[u] -= 1
        self.out[u].add(v)
        return True


def independent_edges(g: Graph) -> List[Edge]:
    """Edges accepted by the (2, 3)-pebble game, in edge order."""
    game = _PebbleGame(g.n)
    return [e for e in g.edges if game.add_edge(*e)]


def maxwell_sparsity(g: Graph, d: int = 2) -> bool:
    """Check the planar Maxwell count m' <= 2n' - 3 on every subgraph with n' >= 2.

    Examples:
        >>> maxwell_sparsity(Graph.complete(3))
        True
        >>> maxwell_sparsity(Graph.complete(4))
        False
    """
    if d != 2:
        raise InvalidInput(f"The pebble-game count is implemented for d=2, got d={d}")
    return len(independent_edges(g)) == g.m


def conjugacy_classes(group: Subgroup) -> List[ConjugacyClass]:
    """Conjugacy classes, identity first, each represented by its smallest element."""
    classes: List[ConjugacyClass] = []
    seen: Set[Permutation] = set()
    elems = group.sorted_elements()
    for g in elems:
        if g in seen:
            continue
        cls = frozenset(h * g * h.inverse() for h in elems)
        seen |= cls
        members = tuple(sorted(cls))
        classes.append(ConjugacyClass(representative=members[0], elements=members))
    classes.sort(
        key=lambda c: (not c.representative.is_identity, c.representative.order(), c.representative)
    )
    return classes


def group_structure(group: Subgroup) -> GroupStructure:
    """Recognise trivial, cyclic and dihedral groups.

    A group of order 2q is dihedral when it has a cyclic subgroup of order q
    all of whose complement consists of involutions.
    """
    order = group.order
    if order == 1:
        return GroupStructure("trivial", 1)

    elems = group.sorted_elements()
    for g in elems:
        if g.order() == order:
            return GroupStructure("cyclic", order, (g,))

    if order % 2:
        return GroupStructure("other", 0)

    q = order // 2
    generators: List[Permutation] = []
    seen_subgroups: Set[FrozenSet[Permutation]] = set()
    for r in elems:
        if r.order() != q:
            continue
        rotations = closure([r], group.n)
        if rotations in seen_subgroups:
            continue
        seen_subgroups.add(rotations)
        if all(x.order() == 2 for x in elems if x not in rotations):
            generators.append(r)

    if generators:
        return GroupStructure("dihedral", q, tuple(generators))
    return GroupStructure("other", 0)
