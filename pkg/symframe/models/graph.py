"""Graph, permutation, subgroup and subgraph models."""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx

from symframe.errors import InvalidInput

Edge = Tuple[int, int]


def normalise_edge(i: int, j: int) -> Edge:
    """Return the edge {i, j} as an ordered pair (min, max)."""
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """A finite simple graph on the vertices 1..n.

    Attributes:
        n: Number of vertices
        edges: Edges as (i, j) pairs with i < j, in lexicographic order
    """

    n: int
    edges: Tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidInput(f"Vertex count {self.n} is negative")
        seen = set()
        for raw in self.edges:
            if len(raw) != 2:
                raise InvalidInput(f"Edge {raw!r} does not have two endpoints")
            i, j = int(raw[0]), int(raw[1])
            if i == j:
                raise InvalidInput(f"Loop at vertex {i} is not allowed")
            for v in (i, j):
                if not 1 <= v <= self.n:
                    raise InvalidInput(f"Vertex {v} out of range 1..{self.n}")
            e = normalise_edge(i, j)
            if e in seen:
                raise InvalidInput(f"Duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph from any iterable of vertex pairs.

        Args:
            n: Number of vertices
            edges: Pairs (i, j) in any order; they are normalised and sorted

        Returns:
            Graph

        Raises:
            InvalidInput: On loops, duplicates or out-of-range vertices
        """
        return cls(n, tuple(tuple(e) for e in edges))  # type: ignore[misc]

    @classmethod
    def complete(cls, n: int) -> "Graph":
        """The complete graph K_n."""
        return cls(n, tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        """The cycle 1-2-...-n-1."""
        return cls(n, tuple(normalise_edge(i, i % n + 1) for i in range(1, n + 1)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        """The path 1-2-...-n."""
        return cls(n, tuple((i, i + 1) for i in range(1, n)))

    @property
    def m(self) -> int:
        """Number of edges."""
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def edge_index(self) -> Dict[Edge, int]:
        """Row index of each edge in the rigidity matrix."""
        return {e: k for k, e in enumerate(self.edges)}

    @cached_property
    def adjacency(self) -> Dict[int, FrozenSet[int]]:
        nbrs: Dict[int, set] = {v: set() for v in self.vertices}
        for i, j in self.edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return {v: frozenset(s) for v, s in nbrs.items()}

    def has_edge(self, i: int, j: int) -> bool:
        """Whether ij is an edge, in either orientation.

        Args:
            i: First endpoint
            j: Second endpoint

        Returns:
            True if {i, j} is an edge
        """
        return normalise_edge(i, j) in self.edge_index

    def neighbours(self, v: int) -> FrozenSet[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        """Number of neighbours of v."""
        return len(self.adjacency[v])

    def to_networkx(self) -> nx.Graph:
        """Convert to a networkx graph, keeping isolated vertices."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def remove_edge(self, edge: Edge) -> "Graph":
        """A copy without one edge.

        Args:
            edge: Edge to drop, in either orientation

        Returns:
            Graph on the same vertices
        """
        e = normalise_edge(*edge)
        return Graph(self.n, tuple(f for f in self.edges if f != e))

    def induced_edges(self, vertices: Iterable[int]) -> Tuple[Edge, ...]:
        """Edges with both endpoints in ``vertices``.

        Args:
            vertices: Vertex subset

        Returns:
            Those edges, in graph edge order
        """
        vs = set(vertices)
        return tuple(e for e in self.edges if e[0] in vs and e[1] in vs)


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of 1..n stored by its image sequence.

    ``image[i - 1]`` is the image of vertex ``i``. Composition follows
    function composition: ``(a * b)(i) == a(b(i))``.

    Examples:
        >>> g = Permutation.from_cycles(3, [(1, 3)])
        >>> g.image
        (3, 2, 1)
        >>> (g * g).is_identity
        True
    """

    image: Tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(int(x) for x in self.image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise InvalidInput(f"{image} is not a bijection on 1..{len(image)}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        """The identity on 1..n.

        Args:
            n: Number of points

        Returns:
            Permutation fixing every point
        """
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build a permutation from disjoint cycles.

        Args:
            n: Number of points
            cycles: Cycles such as (1, 3) or (1, 2, 3); unlisted points are fixed

        Returns:
            Permutation

        Raises:
            InvalidInput: If the cycles overlap so the result is not a bijection
        """
        image = list(range(1, n + 1))
        for cycle in cycles:
            for k, v in enumerate(cycle):
                image[v - 1] = cycle[(k + 1) % len(cycle)]
        return cls(tuple(image))

    @classmethod
    def from_mapping(cls, n: int, mapping: Dict[int, int]) -> "Permutation":
        """Build a permutation from a vertex-to-vertex dictionary.

        Args:
            n: Number of points
            mapping: Image of every vertex 1..n

        Returns:
            Permutation
        """
        return cls(tuple(mapping[v] for v in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition, applying ``other`` first.

        Raises:
            InvalidInput: If the permutations act on different point counts
        """
        if other.n != self.n:
            raise InvalidInput(f"Cannot compose permutations of {self.n} and {other.n} points")
        return Permutation(tuple(self.image[x - 1] for x in other.image))

    def inverse(self) -> "Permutation":
        """The inverse permutation.

        Returns:
            Permutation q with self * q the identity
        """
        inv = [0] * self.n
        for i, x in enumerate(self.image, start=1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.image, start=1))

    def order(self) -> int:
        """Smallest k >= 1 with self**k the identity.

        Returns:
            The order
        """
        p, k = self, 1
        while not p.is_identity:
            p, k = p * self, k + 1
        return k

    def map_edge(self, edge: Edge) -> Edge:
        """Image of an edge.

        Args:
            edge: Edge (i, j)

        Returns:
            The normalised edge (self(i), self(j))
        """
        return normalise_edge(self(edge[0]), self(edge[1]))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest vertex."""
        seen, out = set(), []
        for v in range(1, self.n + 1):
            if v in seen:
                continue
            cycle = [v]
            seen.add(v)
            w = self(v)
            while w != v:
                cycle.append(w)
                seen.add(w)
                w = self(w)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def is_automorphism_of(self, graph: Graph) -> bool:
        """Whether the permutation maps the edge set onto itself.

        Args:
            graph: Graph on the same number of vertices

        Returns:
            True for an automorphism
        """
        return self.n == graph.n and all(
            self.map_edge(e) in graph.edge_index for e in graph.edges
        )

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "id"
        return "".join("(" + " ".join(str(v) for v in c) + ")" for c in cycles)


def closure(generators: Iterable[Permutation], n: int) -> FrozenSet[Permutation]:
    """Elements of the group generated by ``generators`` (breadth-first)."""
    gens = [g for g in generators]
    identity = Permutation.identity(n)
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g * x
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elements)


@dataclass(frozen=True)
class Subgroup:
    """A permutation group on 1..n given by its full element set.

    Attributes:
        n: Degree of the permutations
        elements: All group elements (identity included)
    """

    n: int
    elements: FrozenSet[Permutation]

    def __post_init__(self) -> None:
        if Permutation.identity(self.n) not in self.elements:
            raise InvalidInput("Subgroup must contain the identity")
        for p in self.elements:
            if p.n != self.n:
                raise InvalidInput(f"Element {p} acts on {p.n} points, expected {self.n}")

    @classmethod
    def generated_by(cls, generators: Iterable[Permutation], n: int) -> "Subgroup":
        """The group generated by a set of permutations.

        Args:
            generators: Generating permutations
            n: Number of points

        Returns:
            Subgroup holding the full closure
        """
        gens = tuple(generators)
        return cls(n, closure(gens, n))

    @classmethod
    def trivial(cls, n: int) -> "Subgroup":
        """The group containing only the identity on 1..n."""
        return cls(n, frozenset({Permutation.identity(n)}))

    @property
    def order(self) -> int:
        """Number of elements."""
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def sorted_elements(self) -> List[Permutation]:
        """Elements in lexicographic image order (identity first)."""
        return sorted(self.elements)

    @cached_property
    def generators(self) -> Tuple[Permutation, ...]:
        """An irredundant generating set chosen greedily in element order."""
        gens: List[Permutation] = []
        span = frozenset({Permutation.identity(self.n)})
        for p in sorted(self.elements, key=lambda q: (-q.order(), q.image)):
            if p not in span:
                gens.append(p)
                span = closure(gens, self.n)
            if len(span) == self.order:
                break
        return tuple(sorted(gens))

    def is_closed(self) -> bool:
        """Whether the element set is closed under composition."""
        return all(a * b in self.elements for a in self.elements for b in self.elements)

    def __contains__(self, p: object) -> bool:
        return p in self.elements

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.generators) + ">" if self.generators else "<id>"


@dataclass(frozen=True)
class Subgraph:
    """A subgraph given by vertex and edge subsets."""

    vertices: FrozenSet[int]
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(normalise_edge(*e) for e in self.edges))
        for i, j in self.edges:
            if i not in self.vertices or j not in self.vertices:
                raise InvalidInput(f"Edge {(i, j)} has an endpoint outside the vertex subset")

    @classmethod
    def from_edges(cls, edges: Iterable[Edge]) -> "Subgraph":
        """The subgraph spanned by some edges and their endpoints.

        Args:
            edges: Edges in any orientation

        Returns:
            Subgraph
        """
        es = frozenset(normalise_edge(*e) for e in edges)
        return cls(frozenset(v for e in es for v in e), es)

    @classmethod
    def whole(cls, graph: Graph) -> "Subgraph":
        """Every vertex and edge of ``graph``."""
        return cls(frozenset(graph.vertices), frozenset(graph.edges))

    def image(self, p: Permutation) -> "Subgraph":
        """Image of the subgraph under a permutation.

        Args:
            p: Permutation of the host graph

        Returns:
            Subgraph p(H)
        """
        return Subgraph(
            frozenset(p(v) for v in self.vertices),
            frozenset(p.map_edge(e) for e in self.edges),
        )

    def union(self, other: "Subgraph") -> "Subgraph":
        """Vertex-wise and edge-wise union.

        Args:
            other: Subgraph of the same host

        Returns:
            Subgraph
        """
        return Subgraph(self.vertices | other.vertices, self.edges | other.edges)


@dataclass(frozen=True)
class SubgraphOrbit:
    """The Gamma-orbit of a subgraph H.

    Attributes:
        union: Union of all images gamma(H)
        copies: The distinct images
        disjoint_copies: True iff there are |Gamma| distinct images and they are
            pairwise vertex-disjoint
    """

    union: Subgraph
    copies: Tuple[Subgraph, ...]
    disjoint_copies: bool
