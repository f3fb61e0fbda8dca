"""Rubber-band problems, lifted frameworks, loads and error budgets."""

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from symframe.errors import InvalidInput
from symframe.models.framework import Configuration
from symframe.models.graph import Edge, Graph, normalise_edge
from symframe.utils.helpers import parse_scalar


@dataclass(frozen=True, eq=False)
class RubberBandProblem:
    """Boundary placement and interior weights for a force-density solve.

    Attributes:
        graph: The graph
        boundary: The d+1 boundary vertices
        boundary_points: Position of each boundary vertex
        weights: Stress coefficient of every edge with an interior endpoint
        d: Dimension
    """

    graph: Graph
    boundary: Tuple[int, ...]
    boundary_points: Dict[int, Tuple]
    weights: Dict[Edge, object]
    d: int = 2

    def __post_init__(self) -> None:
        g = self.graph
        if len(self.boundary) != self.d + 1 or len(set(self.boundary)) != self.d + 1:
            raise InvalidInput(
                f"Boundary {self.boundary} must have {self.d + 1} distinct vertices"
            )
        for v in self.boundary:
            if not 1 <= v <= g.n:
                raise InvalidInput(f"Boundary vertex {v} out of range 1..{g.n}")
            point = self.boundary_points.get(v)
            if point is None or len(point) != self.d:
                raise InvalidInput(f"Boundary vertex {v} needs a {self.d}-dimensional position")
        weights = {normalise_edge(*e): w for e, w in self.weights.items()}
        needed = set(self.interior_edges)
        if set(weights) != needed:
            missing = sorted(needed - set(weights))
            extra = sorted(set(weights) - needed)
            raise InvalidInput(f"Interior weights mismatch: missing {missing}, unexpected {extra}")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "boundary", tuple(sorted(self.boundary)))

    @property
    def interior(self) -> Tuple[int, ...]:
        b = set(self.boundary)
        return tuple(v for v in self.graph.vertices if v not in b)

    @property
    def boundary_edges(self) -> Tuple[Edge, ...]:
        return self.graph.induced_edges(self.boundary)

    @property
    def interior_edges(self) -> Tuple[Edge, ...]:
        b = set(self.boundary)
        return tuple(e for e in self.graph.edges if not (e[0] in b and e[1] in b))


@dataclass(frozen=True, eq=False)
class RubberBandResult:
    """Output of a rubber-band solve: a framework in equilibrium.

    Attributes:
        config: All vertex positions
        stress: Coefficients in graph edge order
        s: Dimension of the self-stress space at ``config``
        boundary_unique: Whether the boundary coefficients were determined uniquely
    """

    config: Configuration
    stress: np.ndarray
    s: int
    boundary_unique: bool

    @property
    def full_support(self) -> bool:
        return all(x != 0 for x in self.stress)

    @property
    def extensive(self) -> bool:
        return self.s == 1 and self.full_support


@dataclass(frozen=True, eq=False)
class LiftedFramework:
    """A framework in R^3 over a planar graph, optionally with its faces.

    Attributes:
        graph: The graph
        config: Points in R^3
        faces: Vertex cycles of the faces when produced by lifting
        outer_face: Index of the outer face in ``faces``
    """

    graph: Graph
    config: Configuration
    faces: Optional[Tuple[Tuple[int, ...], ...]] = None
    outer_face: Optional[int] = None

    def __post_init__(self) -> None:
        if self.config.d != 3:
            raise InvalidInput(f"A lifted framework lives in R^3, got d={self.config.d}")
        if self.config.n != self.graph.n:
            raise InvalidInput(
                f"Configuration has {self.config.n} points "
                f"but the graph has {self.graph.n} vertices"
            )

    @property
    def heights(self) -> np.ndarray:
        return self.config.points[:, 2]


@dataclass(frozen=True, eq=False)
class LoadVector:
    """A force f_i in R^3 at every vertex."""

    values: np.ndarray

    def __post_init__(self) -> None:
        if self.values.ndim != 2 or self.values.shape[1] != 3:
            raise InvalidInput(f"Loads must be an (n, 3) array, got shape {self.values.shape}")

    @classmethod
    def vertical(cls, betas: Sequence) -> "LoadVector":
        """f_i = beta_i e_3."""
        vals = np.empty((len(betas), 3), dtype=object)
        for i, beta in enumerate(betas):
            b = parse_scalar(beta) if isinstance(beta, str) else beta
            zero = 0.0 if isinstance(b, float) else 0 * b
            vals[i] = (zero, zero, b)
        return cls(vals)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def is_vertical(self) -> bool:
        return all(x == 0 for x in self.values[:, :2].flat)

    def vector(self) -> np.ndarray:
        return self.values.reshape(-1)


@dataclass(frozen=True, eq=False)
class ProjectionStress:
    """Axial forces resolving a vertical load and the projection certificate.

    Attributes:
        stress: omega with omega^T R(p~) = f^T
        residual: Norm of omega^T R(p~) - f^T
        projected_residual: Norm of omega^T R(p), zero for a self-stress of the projection
    """

    stress: np.ndarray
    residual: float
    projected_residual: float


@dataclass(frozen=True)
class Resolvability:
    """Which vertical loads a lifted framework resolves through projection stresses.

    Attributes:
        feasible: One flag per load
        resolved_dim: Dimension of the resolvable vertical loads modulo trivial motions
        stress_dim: Dimension of the projection's self-stress space
    """

    feasible: Tuple[bool, ...]
    resolved_dim: int
    stress_dim: int


@dataclass(frozen=True)
class ErrorBudget:
    """Fabrication-error bound for a resolved load.

    Attributes:
        m: Number of edges
        omega_norm: ||omega||
        eps: Load tolerance (when given)
        diameter_bound: eps / (2 sqrt(m) ||omega||)
        diameter: diam(e) of the perturbation
        residual: Observed ||omega^T R(p~ + e) - f^T||
        residual_bound: 2 sqrt(m) diam(e) ||omega||
    """

    m: int
    omega_norm: float
    diameter: float
    residual: float
    residual_bound: float
    eps: Optional[float] = None
    diameter_bound: Optional[float] = None
    notes: Tuple[str, ...] = field(default=())

    @property
    def holds(self) -> bool:
        return self.residual <= self.residual_bound * (1 + 1e-12) + 1e-300
