"""Configuration, framework and rigidity-space models."""

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from symframe.errors import CoincidentPointsWarning, InvalidInput
from symframe.models.graph import Edge, Graph
from symframe.utils.constants import SCALAR_FLOAT, SCALAR_MODES, SCALAR_RATIONAL
from symframe.utils.helpers import parse_scalar


def _exact_entry(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, np.integer):
        return Fraction(int(x))
    if isinstance(x, np.floating):
        return Fraction(float(x))
    value = parse_scalar(x)
    return value if isinstance(value, Fraction) else Fraction(value)


def _float_entry(x: Any) -> float:
    if isinstance(x, str):
        return float(parse_scalar(x))
    return float(x)


def _as_point_array(rows: List[List[Any]], d: int, scalar: str) -> np.ndarray:
    if scalar == SCALAR_RATIONAL:
        arr = np.empty((len(rows), d), dtype=object)
        for i, row in enumerate(rows):
            for k, x in enumerate(row):
                arr[i, k] = _exact_entry(x)
        return arr
    arr = np.empty((len(rows), d), dtype=float)
    for i, row in enumerate(rows):
        for k, x in enumerate(row):
            arr[i, k] = _float_entry(x)
    return arr


class Configuration:
    """An ordered sequence of points p_1..p_n in R^d.

    Rational configurations hold ``Fraction`` entries in a numpy object
    array; floating configurations hold float64. Coincident points are
    representable (averaging can produce them) and reported on demand.

    Attributes:
        points: (n, d) array of coordinates
        scalar: "rational" or "float"
    """

    def __init__(self, points: Any, scalar: Optional[str] = None, d: Optional[int] = None):
        """Initialize a configuration.

        Args:
            points: Sequence of d-vectors or an (n, d) array
            scalar: Scalar mode; inferred from the entries when omitted
            d: Dimension, required only when there are no points

        Raises:
            InvalidInput: If the rows have different lengths or the mode is unknown
        """
        if scalar is None:
            scalar = _infer_scalar(points)
        if scalar not in SCALAR_MODES:
            raise InvalidInput(f"Unknown scalar mode {scalar!r}")
        rows = [list(p) for p in points]
        dims = {len(r) for r in rows}
        if len(dims) > 1:
            raise InvalidInput(f"Points have mixed dimensions {sorted(dims)}")
        dim = dims.pop() if dims else (d if d is not None else 2)
        if d is not None and d != dim:
            raise InvalidInput(f"Points have dimension {dim}, expected {d}")
        self.scalar = scalar
        self.points = _as_point_array(rows, dim, scalar)
        self._d = dim

    @property
    def d(self) -> int:
        return self._d

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def is_exact(self) -> bool:
        return self.scalar == SCALAR_RATIONAL

    def __getitem__(self, v: int) -> np.ndarray:
        """Point of vertex ``v`` (1-based)."""
        return self.points[v - 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return (
            self.scalar == other.scalar
            and self.points.shape == other.points.shape
            and bool(np.all(self.points == other.points))
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Configuration(n={self.n}, d={self.d}, scalar={self.scalar!r})"

    def vector(self) -> np.ndarray:
        """Flatten to the dn-vector (x_1, y_1, x_2, y_2, ...)."""
        return self.points.reshape(-1)

    @classmethod
    def from_vector(cls, vec: Sequence[Any], d: int, scalar: str) -> "Configuration":
        arr = np.asarray(vec, dtype=object if scalar == SCALAR_RATIONAL else float)
        if arr.size % d:
            raise InvalidInput(f"Vector of length {arr.size} is not a multiple of d={d}")
        return cls(arr.reshape(-1, d).tolist(), scalar=scalar, d=d)

    def to_float(self) -> "Configuration":
        if self.scalar == SCALAR_FLOAT:
            return self
        return Configuration(
            [[float(x) for x in row] for row in self.points], scalar=SCALAR_FLOAT, d=self.d
        )

    def to_rational(self) -> "Configuration":
        if self.scalar == SCALAR_RATIONAL:
            return self
        return Configuration(
            [[Fraction(float(x)) for x in row] for row in self.points],
            scalar=SCALAR_RATIONAL,
            d=self.d,
        )

    def coincident_pairs(self) -> List[Tuple[int, int]]:
        """Vertex pairs (i, j), i < j, with p_i == p_j exactly."""
        pairs = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if all(self.points[i, k] == self.points[j, k] for k in range(self.d)):
                    pairs.append((i + 1, j + 1))
        return pairs


def _infer_scalar(points: Any) -> str:
    for row in points:
        for x in row:
            if isinstance(x, (float, np.floating)):
                return SCALAR_FLOAT
    return SCALAR_RATIONAL


@dataclass(frozen=True, eq=False)
class Framework:
    """A bar-joint framework (G, p)."""

    graph: Graph
    config: Configuration

    def __post_init__(self) -> None:
        if self.config.n != self.graph.n:
            raise InvalidInput(
                f"Configuration has {self.config.n} points "
                f"but the graph has {self.graph.n} vertices"
            )

    @property
    def d(self) -> int:
        return self.config.d

    @property
    def is_exact(self) -> bool:
        return self.config.is_exact

    def check_distinct(self) -> bool:
        """Warn and return False when the configuration has coincident points."""
        pairs = self.config.coincident_pairs()
        if pairs:
            warnings.warn(
                f"Coincident points at vertex pairs {pairs}", CoincidentPointsWarning, stacklevel=2
            )
            return False
        return True


@dataclass(frozen=True, eq=False)
class StressBasis:
    """Basis of the self-stress space S(p).

    Attributes:
        vectors: (s, m) array, one self-stress per row
        edges: Edge order of the columns
        mode: Scalar mode the kernel was computed in
        rank: Rank of the rigidity matrix
        rel_tol: Singular-value threshold used in floating mode (None when exact)
    """

    vectors: np.ndarray
    edges: Tuple[Edge, ...]
    mode: str
    rank: int
    rel_tol: Optional[float] = None

    @property
    def s(self) -> int:
        return self.vectors.shape[0]

    def stress(self, k: int = 0) -> np.ndarray:
        return self.vectors[k]


@dataclass(frozen=True, eq=False)
class MotionBasis:
    """Infinitesimal motions of a framework.

    Attributes:
        vectors: (k, dn) array spanning the kernel of R(p)
        trivial: (t, dn) array, a basis of the trivial motions realised at p
        mode: Scalar mode
    """

    vectors: np.ndarray
    trivial: np.ndarray
    mode: str

    @property
    def kernel_dim(self) -> int:
        return self.vectors.shape[0]

    @property
    def trivial_dim(self) -> int:
        return self.trivial.shape[0]

    @property
    def f(self) -> int:
        """Number of independent non-trivial infinitesimal flexes."""
        return self.kernel_dim - self.trivial_dim


@dataclass(frozen=True)
class MaxwellIndex:
    """The Maxwell count k = dn - m - d(d+1)/2 (equal to f - s when p spans R^d)."""

    k: int
    d: int
    n: int
    m: int


@dataclass(frozen=True)
class GenericCounts:
    """Generic flex and stress counts of a graph.

    Attributes:
        f: Non-trivial flexes at a maximal-rank sample
        s: Self-stresses at a maximal-rank sample
        rank: Maximal rigidity-matrix rank observed
        trials: Number of samples drawn
    """

    f: int
    s: int
    rank: int
    trials: int


@dataclass(frozen=True)
class CrossingReport:
    """Pairwise segment intersections of a planar drawing.

    Attributes:
        crossings: Number of non-adjacent edge pairs meeting at a point interior to both
        crossing_pairs: Those edge pairs
        overlaps: Non-adjacent collinear edge pairs sharing at least one point
        touchings: Non-collinear non-adjacent pairs where an endpoint of one lies on the other
    """

    crossings: int
    crossing_pairs: Tuple[Tuple[Edge, Edge], ...]
    overlaps: Tuple[Tuple[Edge, Edge], ...]
    touchings: Tuple[Tuple[Edge, Edge], ...] = ()

    @property
    def is_plane(self) -> bool:
        return self.crossings == 0 and not self.overlaps and not self.touchings
