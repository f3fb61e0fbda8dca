"""Sparse rational polynomials in the coordinates of a planar configuration."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing, ring

from symframe.errors import InvalidInput
from symframe.models.framework import Configuration
from symframe.models.graph import Edge
from symframe.models.symmetry import SymmetryPair
from symframe.utils.helpers import to_fraction

Monomial = Tuple[int, ...]
Scalar = Union[Fraction, float]

GEOMETRIC_CANDIDATE = "geometric-candidate"
RESIDUAL_UNFACTORED = "residual-unfactored"

COLLINEARITY = "collinearity"
CONCURRENCY = "concurrency"
RESIDUAL = "residual"


def variable_names(n: int) -> List[str]:
    """Names x1, y1, x2, y2, ... in coordinate-vector order."""
    names = []
    for v in range(1, n + 1):
        names += [f"x{v}", f"y{v}"]
    return names


@lru_cache(maxsize=None)
def polynomial_ring(n: int) -> PolyRing:
    """QQ[x1, y1, ..., xn, yn] with graded lexicographic order."""
    if n < 1:
        raise InvalidInput(f"A coordinate ring needs at least one vertex, got {n}")
    r, *_ = ring(",".join(variable_names(n)), QQ, grlex)
    return r


def x_index(v: int) -> int:
    return 2 * (v - 1)


def y_index(v: int) -> int:
    return 2 * (v - 1) + 1


class MultiPoly:
    """A polynomial in the 2n coordinates of n planar points.

    Wraps a sympy ``PolyElement`` of ``polynomial_ring(n)``. Terms are kept
    sparse with no zero coefficients; equality and hashing use the
    canonical grlex term order.

    Attributes:
        n: Number of vertices
        poly: The underlying sympy ring element
    """

    __slots__ = ("n", "poly")

    def __init__(self, n: int, poly: PolyElement):
        self.n = n
        self.poly = poly

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[Tuple[Sequence[int], Scalar]]) -> "MultiPoly":
        """Build from (exponent vector, coefficient) pairs; zero coefficients are dropped.

        Raises:
            InvalidInput: If an exponent vector has the wrong length or a negative entry
        """
        r = polynomial_ring(n)
        data = {}
        for exp, coeff in terms:
            exp = tuple(int(e) for e in exp)
            if len(exp) != 2 * n or min(exp, default=0) < 0:
                raise InvalidInput(f"Exponent {exp} does not fit {2 * n} variables")
            c = to_fraction(coeff)
            if c:
                data[exp] = data.get(exp, Fraction(0)) + c
        coeffs = {e: QQ(c.numerator, c.denominator) for e, c in data.items() if c}
        return cls(n, r.from_dict(coeffs))

    @classmethod
    def constant(cls, n: int, value: Scalar) -> "MultiPoly":
        c = to_fraction(value)
        return cls(n, polynomial_ring(n).ground_new(QQ(c.numerator, c.denominator)))

    @classmethod
    def x(cls, n: int, v: int) -> "MultiPoly":
        return cls(n, polynomial_ring(n).gens[x_index(v)])

    @classmethod
    def y(cls, n: int, v: int) -> "MultiPoly":
        return cls(n, polynomial_ring(n).gens[y_index(v)])

    def _wrap(self, poly: PolyElement) -> "MultiPoly":
        return MultiPoly(self.n, poly)

    def _coerce(self, other: object) -> PolyElement:
        if isinstance(other, MultiPoly):
            if other.n != self.n:
                raise InvalidInput(f"Cannot combine polynomials on {self.n} and {other.n} vertices")
            return other.poly
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return self.poly.ring.ground_new(QQ(c.numerator, c.denominator))
        return NotImplemented

    def __add__(self, other: object) -> "MultiPoly":
        return self._wrap(self.poly + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: object) -> "MultiPoly":
        return self._wrap(self.poly - self._coerce(other))

    def __rsub__(self, other: object) -> "MultiPoly":
        return self._wrap(self._coerce(other) - self.poly)

    def __mul__(self, other: object) -> "MultiPoly":
        return self._wrap(self.poly * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self) -> "MultiPoly":
        return self._wrap(-self.poly)

    def __pow__(self, k: int) -> "MultiPoly":
        return self._wrap(self.poly**k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.terms())))

    def __repr__(self) -> str:
        return f"MultiPoly(n={self.n}, terms={len(self.poly)}, degree={self.total_degree})"

    def __str__(self) -> str:
        return str(self.poly.as_expr())

    def terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in descending grlex order with Fraction coefficients."""
        return [(m, to_fraction(c)) for m, c in self.poly.terms()]

    @property
    def is_zero(self) -> bool:
        return not self.poly

    @property
    def is_constant(self) -> bool:
        return self.poly.is_ground

    @property
    def total_degree(self) -> int:
        return max((sum(m) for m in self.poly.monoms()), default=0) if self.poly else -1

    def degree_in(self, var: int) -> int:
        return max((m[var] for m in self.poly.monoms()), default=0)

    @property
    def variables(self) -> Tuple[int, ...]:
        """Indices of the variables that occur."""
        used = set()
        for m in self.poly.monoms():
            used.update(k for k, e in enumerate(m) if e)
        return tuple(sorted(used))

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted({k // 2 + 1 for k in self.variables}))

    @property
    def leading_coefficient(self) -> Fraction:
        return to_fraction(self.poly.LC) if self.poly else Fraction(0)

    def normalised(self) -> Tuple[Fraction, "MultiPoly"]:
        """Split into content and a primitive part with positive leading coefficient."""
        if not self.poly:
            return Fraction(0), self
        content, prim = self.poly.primitive()
        c = to_fraction(content)
        if to_fraction(prim.LC) < 0:
            c, prim = -c, -prim
        return c, self._wrap(prim)

    def divide(self, other: "MultiPoly") -> Tuple["MultiPoly", "MultiPoly"]:
        """Multivariate division: (quotient, remainder)."""
        q, r = self.poly.div(self._coerce(other))
        return self._wrap(q), self._wrap(r)

    def term_values(self, config: Configuration) -> List[Scalar]:
        """Value of every term at a configuration (Fraction or float)."""
        if config.n != self.n or config.d != 2:
            raise InvalidInput(
                f"Configuration of {config.n} points in R^{config.d} "
                f"does not match {self.n} vertices"
            )
        coords = list(config.vector())
        values: List[Scalar] = []
        for exp, coeff in self.terms():
            value: Scalar = coeff if config.is_exact else float(coeff)
            for k, e in enumerate(exp):
                if e:
                    value = value * coords[k] ** e
            values.append(value)
        return values

    def evaluate(self, config: Configuration) -> Scalar:
        """Exact value for rational configurations, float otherwise."""
        values = self.term_values(config)
        if config.is_exact:
            return sum(values, Fraction(0))
        return float(np.sum(values)) if values else 0.0

    def restrict(self, coords: Sequence[Scalar], var: int) -> List[Scalar]:
        """Univariate restriction in variable ``var`` with the others fixed.

        Args:
            coords: Values of all 2n variables (the entry at ``var`` is ignored)
            var: Index of the free variable

        Returns:
            Coefficients by increasing degree
        """
        coeffs: List[Scalar] = [Fraction(0)] * (self.degree_in(var) + 1)
        for exp, coeff in self.terms():
            value: Scalar = coeff
            for k, e in enumerate(exp):
                if e and k != var:
                    value = value * coords[k] ** e
            coeffs[exp[var]] = coeffs[exp[var]] + value
        return coeffs


@dataclass(frozen=True)
class IrreducibilityEvidence:
    """Random plane restrictions that factored as a single irreducible.

    Attributes:
        trials: Restrictions attempted
        irreducible: Restrictions that stayed irreducible of full degree
    """

    trials: int
    irreducible: int

    @property
    def likely_irreducible(self) -> bool:
        return self.trials > 0 and self.irreducible == self.trials


@dataclass(frozen=True, eq=False)
class Factor:
    """One factor f_i of a pure condition.

    Attributes:
        poly: Primitive factor with positive leading coefficient
        multiplicity: Exponent r_i
        provenance: "geometric-candidate" or "residual-unfactored"
        kind: "collinearity", "concurrency" or "residual"
        vertices: Collinear triple, or the three lines' endpoints as pairs
        evidence: Irreducibility evidence for residual factors
    """

    poly: MultiPoly
    multiplicity: int
    provenance: str
    kind: str
    vertices: Tuple = ()
    evidence: Optional[IrreducibilityEvidence] = None

    @property
    def lines(self) -> Tuple[Edge, ...]:
        return tuple(self.vertices) if self.kind == CONCURRENCY else ()

    def describe(self) -> str:
        if self.kind == COLLINEARITY:
            return "collinear " + "".join(str(v) for v in self.vertices)
        if self.kind == CONCURRENCY:
            return "concurrent " + ",".join(f"{a}{b}" for a, b in self.vertices)
        return f"residual of degree {self.poly.total_degree}"


@dataclass(frozen=True, eq=False)
class FactorList:
    """content * prod f_i^r_i.

    Attributes:
        content: Rational content (carries the sign)
        factors: Factors in discovery order
    """

    content: Fraction
    factors: Tuple[Factor, ...]

    def expand(self, n: int) -> MultiPoly:
        total = MultiPoly.constant(n, self.content)
        for f in self.factors:
            total = total * f.poly**f.multiplicity
        return total

    def __len__(self) -> int:
        return len(self.factors)


@dataclass(frozen=True, eq=False)
class VarietySample:
    """A configuration on the variety V(f).

    Attributes:
        config: The sampled configuration
        residual: |f(p)|; exactly zero for constructive samples
        construction: "collinear", "concurrent", "linear-solve" or "root-finding"
        seed: Root seed used
        trial: Trial index
        attempts: Draws needed (root finding may resample)
    """

    config: Configuration
    residual: float
    construction: str
    seed: int
    trial: int
    attempts: int = 1

    @property
    def exact(self) -> bool:
        return self.config.is_exact and self.residual == 0


@dataclass(frozen=True)
class FactorProfile:
    """Stress behaviour on V(f) over several samples.

    Attributes:
        dim: Modal stress-space dimension
        support: Modal support of the stress space
        stable: Whether every trial gave the same (dim, support)
        trials: Samples drawn
    """

    dim: int
    support: FrozenSet[Edge]
    stable: bool
    trials: int


@dataclass(frozen=True, eq=False)
class FactorAnalysis:
    """A factor with its stress profile; extensive when dim = 1 with full support."""

    factor: Factor
    profile: FactorProfile
    extensive: bool


@dataclass(frozen=True, eq=False)
class PureConditionAnalysis:
    """Result of factoring a pure condition and profiling each factor.

    Attributes:
        pure_condition: C_G
        factors: Its factorisation
        analyses: One entry per factor, in factor order
    """

    pure_condition: MultiPoly
    factors: FactorList
    analyses: Tuple[FactorAnalysis, ...]

    @property
    def extensive_factors(self) -> Tuple[Factor, ...]:
        return tuple(a.factor for a in self.analyses if a.extensive)

    @property
    def failure(self) -> bool:
        return not self.extensive_factors


@dataclass(frozen=True, eq=False)
class SymmetricCertificate:
    """A symmetric configuration on V(f) obtained by averaging a variety sample.

    Attributes:
        pair: The symmetry (Gamma, tau)
        factor: The averaging-invariant factor
        config: Averaged configuration Ap
        s: Stress-space dimension at Ap
        full_support: Whether the stress has full support
        stress: The stress when s = 1
        symmetry_type: How the stress transforms under Gamma
    """

    pair: SymmetryPair
    factor: Factor
    config: Configuration
    s: int
    full_support: bool
    stress: Optional[np.ndarray]
    symmetry_type: str

    @property
    def extensive(self) -> bool:
        return self.s == 1 and self.full_support


@dataclass(frozen=True, eq=False)
class SymmetricSearch:
    """Pairs whose averaging map preserves an extensive factor's variety.

    Attributes:
        analysis: The underlying factor analysis
        hits: One certificate per invariant (pair, factor)
    """

    analysis: PureConditionAnalysis
    hits: Tuple[SymmetricCertificate, ...]

    @property
    def failure(self) -> bool:
        return not any(h.extensive for h in self.hits)
