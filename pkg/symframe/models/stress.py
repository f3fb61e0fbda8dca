"""Self-stress classification results."""

from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

import numpy as np

from symframe.models.graph import Edge, SubgraphOrbit

FULLY_SYMMETRIC = "fully-symmetric"
ANTI_SYMMETRIC = "anti-symmetric"
MIXED = "mixed"
ZERO = "zero"


@dataclass(frozen=True, eq=False)
class StressVerdict:
    """Classification of one basis stress.

    Attributes:
        index: Row of the stress in the basis
        stress: The coefficient vector
        support: Edges with non-zero coefficient
        strongly_localised: Whether the support closure has |Gamma| disjoint copies
        witness: Orbit of the support closure (the certificate either way)
        weakly_localised: Whether every edge orbit misses the support somewhere
        gamma_extensive: Whether the stress lies outside the weakly localised span
        symmetry_type: fully-symmetric, anti-symmetric, mixed or zero
    """

    index: int
    stress: np.ndarray
    support: FrozenSet[Edge]
    strongly_localised: bool
    witness: Optional[SubgraphOrbit]
    weakly_localised: bool
    gamma_extensive: bool
    symmetry_type: str


@dataclass(frozen=True, eq=False)
class StressClassification:
    """Stress-space classification of a framework under a group.

    Attributes:
        s: Dimension of the self-stress space
        verdicts: One verdict per basis stress
        weak_span: Basis of the span of weakly localised stresses
        extensive: Whether the framework has an extensive self-stress
        extensive_stress: That stress, when it exists
        mode: Scalar mode of the computation
    """

    s: int
    verdicts: Tuple[StressVerdict, ...]
    weak_span: np.ndarray
    extensive: bool
    extensive_stress: Optional[np.ndarray]
    mode: str

    @property
    def weak_span_dim(self) -> int:
        return self.weak_span.shape[0]
