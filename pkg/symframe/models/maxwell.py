"""Character tables and symmetry-extended Maxwell counts."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Tuple, Union

from symframe.models.symmetry import ConjugacyClass, FilterVerdict, OrthogonalElement, SymmetryPair

Scalar = Union[Fraction, float]


@dataclass(frozen=True)
class Irrep:
    """A real irreducible representation of a planar point group.

    Attributes:
        name: Mulliken label such as "A1", "B2" or "E1"
        dim: Dimension of the representation
        values: Character value per conjugacy class, in table class order
        norm_factor: <chi, chi> / |Gamma|; 2 for a merged complex pair, else 1
    """

    name: str
    dim: int
    values: Tuple[Scalar, ...]
    norm_factor: int = 1


@dataclass(frozen=True)
class CharacterTable:
    """Real character table of a cyclic or dihedral point group.

    Attributes:
        label: Schoenflies label, e.g. "C3v"
        order: |Gamma|
        classes: Conjugacy classes (identity first)
        class_images: tau of each class representative
        irreps: Irreducible characters as rows
    """

    label: str
    order: int
    classes: Tuple[ConjugacyClass, ...]
    class_images: Tuple[OrthogonalElement, ...]
    irreps: Tuple[Irrep, ...]

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(c.size for c in self.classes)

    def irrep(self, name: str) -> Irrep:
        for rho in self.irreps:
            if rho.name == name:
                return rho
        raise KeyError(name)


@dataclass(frozen=True)
class CharacterVector:
    """A class function, one value per conjugacy class of a CharacterTable."""

    values: Tuple[Scalar, ...]


@dataclass(frozen=True)
class MaxwellReport:
    """Decomposition of the rigidity character into irreducibles.

    Attributes:
        label: Point-group label
        alpha: Multiplicity alpha_i per irrep name
        detected_flexes: sum of alpha_i * dim over alpha_i > 0
        detected_s: sum of |alpha_i| * dim over alpha_i < 0
        stress_types: Irrep names carrying detected stresses
        character: The decomposed rigidity character
    """

    label: str
    alpha: Dict[str, int]
    detected_flexes: int
    detected_s: int
    stress_types: Tuple[str, ...]
    character: CharacterVector


@dataclass(frozen=True)
class ScanEntry:
    """One accepted pair of a symmetry-extended Maxwell scan.

    Attributes:
        pair: The pair (Gamma, tau)
        report: Its Maxwell report
        verdict: Degeneracy-filter verdict (accepted, possibly with advisories)
        realised_s: Stress count at a sampled symmetric configuration, when verified
        crossings: Crossing count of one sampled symmetric realisation, when probed
    """

    pair: SymmetryPair
    report: MaxwellReport
    verdict: FilterVerdict
    realised_s: Union[int, None] = None
    crossings: Union[int, None] = None
    notes: Tuple[str, ...] = field(default=())
