"""Symmetry-extended Maxwell counting and the symmetry scan over all pairs."""

import logging
import warnings
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import networkx as nx

from symframe.core.graph_core import (
    automorphism_group,
    conjugacy_classes,
    count_crossings,
    fixed_elements,
    subgroups,
)
from symframe.core.symmetry import (
    degeneracy_filter,
    enumerate_faithful_reps,
    random_symmetric_configuration,
    symmetric_generic_counts,
)
from symframe.errors import InvalidInput, NonIntegralCoefficient, PlanarityWarning
from symframe.models.graph import Graph
from symframe.models.maxwell import (
    CharacterTable,
    CharacterVector,
    Irrep,
    MaxwellReport,
    ScanEntry,
)
from symframe.models.symmetry import FilterVerdict, SymmetryPair, two_cos_turn
from symframe.utils.constants import AUT_GROUP_CAP, DEFAULT_GENERIC_TRIALS, DEFAULT_SEED

logger = logging.getLogger(__name__)

# Tolerance for recognising integers among floating multiplicities
_INTEGRALITY_TOL = 1e-9


def _e_label(k: int, count: int) -> str:
    return "E" if count == 1 else f"E{k}"


def character_table(pair: SymmetryPair) -> CharacterTable:
    """Real character table of the point group tau(Gamma).

    Irreducibles are expressed through the geometric images: a rotation by
    2*pi*a/q and, for C_qv, the axis index of each reflection relative to
    the first one. For C_q with q >= 3 each complex-conjugate pair is merged
    into one real 2-dimensional irreducible with character 2cos.

    Args:
        pair: The pair whose group and representation are tabulated

    Returns:
        CharacterTable
    """
    classes = tuple(conjugacy_classes(pair.group))
    images = tuple(pair.tau(c.representative) for c in classes)
    label = pair.label
    order = pair.order
    has_reflections = any(img.is_reflection for img in images)
    q = order // 2 if has_reflections else order

    def turn_index(img) -> int:
        return int(img.angle * q)

    reflection_axes = sorted(img.angle for _, img in pair.elements() if img.is_reflection)
    axis0 = reflection_axes[0] if reflection_axes else Fraction(0)

    def axis_index(img) -> int:
        return int(((img.angle - axis0) % 1) * q)

    e_ks = [k for k in range(1, q) if 2 * k < q]
    irreps: List[Irrep] = []

    if not has_reflections:
        irreps.append(Irrep("A", 1, tuple(Fraction(1) for _ in images)))
        if q % 2 == 0:
            irreps.append(
                Irrep("B", 1, tuple(Fraction((-1) ** turn_index(img)) for img in images))
            )
        for k in e_ks:
            values = tuple(two_cos_turn(k * img.angle) for img in images)
            irreps.append(Irrep(_e_label(k, len(e_ks)), 2, values, norm_factor=2))
    else:
        ones = tuple(Fraction(1) for _ in images)
        signs = tuple(Fraction(1 if img.is_rotation else -1) for img in images)
        if q == 1:
            irreps.append(Irrep("A'", 1, ones))
            irreps.append(Irrep("A''", 1, signs))
        else:
            irreps.append(Irrep("A1", 1, ones))
            irreps.append(Irrep("A2", 1, signs))
        if q % 2 == 0:
            b1, b2 = [], []
            for img in images:
                if img.is_rotation:
                    v = Fraction((-1) ** turn_index(img))
                    b1.append(v)
                    b2.append(v)
                else:
                    v = Fraction(1 if axis_index(img) % 2 == 0 else -1)
                    b1.append(v)
                    b2.append(-v)
            irreps.append(Irrep("B1", 1, tuple(b1)))
            irreps.append(Irrep("B2", 1, tuple(b2)))
        for k in e_ks:
            values = tuple(
                two_cos_turn(k * img.angle) if img.is_rotation else Fraction(0) for img in images
            )
            irreps.append(Irrep(_e_label(k, len(e_ks)), 2, values))

    return CharacterTable(
        label=label, order=order, classes=classes, class_images=images, irreps=tuple(irreps)
    )


def rigidity_character(
    pair: SymmetryPair, table: Optional[CharacterTable] = None
) -> CharacterVector:
    """Rigidity character on each conjugacy class.

    value(gamma) = |Fix_V| chi_T - |Fix_E| - (chi_T + chi_rot), with chi_T
    the trace of tau(gamma) and chi_rot = +1 for rotations, -1 for
    reflections.
    """
    table = table or character_table(pair)
    values = []
    for cls, img in zip(table.classes, table.class_images):
        fixed_v, fixed_e = fixed_elements(cls.representative, pair.graph)
        chi_t = img.trace()
        chi_rot = 1 if img.is_rotation else -1
        values.append(len(fixed_v) * chi_t - len(fixed_e) - (chi_t + chi_rot))
    return CharacterVector(tuple(values))


def decompose(v: CharacterVector, t: CharacterTable) -> MaxwellReport:
    """Write a class function as a combination of irreducible characters.

    Args:
        v: Class function in table order
        t: Character table

    Returns:
        MaxwellReport with integer multiplicities

    Raises:
        NonIntegralCoefficient: If a multiplicity is not an integer
    """
    if len(v.values) != len(t.classes):
        raise InvalidInput(
            f"Character has {len(v.values)} values but the table has {len(t.classes)} classes"
        )
    alpha: Dict[str, int] = {}
    for rho in t.irreps:
        total = sum(
            size * value * chi for size, value, chi in zip(t.sizes, v.values, rho.values)
        )
        if isinstance(total, Fraction) or isinstance(total, int):
            coeff = Fraction(total) / (t.order * rho.norm_factor)
            if coeff.denominator != 1:
                raise NonIntegralCoefficient(f"alpha({rho.name}) = {coeff} in {t.label}")
            alpha[rho.name] = int(coeff)
        else:
            coeff_f = float(total) / (t.order * rho.norm_factor)
            nearest = round(coeff_f)
            if abs(coeff_f - nearest) > _INTEGRALITY_TOL:
                raise NonIntegralCoefficient(f"alpha({rho.name}) = {coeff_f!r} in {t.label}")
            alpha[rho.name] = int(nearest)

    dims = {rho.name: rho.dim for rho in t.irreps}
    flexes = sum(a * dims[name] for name, a in alpha.items() if a > 0)
    stresses = sum(-a * dims[name] for name, a in alpha.items() if a < 0)
    stress_types = tuple(name for name, a in alpha.items() if a < 0)
    return MaxwellReport(
        label=t.label,
        alpha=alpha,
        detected_flexes=flexes,
        detected_s=stresses,
        stress_types=stress_types,
        character=v,
    )


def maxwell_report(pair: SymmetryPair) -> MaxwellReport:
    table = character_table(pair)
    return decompose(rigidity_character(pair, table), table)


def candidate_pairs(
    g: Graph, aut_cap: int = AUT_GROUP_CAP
) -> List[Tuple[SymmetryPair, FilterVerdict]]:
    """Every (subgroup, faithful rep) pair of Aut(G) with its filter verdict."""
    aut = automorphism_group(g, cap=aut_cap)
    groups = subgroups(aut)
    pairs = []
    for h in groups:
        for rep in enumerate_faithful_reps(h):
            pair = SymmetryPair(g, rep)
            pairs.append((pair, degeneracy_filter(pair)))
    logger.info(
        "%d subgroups of Aut(G) (order %d) give %d candidate pairs",
        len(groups),
        aut.order,
        len(pairs),
    )
    return pairs


def _evaluate(job: Tuple[SymmetryPair, FilterVerdict, bool, bool, int]) -> ScanEntry:
    pair, verdict, verify, probe, seed = job
    report = maxwell_report(pair)
    realised = None
    crossings = None
    notes: List[str] = []
    if verify:
        realised = symmetric_generic_counts(pair, DEFAULT_GENERIC_TRIALS, seed).s
        if realised < report.detected_s:
            notes.append("realised stress count below the detected lower bound")
    if probe:
        try:
            sample = random_symmetric_configuration(pair, seed)
            crossings = count_crossings(pair.graph, sample).crossings
        except InvalidInput as exc:
            notes.append(f"crossing probe skipped: {exc}")
    return ScanEntry(
        pair=pair,
        report=report,
        verdict=verdict,
        realised_s=realised,
        crossings=crossings,
        notes=tuple(notes),
    )


def algorithm1(
    g: Graph,
    verify: bool = False,
    probe_crossings: bool = True,
    seed: int = DEFAULT_SEED,
    jobs: int = 1,
    aut_cap: int = AUT_GROUP_CAP,
) -> List[ScanEntry]:
    """Symmetry-extended Maxwell scan over all symmetric pairs of a graph.

    Enumerates subgroups of Aut(G) and their faithful planar
    representations, discards degenerate pairs, decomposes the rigidity
    character of the rest and orders them by detected stress count
    (descending), then group order, label and representation.

    Args:
        g: Input graph (planarity is advisory)
        verify: Also compute s at a sampled symmetric configuration
        probe_crossings: Count crossings of one sampled symmetric realisation
        seed: Root seed for sampling
        jobs: Worker processes for evaluating pairs
        aut_cap: Automorphism enumeration cap

    Returns:
        Ordered list of ScanEntry

    Raises:
        AutGroupTooLarge: If Aut(G) exceeds ``aut_cap``
    """
    is_planar, _ = nx.check_planarity(g.to_networkx())
    if not is_planar:
        warnings.warn("Input graph is not planar", PlanarityWarning, stacklevel=2)

    accepted = []
    for pair, verdict in candidate_pairs(g, aut_cap):
        if verdict.accepted:
            accepted.append((pair, verdict, verify, probe_crossings, seed))
        else:
            logger.debug("Rejected %s: %s", pair, ", ".join(verdict.reasons))

    if jobs > 1 and len(accepted) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_evaluate, accepted))
    else:
        entries = [_evaluate(job) for job in accepted]

    entries.sort(
        key=lambda e: (-e.report.detected_s, e.pair.order, e.pair.label, e.pair.rep.key())
    )
    logger.info(
        "Maxwell scan: %d accepted pairs, best detected s = %d",
        len(entries),
        entries[0].report.detected_s if entries else 0,
    )
    return entries
