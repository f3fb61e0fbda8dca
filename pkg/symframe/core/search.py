"""Factor analysis of pure conditions and the search for symmetric extensive stresses."""

import logging
from typing import List, Optional

from symframe.core.framework_core import self_stress_basis
from symframe.core.maxwell_count import candidate_pairs
from symframe.core.pure_condition import factorize, pure_condition
from symframe.core.stress_classify import stress_symmetry_type, support
from symframe.core.symmetry import average
from symframe.core.variety import factor_stress_profile, sample_variety
from symframe.errors import InvalidInput
from symframe.models.framework import Framework
from symframe.models.graph import Graph
from symframe.models.polynomial import (
    Factor,
    FactorAnalysis,
    PureConditionAnalysis,
    SymmetricCertificate,
    SymmetricSearch,
)
from symframe.models.stress import ZERO
from symframe.models.symmetry import SymmetryPair
from symframe.utils.constants import (
    AUT_GROUP_CAP,
    DEFAULT_RESIDUAL_TOL,
    DEFAULT_SEED,
    INVARIANCE_TRIALS,
    PROFILE_TRIALS,
    SCALAR_FLOAT,
    SCALAR_RATIONAL,
)

logger = logging.getLogger(__name__)


def algorithm2(
    g: Graph, seed: int = DEFAULT_SEED, trials: int = PROFILE_TRIALS
) -> PureConditionAnalysis:
    """Factor the pure condition and find the factors carrying an extensive stress.

    A factor is extensive when its sampled stress space is 1-dimensional
    with support on every edge.

    Raises:
        NotIsostatic: If g is not generically isostatic
    """
    cg = pure_condition(g, seed=seed)
    factors = factorize(cg, seed=seed)
    analyses = []
    for factor in factors.factors:
        profile = factor_stress_profile(g, factor, trials, seed)
        extensive = profile.dim == 1 and len(profile.support) == g.m
        logger.debug(
            "%s: dim=%d, support %d/%d, stable=%s",
            factor.describe(),
            profile.dim,
            len(profile.support),
            g.m,
            profile.stable,
        )
        analyses.append(FactorAnalysis(factor, profile, extensive))
    result = PureConditionAnalysis(cg, factors, tuple(analyses))
    logger.info(
        "Pure condition has %d factors, %d extensive", len(factors), len(result.extensive_factors)
    )
    return result


def _averaging_mode(pair: SymmetryPair, exact_sample: bool) -> str:
    return SCALAR_RATIONAL if exact_sample and pair.rep.is_exact else SCALAR_FLOAT


def averaging_invariance(
    g: Graph,
    f: Factor,
    pair: SymmetryPair,
    trials: int = INVARIANCE_TRIALS,
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_RESIDUAL_TOL,
) -> bool:
    """Whether averaging keeps sampled points of V(f) on V(f).

    f(Ap) must vanish for every sample: exactly when both the sample and
    tau are rational, and within ``tol`` times the sum of the absolute term
    values otherwise. The trivial group is always invariant.
    """
    if pair.graph != g:
        raise InvalidInput("The pair acts on a different graph")
    if trials < 1:
        raise InvalidInput(f"trials must be at least 1, got {trials}")
    if pair.group.is_trivial:
        return True
    for trial in range(trials):
        sample = sample_variety(f, seed, trial)
        mode = _averaging_mode(pair, sample.exact)
        ap = average(pair, sample.config, mode=mode)
        if mode == SCALAR_RATIONAL:
            if f.poly.evaluate(ap) != 0:
                logger.debug("%s leaves V(%s) at trial %d", pair, f.describe(), trial)
                return False
            continue
        values = f.poly.term_values(ap)
        scale = sum(abs(float(v)) for v in values)
        if abs(float(sum(values))) > tol * max(scale, 1.0):
            logger.debug("%s leaves V(%s) at trial %d", pair, f.describe(), trial)
            return False
    return True


def _certificate(
    g: Graph, pair: SymmetryPair, f: Factor, seed: int, trials: int
) -> SymmetricCertificate:
    """Average variety samples until one carries an extensive stress (or trials run out)."""
    cert: Optional[SymmetricCertificate] = None
    for trial in range(trials):
        sample = sample_variety(f, seed, trial)
        ap = average(pair, sample.config, mode=_averaging_mode(pair, sample.exact))
        basis = self_stress_basis(Framework(g, ap))
        stress = basis.stress(0) if basis.s == 1 else None
        full = stress is not None and len(support(stress, g.edges)) == g.m
        cert = SymmetricCertificate(
            pair=pair,
            factor=f,
            config=ap,
            s=basis.s,
            full_support=full,
            stress=stress,
            symmetry_type=(
                stress_symmetry_type(pair.group, g, stress) if stress is not None else ZERO
            ),
        )
        if cert.extensive:
            break
    if cert is None:
        raise InvalidInput(f"trials must be at least 1, got {trials}")
    return cert


def algorithm4(
    g: Graph,
    seed: int = DEFAULT_SEED,
    trials: int = INVARIANCE_TRIALS,
    profile_trials: int = PROFILE_TRIALS,
    aut_cap: int = AUT_GROUP_CAP,
) -> SymmetricSearch:
    """Symmetries whose averaging map preserves the variety of an extensive factor.

    Every accepted non-trivial pair from the symmetry scan is tested
    against every extensive factor. Each invariant combination yields a
    certificate: an averaged variety sample with its stress dimension,
    support and symmetry type. The search fails when no certificate
    carries an extensive stress.

    Raises:
        InvalidInput: If trials is below 1
        NotIsostatic: If g is not generically isostatic
    """
    if trials < 1:
        raise InvalidInput(f"trials must be at least 1, got {trials}")
    analysis = algorithm2(g, seed, profile_trials)
    pairs = [
        pair
        for pair, verdict in candidate_pairs(g, aut_cap)
        if verdict.accepted and not pair.group.is_trivial
    ]
    hits: List[SymmetricCertificate] = []
    for f in analysis.extensive_factors:
        for pair in pairs:
            if averaging_invariance(g, f, pair, trials, seed):
                hits.append(_certificate(g, pair, f, seed, trials))
    hits.sort(key=lambda h: (not h.extensive, h.pair.order, h.pair.label, h.pair.rep.key()))
    logger.info(
        "%d invariant pairs out of %d, %d with an extensive certificate",
        len(hits),
        len(pairs),
        sum(1 for h in hits if h.extensive),
    )
    return SymmetricSearch(analysis=analysis, hits=tuple(hits))
