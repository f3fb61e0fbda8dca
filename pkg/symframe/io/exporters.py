"""Conversion of analysis results to JSON-ready dicts and report output."""

import hashlib
from pathlib import Path
from typing import Any, Dict, List, Optional

import networkx
import numpy
import scipy
import sympy

import symframe
from symframe.io.formats import (
    configuration_to_dict,
    dumps,
    edge_key,
    lift_to_dict,
    polynomial_to_dict,
    stress_to_list,
    symmetry_to_dict,
)
from symframe.models.framework import GenericCounts, MaxwellIndex, StressBasis
from symframe.models.maxwell import MaxwellReport, ScanEntry
from symframe.models.polynomial import (
    Factor,
    FactorAnalysis,
    PureConditionAnalysis,
    SymmetricCertificate,
    SymmetricSearch,
    VarietySample,
)
from symframe.models.report import AnalysisReport
from symframe.models.statics import ErrorBudget, ProjectionStress, Resolvability, RubberBandResult
from symframe.models.stress import StressClassification
from symframe.models.symmetry import SymmetryPair
from symframe.utils.helpers import format_scalar


def file_digest(path: Path) -> str:
    """SHA-256 hex digest of a file's bytes."""
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def package_versions() -> Dict[str, str]:
    versions = {
        "symframe": symframe.__version__,
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
        "sympy": sympy.__version__,
        "networkx": networkx.__version__,
    }
    return versions


def write_report(report: AnalysisReport, path: Optional[Path] = None) -> str:
    """Serialise a report; also write it to ``path`` when given."""
    text = dumps(report.to_dict())
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


# ----------------------------------------------------------------------------
# Result payloads
# ----------------------------------------------------------------------------


def counts_to_dict(counts: GenericCounts) -> Dict[str, Any]:
    return {"f": counts.f, "s": counts.s, "rank": counts.rank, "trials": counts.trials}


def maxwell_index_to_dict(k: MaxwellIndex) -> Dict[str, Any]:
    return {"k": k.k, "d": k.d, "n": k.n, "m": k.m}


def stress_basis_to_dict(basis: StressBasis) -> Dict[str, Any]:
    return {
        "s": basis.s,
        "rank": basis.rank,
        "mode": basis.mode,
        "edges": [edge_key(e) for e in basis.edges],
        "stresses": [stress_to_list(basis.stress(k)) for k in range(basis.s)],
    }


def maxwell_report_to_dict(report: MaxwellReport) -> Dict[str, Any]:
    return {
        "label": report.label,
        "alpha": dict(report.alpha),
        "detected_flexes": report.detected_flexes,
        "detected_s": report.detected_s,
        "stress_types": list(report.stress_types),
        "character": [format_scalar(v) for v in report.character.values],
    }


def pair_to_dict(pair: SymmetryPair) -> Dict[str, Any]:
    out = symmetry_to_dict(pair)
    out["elements"] = len(pair.elements())
    out["description"] = str(pair)
    return out


def scan_entry_to_dict(entry: ScanEntry) -> Dict[str, Any]:
    gens = symmetry_to_dict(entry.pair)
    return {
        "group_label": entry.report.label,
        "order": entry.pair.order,
        "generators": gens["generators"],
        "images": gens["images"],
        "alpha": dict(entry.report.alpha),
        "detected_s": entry.report.detected_s,
        "detected_flexes": entry.report.detected_flexes,
        "stress_types": list(entry.report.stress_types),
        "filters": list(entry.verdict.reasons),
        "advisories": list(entry.verdict.advisories),
        "realised_s": entry.realised_s,
        "crossings": entry.crossings,
        "notes": list(entry.notes),
    }


def scan_to_dict(entries: List[ScanEntry]) -> Dict[str, Any]:
    return {"pairs": [scan_entry_to_dict(e) for e in entries], "count": len(entries)}


def classification_to_dict(c: StressClassification) -> Dict[str, Any]:
    return {
        "s": c.s,
        "mode": c.mode,
        "weak_span_dim": c.weak_span_dim,
        "extensive": c.extensive,
        "extensive_stress": stress_to_list(c.extensive_stress)
        if c.extensive_stress is not None
        else None,
        "stresses": [
            {
                "index": v.index,
                "stress": stress_to_list(v.stress),
                "support": [edge_key(e) for e in sorted(v.support)],
                "strongly_localised": v.strongly_localised,
                "weakly_localised": v.weakly_localised,
                "gamma_extensive": v.gamma_extensive,
                "symmetry_type": v.symmetry_type,
            }
            for v in c.verdicts
        ],
    }


def factor_to_dict(f: Factor) -> Dict[str, Any]:
    out = {
        "kind": f.kind,
        "provenance": f.provenance,
        "multiplicity": f.multiplicity,
        "description": f.describe(),
        "degree": f.poly.total_degree,
        "polynomial": polynomial_to_dict(f.poly),
    }
    if f.evidence is not None:
        out["irreducibility"] = {"trials": f.evidence.trials, "irreducible": f.evidence.irreducible}
    return out


def factor_analysis_to_dict(a: FactorAnalysis) -> Dict[str, Any]:
    out = factor_to_dict(a.factor)
    out["profile"] = {
        "dim": a.profile.dim,
        "support": [edge_key(e) for e in sorted(a.profile.support)],
        "stable": a.profile.stable,
        "trials": a.profile.trials,
    }
    out["extensive"] = a.extensive
    return out


def pure_condition_analysis_to_dict(a: PureConditionAnalysis) -> Dict[str, Any]:
    return {
        "pure_condition": polynomial_to_dict(a.pure_condition),
        "content": format_scalar(a.factors.content),
        "factors": [factor_analysis_to_dict(x) for x in a.analyses],
        "failure": a.failure,
    }


def certificate_to_dict(c: SymmetricCertificate) -> Dict[str, Any]:
    return {
        "pair": pair_to_dict(c.pair),
        "factor": c.factor.describe(),
        "config": configuration_to_dict(c.config),
        "s": c.s,
        "full_support": c.full_support,
        "extensive": c.extensive,
        "stress": stress_to_list(c.stress) if c.stress is not None else None,
        "symmetry_type": c.symmetry_type,
    }


def search_to_dict(s: SymmetricSearch) -> Dict[str, Any]:
    return {
        "factors": pure_condition_analysis_to_dict(s.analysis)["factors"],
        "hits": [certificate_to_dict(h) for h in s.hits],
        "failure": s.failure,
    }


def sample_to_dict(sample: VarietySample) -> Dict[str, Any]:
    return {
        "config": configuration_to_dict(sample.config),
        "residual": sample.residual,
        "construction": sample.construction,
        "attempts": sample.attempts,
    }


def rubber_band_to_dict(r: RubberBandResult) -> Dict[str, Any]:
    return {
        "config": configuration_to_dict(r.config),
        "stress": stress_to_list(r.stress),
        "s": r.s,
        "full_support": bool(r.full_support),
        "extensive": bool(r.extensive),
        "boundary_unique": r.boundary_unique,
    }


def projection_stress_to_dict(p: ProjectionStress) -> Dict[str, Any]:
    return {
        "stress": stress_to_list(p.stress),
        "residual": p.residual,
        "projected_residual": p.projected_residual,
    }


def resolvability_to_dict(r: Resolvability) -> Dict[str, Any]:
    return {
        "feasible": list(r.feasible),
        "resolved_dim": r.resolved_dim,
        "stress_dim": r.stress_dim,
    }


def error_budget_to_dict(b: ErrorBudget) -> Dict[str, Any]:
    return {
        "m": b.m,
        "omega_norm": b.omega_norm,
        "eps": b.eps,
        "diameter_bound": b.diameter_bound,
        "diameter": b.diameter,
        "residual": b.residual,
        "residual_bound": b.residual_bound,
        "holds": b.holds,
    }


__all__ = [
    "certificate_to_dict",
    "classification_to_dict",
    "counts_to_dict",
    "error_budget_to_dict",
    "factor_to_dict",
    "file_digest",
    "lift_to_dict",
    "maxwell_index_to_dict",
    "package_versions",
    "projection_stress_to_dict",
    "pure_condition_analysis_to_dict",
    "resolvability_to_dict",
    "rubber_band_to_dict",
    "sample_to_dict",
    "scan_to_dict",
    "search_to_dict",
    "stress_basis_to_dict",
    "write_report",
]
