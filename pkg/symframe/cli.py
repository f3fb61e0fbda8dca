"""Command-line interface: one subcommand per analysis pipeline.

Every subcommand prints a deterministic JSON report on stdout. Domain
errors exit with status 2, usage errors with status 1.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from symframe import __version__
from symframe.core.framework_core import (
    generic_counts,
    maxwell_index,
    motion_basis,
    self_stress_basis,
)
from symframe.core.graph_core import (
    automorphism_group,
    conjugacy_classes,
    count_crossings,
    group_structure,
    maxwell_sparsity,
    subgroups,
)
from symframe.core.maxwell_count import algorithm1
from symframe.core.rubber_band import algorithm3, choose_boundary
from symframe.core.search import algorithm2, algorithm4
from symframe.core.statics import (
    maxwell_cremona_lift,
    projection_stress,
    residual_check,
    vertical_resolvability,
)
from symframe.core.stress_classify import classify, is_extensive
from symframe.core.symmetry import average, is_symmetric
from symframe.errors import Infeasible, InvalidInput, NotASelfStress, SymframeError
from symframe.io.exporters import (
    classification_to_dict,
    counts_to_dict,
    error_budget_to_dict,
    file_digest,
    maxwell_index_to_dict,
    package_versions,
    projection_stress_to_dict,
    pure_condition_analysis_to_dict,
    resolvability_to_dict,
    rubber_band_to_dict,
    scan_to_dict,
    search_to_dict,
    stress_basis_to_dict,
    write_report,
)
from symframe.io.formats import (
    configuration_to_dict,
    dumps,
    lift_to_dict,
    load_configuration,
    load_graph,
    load_lift,
    load_loads,
    load_stress,
    load_symmetry,
    load_weights,
    polynomial_to_dict,
    stress_to_list,
)
from symframe.io.render import save_svg
from symframe.models.framework import Configuration, Framework
from symframe.models.graph import Graph, Subgroup
from symframe.models.report import AnalysisReport
from symframe.utils.constants import (
    APP_NAME,
    AUT_GROUP_CAP,
    DEFAULT_RANK_TOL,
    DEFAULT_SEED,
    DEFAULT_SUPPORT_TOL,
    DEFAULT_SYMMETRY_TOL,
    INVARIANCE_TRIALS,
    ORBIT_PRODUCT_CAP,
    PROFILE_TRIALS,
    SCALAR_FLOAT,
    SCALAR_MODES,
    SCALAR_RATIONAL,
)

logger = logging.getLogger(__name__)

INPUT_OPTIONS = (
    "graph",
    "config",
    "sym",
    "weights",
    "boundary_points",
    "stress",
    "lift",
    "loads",
    "error",
)


class UsageError(Exception):
    """Raised by the parser instead of exiting."""


class CommandParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: error: {message}")


# ----------------------------------------------------------------------------
# Input helpers
# ----------------------------------------------------------------------------


def _record_scalar(args: argparse.Namespace, config: Configuration) -> Configuration:
    """Remember the arithmetic mode a command actually ran in; float wins."""
    if getattr(args, "effective_scalar", None) != SCALAR_FLOAT:
        args.effective_scalar = config.scalar
    return config


def _configuration(args: argparse.Namespace, path: Path) -> Configuration:
    config = load_configuration(path, scalar=args.scalar)
    if args.scalar == SCALAR_FLOAT:
        config = config.to_float()
    return _record_scalar(args, config)


def _framework(args: argparse.Namespace, g: Graph) -> Framework:
    fw = Framework(g, _configuration(args, args.config))
    fw.check_distinct()
    return fw


def _parse_boundary(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InvalidInput(f"Boundary {text!r} must be comma-separated vertices") from exc


def _stress_or_first(args: argparse.Namespace, fw: Framework):
    if getattr(args, "stress", None) is not None:
        return load_stress(args.stress, fw.graph)
    basis = self_stress_basis(fw, args.tol)
    if basis.s == 0:
        raise NotASelfStress("Framework has no non-zero self-stress")
    return basis.stress(0)


# ----------------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------------


def cmd_analyze(args: argparse.Namespace) -> Dict[str, Any]:
    g = load_graph(args.graph)
    result: Dict[str, Any] = {
        "maxwell": maxwell_index_to_dict(maxwell_index(g)),
        "generic": counts_to_dict(generic_counts(g, seed=args.seed)),
        "sparse": maxwell_sparsity(g),
    }
    if args.config is not None:
        fw = _framework(args, g)
        basis = self_stress_basis(fw, args.tol)
        flag, _ = is_extensive(fw, basis)
        result["framework"] = {
            "s": basis.s,
            "f": motion_basis(fw, args.tol).f,
            "stresses": stress_basis_to_dict(basis),
            "extensive": flag,
            "coincident": [list(p) for p in fw.config.coincident_pairs()],
        }
        if fw.d == 2:
            drawing = count_crossings(g, fw.config)
            result["framework"]["crossings"] = drawing.crossings
            result["framework"]["touchings"] = [list(map(list, t)) for t in drawing.touchings]
        if args.svg is not None:
            save_svg(args.svg, fw, basis.stress(0) if basis.s else None)
    elif args.svg is not None:
        raise InvalidInput("--svg needs --config")
    return result


def cmd_automorphisms(args: argparse.Namespace) -> Dict[str, Any]:
    g = load_graph(args.graph)
    aut = automorphism_group(g, cap=args.aut_cap)

    def describe(h: Subgroup) -> Dict[str, Any]:
        s = group_structure(h)
        return {
            "order": h.order,
            "generators": [[list(c) for c in p.cycles()] for p in h.generators],
            "kind": s.kind,
            "q": s.q,
        }

    result = describe(aut)
    result["classes"] = [len(c.elements) for c in conjugacy_classes(aut)]
    result["subgroups"] = [describe(h) for h in subgroups(aut)] if args.subgroups else None
    return result


def cmd_maxwell_scan(args: argparse.Namespace) -> Dict[str, Any]:
    g = load_graph(args.graph)
    entries = algorithm1(
        g,
        verify=args.verify,
        probe_crossings=not args.no_probe,
        seed=args.seed,
        jobs=args.jobs,
        aut_cap=args.aut_cap,
    )
    return scan_to_dict(entries)


def cmd_pure_condition(args: argparse.Namespace) -> Dict[str, Any]:
    g = load_graph(args.graph)
    analysis = algorithm2(g, seed=args.seed, trials=args.trials)
    if args.polynomial_out is not None:
        Path(args.polynomial_out).write_text(
            dumps(polynomial_to_dict(analysis.pure_condition)), encoding="utf-8"
        )
    return pure_condition_analysis_to_dict(analysis)


def cmd_rubberband(args: argparse.Namespace) -> Dict[str, Any]:
    g = load_graph(args.graph)
    boundary = _parse_boundary(args.boundary) or choose_boundary(g, args.d)
    if boundary is None:
        raise InvalidInput(f"No K_{args.d + 1} boundary found; pass --boundary")
    points = None
    if args.boundary_points is not None:
        placed = load_configuration(args.boundary_points)
        if placed.n != len(boundary):
            raise InvalidInput(f"{placed.n} boundary points for {len(boundary)} boundary vertices")
        points = {v: tuple(row) for v, row in zip(boundary, placed.points)}
    weights = load_weights(args.weights) if args.weights is not None else None
    result = algorithm3(
        g,
        boundary,
        points,
        weights,
        seed=args.seed,
        d=args.d,
        rel_tol=args.tol,
        mixed_sign=args.mixed_sign,
    )
    _record_scalar(args, result.config)
    return rubber_band_to_dict(result)


def cmd_sym_extensive(args: argparse.Namespace) -> Dict[str, Any]:
    g = load_graph(args.graph)
    search = algorithm4(
        g,
        seed=args.seed,
        trials=args.trials,
        profile_trials=args.profile_trials,
        aut_cap=args.aut_cap,
    )
    return search_to_dict(search)


def cmd_average(args: argparse.Namespace) -> Dict[str, Any]:
    g = load_graph(args.graph)
    pair = load_symmetry(args.sym, g)
    config = _configuration(args, args.config)
    avg = _record_scalar(args, average(pair, config, mode=args.scalar))
    return {
        "config": configuration_to_dict(avg),
        "symmetric": is_symmetric(pair, avg),
        "pair": str(pair),
    }


def cmd_classify_stress(args: argparse.Namespace) -> Dict[str, Any]:
    g = load_graph(args.graph)
    fw = _framework(args, g)
    pair = load_symmetry(args.sym, g) if args.sym is not None else None
    group = pair.group if pair is not None else Subgroup.trivial(g.n)
    result = classify(group, fw, rel_tol=args.tol, cap=args.orbit_cap)
    if args.svg is not None:
        omega = result.extensive_stress
        if omega is None and result.verdicts:
            omega = result.verdicts[0].stress
        save_svg(args.svg, fw, omega, pair)
    return classification_to_dict(result)


def cmd_lift(args: argparse.Namespace) -> Dict[str, Any]:
    g = load_graph(args.graph)
    fw = _framework(args, g)
    omega = _stress_or_first(args, fw)
    lf = maxwell_cremona_lift(fw, omega, args.tol)
    out = lift_to_dict(lf)
    out["stress"] = stress_to_list(omega)
    return out


def cmd_resolve_loads(args: argparse.Namespace) -> Dict[str, Any]:
    g = load_graph(args.graph)
    lf = load_lift(args.lift, g)
    _record_scalar(args, lf.config)
    loads = load_loads(args.loads)
    resolved = vertical_resolvability(lf, loads, args.tol)
    stresses = []
    for load, feasible in zip(loads, resolved.feasible):
        if not feasible:
            stresses.append(None)
            continue
        try:
            stresses.append(projection_stress_to_dict(projection_stress(lf, load, args.tol)))
        except (Infeasible, NotASelfStress) as exc:
            logger.info("Load resolved only modulo trivial motions: %s", exc)
            stresses.append(None)
    out = resolvability_to_dict(resolved)
    out["stresses"] = stresses
    return out


def cmd_error_bound(args: argparse.Namespace) -> Dict[str, Any]:
    g = load_graph(args.graph)
    lf = load_lift(args.lift, g)
    _record_scalar(args, lf.config)
    omega = load_stress(args.stress, g)
    e = load_configuration(args.error)
    return error_budget_to_dict(residual_check(omega, lf, e, eps=args.eps))


def cmd_render(args: argparse.Namespace) -> Dict[str, Any]:
    g = load_graph(args.graph)
    fw = _framework(args, g)
    omega = load_stress(args.stress, g) if args.stress is not None else None
    pair = load_symmetry(args.sym, g) if args.sym is not None else None
    save_svg(args.out, fw, omega, pair)
    return {"svg": str(args.out), "vertices": g.n, "edges": g.m}


COMMANDS: Dict[str, Callable[[argparse.Namespace], Dict[str, Any]]] = {
    "analyze": cmd_analyze,
    "automorphisms": cmd_automorphisms,
    "maxwell-scan": cmd_maxwell_scan,
    "pure-condition": cmd_pure_condition,
    "rubberband": cmd_rubberband,
    "sym-extensive": cmd_sym_extensive,
    "average": cmd_average,
    "classify-stress": cmd_classify_stress,
    "lift": cmd_lift,
    "resolve-loads": cmd_resolve_loads,
    "error-bound": cmd_error_bound,
    "render": cmd_render,
}


# ----------------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------------


def _common_options() -> argparse.ArgumentParser:
    common = CommandParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="root random seed")
    common.add_argument(
        "--scalar",
        choices=SCALAR_MODES,
        default=None,
        help="scalar mode (default: rational unless the inputs hold floats)",
    )
    common.add_argument(
        "--tol", type=float, default=DEFAULT_RANK_TOL, help="relative rank threshold"
    )
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("-v", "--verbose", action="count", default=0, help="more logging")
    common.add_argument("--output", type=Path, help="also write the report to this file")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = CommandParser(
        prog=APP_NAME, description="Self-stress analysis of bar-joint frameworks"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_options()

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("--graph", type=Path, required=True, help="graph JSON")
        return p

    p = add("analyze", "Maxwell count, generic counts and stresses of a framework")
    p.add_argument("--config", type=Path, help="configuration JSON")
    p.add_argument("--svg", type=Path, help="draw the framework with its first stress")

    p = add("automorphisms", "Automorphism group of the graph")
    p.add_argument("--aut-cap", type=int, default=AUT_GROUP_CAP)
    p.add_argument("--subgroups", action="store_true", help="also list every subgroup")

    p = add("maxwell-scan", "Symmetry-extended Maxwell scan over all symmetric pairs")
    p.add_argument("--verify", action="store_true", help="realise each pair and count stresses")
    p.add_argument("--no-probe", action="store_true", help="skip the crossing probe")
    p.add_argument("--aut-cap", type=int, default=AUT_GROUP_CAP)

    p = add("pure-condition", "Factor the pure condition and find extensive factors")
    p.add_argument("--trials", type=int, default=PROFILE_TRIALS)
    p.add_argument("--polynomial-out", type=Path, help="write the pure condition polynomial")

    p = add("rubberband", "Rubber-band construction of a self-stressed framework")
    p.add_argument("--boundary", help="comma-separated boundary vertices")
    p.add_argument("--boundary-points", type=Path, help="configuration JSON, boundary order")
    p.add_argument("--weights", type=Path, help="weights JSON")
    p.add_argument("--mixed-sign", action="store_true", help="random weights of both signs")
    p.add_argument("-d", type=int, default=2, help="dimension")

    p = add("sym-extensive", "Symmetric realisations carrying an extensive stress")
    p.add_argument("--trials", type=int, default=INVARIANCE_TRIALS)
    p.add_argument("--profile-trials", type=int, default=PROFILE_TRIALS)
    p.add_argument("--aut-cap", type=int, default=AUT_GROUP_CAP)

    p = add("average", "Symmetric average of a configuration")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--sym", type=Path, required=True, help="symmetry JSON")

    p = add("classify-stress", "Localised and extensive stress classification")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--sym", type=Path, help="symmetry JSON (trivial group when omitted)")
    p.add_argument("--orbit-cap", type=int, default=ORBIT_PRODUCT_CAP)
    p.add_argument("--svg", type=Path)

    p = add("lift", "Polyhedral lift of a plane framework from a self-stress")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--stress", type=Path, help="stress JSON (first basis stress when omitted)")

    p = add("resolve-loads", "Vertical loads resolvable by the gridshell")
    p.add_argument("--lift", type=Path, required=True)
    p.add_argument("--loads", type=Path, required=True)

    p = add("error-bound", "Load error of a stress under fabrication perturbation")
    p.add_argument("--lift", type=Path, required=True)
    p.add_argument("--stress", type=Path, required=True)
    p.add_argument("--error", type=Path, required=True, help="perturbation configuration JSON")
    p.add_argument("--eps", type=float, help="load tolerance for the diameter bound")

    p = add("render", "Draw a framework as SVG")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--stress", type=Path)
    p.add_argument("--sym", type=Path)
    p.add_argument("--out", type=Path, required=True)
    return parser


def _setup_logging(verbose: int) -> None:
    level = logging.WARNING - 10 * min(verbose, 2)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logging.captureWarnings(True)


def _report(args: argparse.Namespace, result: Dict[str, Any]) -> AnalysisReport:
    inputs = {}
    for name in INPUT_OPTIONS:
        path = getattr(args, name, None)
        if path is not None:
            inputs[name] = file_digest(path)
    return AnalysisReport(
        command=args.command,
        inputs=inputs,
        seed=args.seed,
        scalar=getattr(args, "effective_scalar", None) or args.scalar or SCALAR_RATIONAL,
        tolerances={
            "rank": args.tol,
            "support": DEFAULT_SUPPORT_TOL,
            "symmetry": DEFAULT_SYMMETRY_TOL,
        },
        versions=package_versions(),
        result=result,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(exc, file=sys.stderr)
        return 1
    _setup_logging(args.verbose)
    logger.debug("Running %s", args.command)
    try:
        result = COMMANDS[args.command](args)
        text = write_report(_report(args, result), args.output)
    except SymframeError as exc:
        print(f"{APP_NAME}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
