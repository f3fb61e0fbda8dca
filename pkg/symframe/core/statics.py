"""Gridshell statics: projections, vertical loads, liftings and fabrication error."""

import logging
import math
import warnings
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.spatial.distance import pdist

from symframe.core import linalg
from symframe.core.framework_core import (
    equilibrium_residual,
    is_self_stress,
    rigidity_matrix,
    self_stress_basis,
    trivial_motions,
)
from symframe.core.graph_core import count_crossings
from symframe.errors import (
    CoincidentPointsWarning,
    InvalidInput,
    NonPlanarInput,
    NotASelfStress,
)
from symframe.models.framework import Configuration, Framework
from symframe.models.graph import Edge, normalise_edge
from symframe.models.statics import (
    ErrorBudget,
    LiftedFramework,
    LoadVector,
    ProjectionStress,
    Resolvability,
)
from symframe.utils.constants import DEFAULT_RANK_TOL, SCALAR_FLOAT, SCALAR_RATIONAL

logger = logging.getLogger(__name__)

Face = Tuple[int, ...]


def _is_exact_vector(v) -> bool:
    return all(isinstance(x, (Fraction, int)) for x in np.asarray(v).flat)


def _mode_for(config: Configuration, *vectors) -> str:
    if config.is_exact and all(_is_exact_vector(v) for v in vectors):
        return SCALAR_RATIONAL
    return SCALAR_FLOAT


def _as_mode(vec, mode: str) -> np.ndarray:
    if mode == SCALAR_RATIONAL:
        return np.array([Fraction(x) for x in np.asarray(vec).flat], dtype=object)
    return np.asarray(vec, dtype=float).reshape(-1)


def _lifted_framework(lf: LiftedFramework, mode: str) -> Framework:
    config = lf.config if lf.config.scalar == mode else lf.config.to_float()
    return Framework(lf.graph, config)


# ----------------------------------------------------------------------------
# Projection and vertical loads
# ----------------------------------------------------------------------------


def project(lf: LiftedFramework) -> Framework:
    """Orthogonal projection to the xy-plane; coincident projected points are flagged."""
    points = [list(row[:2]) for row in lf.config.points]
    config = Configuration(points, scalar=lf.config.scalar, d=2)
    pairs = config.coincident_pairs()
    if pairs:
        warnings.warn(
            f"Projection has coincident points at {pairs}", CoincidentPointsWarning, stacklevel=2
        )
    return Framework(lf.graph, config)


def _require_vertical(load: LoadVector, n: int) -> None:
    if load.n != n:
        raise InvalidInput(f"Load has {load.n} vectors but the graph has {n} vertices")
    if not load.is_vertical:
        raise InvalidInput("Load has horizontal components")


def projection_stress(
    lf: LiftedFramework, load: LoadVector, rel_tol: float = DEFAULT_RANK_TOL
) -> ProjectionStress:
    """Axial forces omega with omega^T R(p~) = f^T for a vertical load f.

    The horizontal equations of such a resolution are exactly the
    equilibrium equations of the projection, so omega is returned together
    with the certificate that it is a self-stress of the projected framework.

    Raises:
        InvalidInput: If the load is not vertical
        Infeasible: If the load is not resolvable
        NotASelfStress: If the projection certificate fails
    """
    _require_vertical(load, lf.graph.n)
    mode = _mode_for(lf.config, load.vector())
    fw3 = _lifted_framework(lf, mode)
    f = _as_mode(load.vector(), mode)
    r = rigidity_matrix(fw3)
    omega, residual, _ = linalg.solve(np.array(r.T), f, mode, rel_tol)
    projected = project(lf)
    if mode == SCALAR_FLOAT:
        projected = Framework(projected.graph, projected.config.to_float())
    if not is_self_stress(projected, omega, max(rel_tol, 1e-9)):
        raise NotASelfStress("Resolution of a vertical load is not a self-stress of the projection")
    projected_residual = linalg.norm(equilibrium_residual(projected, omega))
    logger.debug("Vertical load resolved with residual %.3e", residual)
    return ProjectionStress(stress=omega, residual=residual, projected_residual=projected_residual)


def induced_load(lf: LiftedFramework, omega: np.ndarray) -> LoadVector:
    """The load omega^T R(p~) balanced by omega; vertical when omega stresses the projection."""
    mode = _mode_for(lf.config, omega)
    values = equilibrium_residual(_lifted_framework(lf, mode), _as_mode(omega, mode))
    return LoadVector(np.asarray(values).reshape(-1, 3))


def vertical_resolvability(
    lf: LiftedFramework, loads: Sequence[LoadVector], rel_tol: float = DEFAULT_RANK_TOL
) -> Resolvability:
    """Which vertical loads are resolved by self-stresses of the projection, modulo T.

    V is spanned by omega^T R(p~) over a basis of projection self-stresses and
    T by the trivial motions of p~. A load f is feasible when it lies in
    V + T; the resolved dimension is dim(V + T) - dim(T).

    Raises:
        InvalidInput: If a load is not vertical
    """
    for load in loads:
        _require_vertical(load, lf.graph.n)
    mode = _mode_for(lf.config, *(load.vector() for load in loads))
    projected = project(lf)
    if mode == SCALAR_FLOAT:
        projected = Framework(projected.graph, projected.config.to_float())
    basis = self_stress_basis(projected, rel_tol)
    fw3 = _lifted_framework(lf, mode)
    dn = 3 * lf.graph.n
    v = (
        linalg.matmul(basis.vectors, rigidity_matrix(fw3))
        if basis.s
        else linalg.zeros((0, dn), mode)
    )
    t = trivial_motions(fw3.config)
    vt = np.vstack([v, t]) if v.shape[0] else t
    rank_vt = linalg.rank(vt, mode, rel_tol) if vt.shape[0] else 0
    rank_t = linalg.rank(t, mode, rel_tol) if t.shape[0] else 0
    feasible = []
    for load in loads:
        f = _as_mode(load.vector(), mode).reshape(1, -1)
        stacked = np.vstack([vt, f]) if vt.shape[0] else f
        feasible.append(linalg.rank(stacked, mode, rel_tol) == rank_vt)
    result = Resolvability(
        feasible=tuple(feasible), resolved_dim=rank_vt - rank_t, stress_dim=basis.s
    )
    logger.info(
        "Projection stresses resolve a %d-dimensional load space (s=%d)",
        result.resolved_dim,
        basis.s,
    )
    return result


# ----------------------------------------------------------------------------
# Faces and liftings
# ----------------------------------------------------------------------------


def _shoelace(points: List[Tuple[float, float]]) -> float:
    area = 0.0
    for (x1, y1), (x2, y2) in zip(points, points[1:] + points[:1]):
        area += x1 * y2 - x2 * y1
    return area / 2


def plane_embedding(fw: Framework) -> nx.PlanarEmbedding:
    """Rotation system of a crossing-free straight-line drawing.

    Raises:
        NonPlanarInput: If edges cross, overlap or meet at a T-junction
        InvalidInput: If the graph is disconnected or d != 2
    """
    if fw.d != 2:
        raise InvalidInput(f"Faces need a planar drawing, got d={fw.d}")
    g = fw.graph
    if g.n > 1 and not nx.is_connected(g.to_networkx()):
        raise InvalidInput("Face tracing needs a connected graph")
    report = count_crossings(g, fw.config)
    if not report.is_plane:
        raise NonPlanarInput(
            f"Drawing has {report.crossings} crossings, {len(report.overlaps)} overlaps "
            f"and {len(report.touchings)} T-junctions"
        )
    emb = nx.PlanarEmbedding()
    data = {}
    for v in g.vertices:
        pv = fw.config[v]

        def angle(u: int, pv=pv) -> float:
            du = fw.config[u] - pv
            return math.atan2(float(du[1]), float(du[0]))

        data[v] = sorted(g.neighbours(v), key=angle, reverse=True)
    emb.set_data(data)
    return emb


def planar_faces(fw: Framework) -> Tuple[Tuple[Face, ...], int]:
    """Faces of a crossing-free drawing and the index of the outer face.

    The outer face is the one of largest absolute area.
    """
    emb = plane_embedding(fw)
    visited = set()
    faces: List[Face] = []
    for u, v in sorted(emb.edges()):
        if (u, v) in visited:
            continue
        faces.append(tuple(emb.traverse_face(u, v, mark_half_edges=visited)))
    if not faces:
        return (), -1
    areas = [
        abs(_shoelace([(float(fw.config[v][0]), float(fw.config[v][1])) for v in face]))
        for face in faces
    ]
    outer = int(np.argmax(areas))
    return tuple(faces), outer


def _half_edge_faces(faces: Sequence[Face]) -> Dict[Tuple[int, int], int]:
    """Map each half-edge to the face traversed along it."""
    owner = {}
    for k, face in enumerate(faces):
        for a, b in zip(face, face[1:] + face[:1]):
            owner[(a, b)] = k
    return owner


def maxwell_cremona_lift(
    fw: Framework, omega: np.ndarray, rel_tol: float = DEFAULT_RANK_TOL
) -> LiftedFramework:
    """Polyhedral lift of a plane framework from a self-stress.

    Each face carries an affine height z = g.x + c; the outer face is flat.
    Crossing edge uv from the face on one side to the other changes the
    gradient by omega_uv J(p_v - p_u), J the quarter turn, with the offset
    chosen so both functions agree along the edge. The heights are then
    checked to be consistent around every vertex.

    Raises:
        NotASelfStress: If omega is not a self-stress or the heights do not close up
        NonPlanarInput: If the drawing has crossings
        InvalidInput: If the graph is disconnected
    """
    g = fw.graph
    if len(omega) != g.m:
        raise InvalidInput(f"Stress has {len(omega)} entries for {g.m} edges")
    if not is_self_stress(fw, omega, rel_tol):
        raise NotASelfStress("Lifting needs a self-stress")
    mode = _mode_for(fw.config, omega)
    config = fw.config if fw.config.scalar == mode else fw.config.to_float()
    w = _as_mode(omega, mode)
    zero = Fraction(0) if mode == SCALAR_RATIONAL else 0.0

    faces, outer = planar_faces(fw)
    if not faces:
        pts = [list(p) + [zero] for p in config.points]
        return LiftedFramework(g, Configuration(pts, scalar=mode, d=3), (), None)

    owner = _half_edge_faces(faces)
    index = g.edge_index
    grad: Dict[int, np.ndarray] = {outer: np.array([zero, zero], dtype=object)}
    offset: Dict[int, object] = {outer: zero}
    queue = [outer]
    while queue:
        fk = queue.pop(0)
        for a, b in zip(faces[fk], faces[fk][1:] + faces[fk][:1]):
            other = owner[(b, a)]
            if other in grad:
                continue
            pa, pb = config[a], config[b]
            d = pb - pa
            jump = w[index[normalise_edge(a, b)]] * np.array([-d[1], d[0]], dtype=object)
            grad[other] = grad[fk] - jump
            offset[other] = offset[fk] + np.dot(grad[fk] - grad[other], pa)
            queue.append(other)

    heights: Dict[int, object] = {}
    scale = max(linalg.norm(w), 1.0) * max(
        float(np.max(np.abs(config.points.astype(float)))) if g.n else 1.0, 1.0
    ) ** 2
    for fk, face in enumerate(faces):
        for v in face:
            z = np.dot(grad[fk], config[v]) + offset[fk]
            if v not in heights:
                heights[v] = z
                continue
            gap = z - heights[v]
            if (gap != 0) if mode == SCALAR_RATIONAL else abs(float(gap)) > 1e-9 * scale:
                raise NotASelfStress(f"Face heights disagree at vertex {v}")

    pts = [list(config[v]) + [heights.get(v, zero)] for v in g.vertices]
    if mode == SCALAR_FLOAT:
        pts = [[float(x) for x in row] for row in pts]
    lifted = Configuration(pts, scalar=mode, d=3)
    logger.info("Lifted %d faces (outer face %d)", len(faces), outer)
    return LiftedFramework(g, lifted, faces, outer)


def face_is_planar(lf: LiftedFramework, face: Face, tol: float = 1e-9) -> bool:
    """Whether the lifted vertices of a face are coplanar."""
    pts = [lf.config[v] for v in face]
    if len(pts) <= 3:
        return True
    base = pts[0]
    diffs = np.array([p - base for p in pts[1:]], dtype=lf.config.points.dtype)
    return linalg.rank(diffs, lf.config.scalar, tol) <= 2


# ----------------------------------------------------------------------------
# Fabrication error
# ----------------------------------------------------------------------------


def perturbation_bound(m: int, omega_norm: float, eps: float) -> float:
    """Largest diam(e) keeping the load error below eps: eps / (2 sqrt(m) ||omega||).

    Examples:
        >>> round(perturbation_bound(9, 1.0, 1e-3), 10)
        0.0001666667
    """
    if m <= 0 or omega_norm == 0:
        return math.inf
    return eps / (2 * math.sqrt(m) * omega_norm)


def diameter(e: Configuration) -> float:
    """diam(e) = max ||e_i - e_j||."""
    if e.n < 2:
        return 0.0
    return float(np.max(pdist(np.asarray(e.points, dtype=float))))


def residual_check(
    omega: np.ndarray,
    lf: LiftedFramework,
    e: Configuration,
    load: Optional[LoadVector] = None,
    eps: Optional[float] = None,
) -> ErrorBudget:
    """Load error of omega on the perturbed structure p~ + e against its bound.

    The observed residual ||omega^T R(p~ + e) - f^T|| never exceeds
    2 sqrt(m) diam(e) ||omega|| when f = omega^T R(p~). With no load given,
    f is taken to be that resolved load.
    """
    g = lf.graph
    if e.n != g.n or e.d != lf.config.d:
        raise InvalidInput(f"Perturbation of {e.n} points in R^{e.d} does not match the lift")
    w = np.asarray(omega, dtype=float)
    base = np.asarray(lf.config.points, dtype=float)
    pert = base + np.asarray(e.points, dtype=float)
    if load is None:
        target = np.asarray(induced_load(lf, omega).vector(), dtype=float)
    else:
        target = np.asarray(load.vector(), dtype=float)
    perturbed = Framework(g, Configuration(pert.tolist(), scalar=SCALAR_FLOAT, d=3))
    observed = float(np.linalg.norm(w @ rigidity_matrix(perturbed) - target))
    m = g.m
    omega_norm = float(np.linalg.norm(w))
    diam = diameter(e)
    return ErrorBudget(
        m=m,
        omega_norm=omega_norm,
        diameter=diam,
        residual=observed,
        residual_bound=2 * math.sqrt(m) * diam * omega_norm,
        eps=eps,
        diameter_bound=perturbation_bound(m, omega_norm, eps) if eps is not None else None,
    )
