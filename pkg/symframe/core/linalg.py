"""Exact and floating linear algebra shared by the rigidity modules.

Rational matrices are numpy object arrays of ``Fraction``; their kernels
and ranks are computed with sympy's ``DomainMatrix`` over ``QQ``.
Floating matrices use scipy's SVD with a threshold relative to the
largest singular value.
"""

import logging
import math
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np
import scipy.linalg
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from symframe.errors import Infeasible
from symframe.utils.constants import DEFAULT_RANK_TOL, SCALAR_FLOAT, SCALAR_RATIONAL
from symframe.utils.helpers import to_fraction

logger = logging.getLogger(__name__)


def zeros(shape: Tuple[int, ...], mode: str) -> np.ndarray:
    """Zero array in the given scalar mode."""
    if mode == SCALAR_RATIONAL:
        arr = np.empty(shape, dtype=object)
        arr.fill(Fraction(0))
        return arr
    return np.zeros(shape, dtype=float)


def identity(n: int, mode: str) -> np.ndarray:
    arr = zeros((n, n), mode)
    for i in range(n):
        arr[i, i] = Fraction(1) if mode == SCALAR_RATIONAL else 1.0
    return arr


def _to_domain(matrix: np.ndarray) -> DomainMatrix:
    rows, cols = matrix.shape
    data = []
    for row in matrix:
        fracs = [to_fraction(x) for x in row]
        data.append([QQ(f.numerator, f.denominator) for f in fracs])
    return DomainMatrix(data, (rows, cols), QQ)


def _from_domain(dm: DomainMatrix) -> np.ndarray:
    rows, cols = dm.shape
    out = np.empty((rows, cols), dtype=object)
    for i, row in enumerate(dm.to_Matrix().tolist()):
        for j, x in enumerate(row):
            out[i, j] = Fraction(int(x.p), int(x.q))
    return out


def primitive_row(vec: np.ndarray) -> np.ndarray:
    """Scale a rational vector to coprime integers with a positive first non-zero entry."""
    entries = [to_fraction(x) for x in vec]
    nonzero = [x for x in entries if x != 0]
    if not nonzero:
        return np.array(entries, dtype=object)
    lcm = math.lcm(*(x.denominator for x in nonzero))
    ints = [int(x * lcm) for x in entries]
    g = math.gcd(*ints)
    sign = 1 if next(x for x in ints if x != 0) > 0 else -1
    return np.array([Fraction(sign * x // g) for x in ints], dtype=object)


def rank(matrix: np.ndarray, mode: str, rel_tol: float = DEFAULT_RANK_TOL) -> int:
    """Rank of a matrix; exact over QQ or thresholded SVD.

    Examples:
        >>> import numpy as np
        >>> rank(np.array([[1.0, 2.0], [2.0, 4.0]]), "float")
        1
    """
    if matrix.size == 0:
        return 0
    if mode == SCALAR_RATIONAL:
        return int(_to_domain(matrix).rank())
    sigma = scipy.linalg.svdvals(np.asarray(matrix, dtype=float))
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.sum(sigma > rel_tol * sigma[0]))


def kernel(matrix: np.ndarray, mode: str, rel_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Basis of the right kernel, one vector per row.

    Rational mode returns primitive integer vectors; floating mode returns
    an orthonormal basis.

    Args:
        matrix: (r, c) array
        mode: Scalar mode
        rel_tol: Relative singular-value threshold (floating mode)

    Returns:
        (k, c) array
    """
    rows, cols = matrix.shape
    if cols == 0:
        return zeros((0, 0), mode)
    if rows == 0:
        return identity(cols, mode)
    if mode == SCALAR_RATIONAL:
        if all(to_fraction(x) == 0 for x in matrix.flat):
            return identity(cols, mode)
        basis = _from_domain(_to_domain(matrix).nullspace())
        if basis.shape[0] == 0:
            return zeros((0, cols), mode)
        return np.array([primitive_row(v) for v in basis], dtype=object).reshape(-1, cols)
    dense = np.asarray(matrix, dtype=float)
    if not np.any(dense):
        return np.eye(cols)
    return scipy.linalg.null_space(dense, rcond=rel_tol).T


def left_kernel(matrix: np.ndarray, mode: str, rel_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Basis of {w : w^T M = 0}, one vector per row."""
    return kernel(matrix.T, mode, rel_tol)


def row_basis(vectors: np.ndarray, mode: str, rel_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Linearly independent subset of the rows spanning the same space.

    Rows are scanned in order and kept when they raise the rank.
    """
    if vectors.shape[0] == 0:
        return vectors
    kept = []
    current = 0
    for k in range(vectors.shape[0]):
        trial = np.array(kept + [vectors[k]], dtype=vectors.dtype)
        r = rank(trial, mode, rel_tol)
        if r > current:
            kept.append(vectors[k])
            current = r
    if not kept:
        return vectors[:0]
    return np.array(kept, dtype=vectors.dtype).reshape(len(kept), vectors.shape[1])


def in_row_span(
    vector: np.ndarray, span: np.ndarray, mode: str, rel_tol: float = DEFAULT_RANK_TOL
) -> bool:
    """True if ``vector`` lies in the row space of ``span``."""
    if span.shape[0] == 0:
        if mode == SCALAR_RATIONAL:
            return all(to_fraction(x) == 0 for x in vector)
        return not np.any(np.abs(np.asarray(vector, dtype=float)) > 0)
    stacked = np.vstack([span, np.asarray(vector, dtype=span.dtype).reshape(1, -1)])
    return rank(stacked, mode, rel_tol) == rank(span, mode, rel_tol)


def solve(
    a: np.ndarray, b: np.ndarray, mode: str, rel_tol: float = DEFAULT_RANK_TOL
) -> Tuple[np.ndarray, float, bool]:
    """Solve a x = b.

    Rational mode returns an exact particular solution (free variables set
    to zero). Floating mode returns the least-squares minimum-norm solution.

    Args:
        a: (r, c) coefficient matrix
        b: length-r right-hand side
        mode: Scalar mode
        rel_tol: Relative threshold for consistency in floating mode

    Returns:
        Tuple of (x, residual norm, unique) where ``unique`` tells whether the
        solution is the only one

    Raises:
        Infeasible: If the system is inconsistent
    """
    rows, cols = a.shape
    if mode == SCALAR_RATIONAL:
        aug = np.empty((rows, cols + 1), dtype=object)
        aug[:, :cols] = a
        aug[:, cols] = b
        if rows == 0:
            return zeros((cols,), mode), 0.0, cols == 0
        reduced, pivots = _to_domain(aug).rref()
        pivots = tuple(pivots)
        if cols in pivots:
            residual = _lstsq_residual(a, b)
            raise Infeasible(
                f"Linear system is inconsistent (least-squares residual {residual:.3e})",
                residual=residual,
            )
        red = _from_domain(reduced)
        x = zeros((cols,), mode)
        for r, c in enumerate(pivots):
            x[c] = red[r, cols] / red[r, c]
        return x, 0.0, len(pivots) == cols
    dense_a = np.asarray(a, dtype=float).reshape(rows, cols)
    dense_b = np.asarray(b, dtype=float).reshape(rows)
    if cols == 0:
        res = float(np.linalg.norm(dense_b))
        return np.zeros(0), res, True
    x, _, r, sigma = scipy.linalg.lstsq(dense_a, dense_b, cond=rel_tol)
    residual = float(np.linalg.norm(dense_a @ x - dense_b))
    scale = max(float(np.linalg.norm(dense_b)), float(np.max(np.abs(dense_a))), 1.0)
    if residual > np.sqrt(rel_tol) * scale:
        raise Infeasible(
            f"Linear system is inconsistent (residual {residual:.3e})", residual=residual
        )
    return x, residual, int(r) == cols


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product that keeps object dtype for rational arrays."""
    return np.dot(a, b)


def norm(vec: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(vec, dtype=float)))


def is_zero(vec: np.ndarray, mode: str, tol: Optional[float] = None) -> bool:
    """Exact zero test in rational mode; max-abs threshold in floating mode."""
    if mode == SCALAR_RATIONAL:
        return all(to_fraction(x) == 0 for x in np.asarray(vec).flat)
    arr = np.abs(np.asarray(vec, dtype=float))
    return bool(arr.size == 0 or np.max(arr) <= (tol if tol is not None else 0.0))


__all__ = [
    "SCALAR_FLOAT",
    "SCALAR_RATIONAL",
    "identity",
    "in_row_span",
    "is_zero",
    "kernel",
    "left_kernel",
    "matmul",
    "norm",
    "primitive_row",
    "rank",
    "row_basis",
    "solve",
    "zeros",
]


def _lstsq_residual(a: np.ndarray, b: np.ndarray) -> float:
    dense_a = np.asarray(a, dtype=float).reshape(a.shape)
    dense_b = np.asarray(b, dtype=float).reshape(-1)
    if dense_a.shape[1] == 0:
        return float(np.linalg.norm(dense_b))
    x = scipy.linalg.lstsq(dense_a, dense_b)[0]
    return float(np.linalg.norm(dense_a @ x - dense_b))
