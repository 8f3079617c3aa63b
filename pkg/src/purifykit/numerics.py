"""Dense complex linear-algebra primitives used by every other module.

Operators are plain numpy arrays with complex entries; state vectors are
one-dimensional unit-norm arrays. The validators here are the single
place where those conventions are enforced.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NotHermitian,
    NotNormalized,
    NotOrthonormal,
    NotSquare,
    TooManyRows,
)


@dataclass(frozen=True)
class Tolerances:
    """Default tolerances for the numeric contracts, one knob per check."""

    hermiticity: float = 1e-10
    orthonormality: float = 1e-10
    unitarity: float = 1e-10
    reconstruction: float = 1e-9
    norm: float = 1e-12
    trace: float = 1e-12
    completion_floor: float = 1e-8


TOL = Tolerances()


def dag(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(m).T


def max_abs(values) -> float:
    """Largest entry magnitude; zero for empty input."""
    arr = np.asarray(values)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex array."""
    mat = np.asarray(m, dtype=complex)
    if mat.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise ValueError("matrix entries must be finite")
    return mat


def as_state(v, tol: float | None = None) -> np.ndarray:
    """Coerce to a finite 1-D complex array of unit Euclidean norm."""
    vec = np.asarray(v, dtype=complex)
    if vec.ndim != 1 or vec.size == 0:
        raise DimensionMismatch(f"expected a 1-D state vector, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise ValueError("state amplitudes must be finite")
    tol = TOL.norm if tol is None else tol
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > tol:
        raise NotNormalized(f"state norm {norm} differs from 1 by more than {tol}")
    return vec


def basis_state(dim: int, index: int) -> np.ndarray:
    """Standard basis column e_index in the given dimension."""
    vec = np.zeros(dim, dtype=complex)
    vec[index] = 1.0
    return vec


def state_fidelity(a, b) -> float:
    """|<a|b>| for unit vectors; equals 1 iff the states agree up to a global phase."""
    return float(abs(np.vdot(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))))


def hermitian_eig(m, tol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns the real eigenvalues in descending order together with the
    matching orthonormal eigenvectors as columns.
    """
    mat = as_matrix(m)
    if mat.shape[0] != mat.shape[1]:
        raise NotSquare(f"matrix is {mat.shape[0]}x{mat.shape[1]}, must be square")
    tol = TOL.hermiticity if tol is None else tol
    if max_abs(mat - dag(mat)) > tol:
        raise NotHermitian(f"matrix deviates from its adjoint by more than {tol}")
    values, vectors = np.linalg.eigh(mat)
    return values[::-1].copy(), np.ascontiguousarray(vectors[:, ::-1])


def partial_trace_k(m, dim_s: int, dim_k: int) -> np.ndarray:
    """Trace out the second (reference) factor of an operator on S x K.

    Joint indices are row-major: (s, k) -> s * dim_k + k.
    """
    mat = as_matrix(m)
    side = dim_s * dim_k
    if mat.shape != (side, side):
        raise DimensionMismatch(
            f"operator of side {mat.shape[0]} does not factor as {dim_s} x {dim_k}"
        )
    return np.einsum("ikjk->ij", mat.reshape(dim_s, dim_k, dim_s, dim_k))


def mat_exp_hermitian(h, scale: float = 1.0) -> np.ndarray:
    """exp(-i * scale * h) for Hermitian h, computed spectrally."""
    values, vectors = hermitian_eig(h)
    phases = np.exp(-1j * scale * values)
    return (vectors * phases) @ dag(vectors)


def gram_schmidt_complete(rows, target_dim: int) -> np.ndarray:
    """Complete orthonormal rows to a full target_dim x target_dim unitary.

    The given rows are kept verbatim as the leading rows of the output.
    Candidate directions are the standard basis vectors swept in index
    order; a candidate is skipped when its component orthogonal to the
    rows collected so far is shorter than ``TOL.completion_floor``.
    """
    stack = [np.asarray(row, dtype=complex) for row in rows]
    if len(stack) > target_dim:
        raise TooManyRows(f"{len(stack)} rows cannot fit in dimension {target_dim}")
    for row in stack:
        if row.shape != (target_dim,):
            raise DimensionMismatch(f"every row must have length {target_dim}")
    if stack:
        given = np.array(stack)
        if max_abs(given @ dag(given) - np.eye(len(stack))) > TOL.orthonormality:
            raise NotOrthonormal(
                f"input rows are not pairwise orthonormal within {TOL.orthonormality}"
            )
    for index in range(target_dim):
        if len(stack) == target_dim:
            break
        candidate = basis_state(target_dim, index)
        for _ in range(2):  # second sweep keeps fp drift below the unitarity check
            for row in stack:
                candidate = candidate - row * np.vdot(row, candidate)
        length = float(np.linalg.norm(candidate))
        if length <= TOL.completion_floor:
            continue
        stack.append(candidate / length)
    if len(stack) != target_dim:
        raise RuntimeError("standard-basis sweep failed to complete the unitary")
    return np.array(stack)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed random unitary via QR of a complex Gaussian matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z / np.sqrt(2.0))
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))
