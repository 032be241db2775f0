"""Dense complex linear algebra with tolerance-aware rank decisions.

Provides the Hilbert-Schmidt inner product, Hermitian spectral analysis with
gap-based eigenvalue clustering, and a subspace lattice built on orthonormal
column bases.  All rank decisions (span membership, null spaces, eigenvalue
clustering) route through a single :class:`Tolerance` value so that verdicts
stay consistent across modules.

Everything here is a pure function over immutable values; concurrent use
needs no synchronization.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NotHermitian

__all__ = [
    "DEFAULT_RESIDUAL_TOL",
    "RANK_TOL_PER_DIM",
    "EigenCluster",
    "SpectralDecomposition",
    "Subspace",
    "Tolerance",
    "adjoint",
    "as_square_matrix",
    "commutator",
    "frobenius",
    "hermitian_spectral",
    "hs_inner",
    "is_hermitian",
    "orthonormalize",
    "require_hermitian",
    "resolve_tolerance",
    "subspace_join",
    "subspace_meet",
    "unitary_from_hermitian",
]

DEFAULT_RESIDUAL_TOL = 1e-8
RANK_TOL_PER_DIM = 1e-9


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds shared by every rank and acceptance decision.

    ``rank_tol`` cuts singular values and eigenvalue gaps; ``residual_tol``
    accepts or rejects norm residuals (membership, Hermiticity, commutators).
    """

    rank_tol: float
    residual_tol: float = DEFAULT_RESIDUAL_TOL

    def __post_init__(self) -> None:
        if self.rank_tol <= 0.0 or self.residual_tol <= 0.0:
            raise ValueError("tolerances must be positive")

    @classmethod
    def default(cls, dim: int) -> "Tolerance":
        return cls(rank_tol=RANK_TOL_PER_DIM * dim, residual_tol=DEFAULT_RESIDUAL_TOL)


def resolve_tolerance(dim: int, tol: Tolerance | None) -> Tolerance:
    """Fall back to the dimension-scaled default when no tolerance is given."""
    return tol if tol is not None else Tolerance.default(dim)


def as_square_matrix(A, *, dim: int | None = None, what: str = "matrix") -> np.ndarray:
    """Coerce to a square complex array, rejecting non-finite entries."""
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"{what} must be square, got shape {M.shape}")
    if dim is not None and M.shape[0] != dim:
        raise DimensionMismatch(f"{what} has dimension {M.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(M.view(float))):
        raise ValueError(f"{what} contains non-finite entries")
    return M


def adjoint(A) -> np.ndarray:
    """Conjugate transpose."""
    return as_square_matrix(A).conj().T


def hs_inner(A, B) -> complex:
    """Hilbert-Schmidt inner product tr(A^H B), conjugate-linear in A."""
    A = as_square_matrix(A)
    B = as_square_matrix(B, dim=A.shape[0], what="second operand")
    return complex(np.vdot(A, B))


def frobenius(A) -> float:
    return float(np.linalg.norm(np.asarray(A)))


def commutator(A, B) -> np.ndarray:
    return A @ B - B @ A


def is_hermitian(A, tol: Tolerance | None = None) -> bool:
    A = as_square_matrix(A)
    tol = resolve_tolerance(A.shape[0], tol)
    scale = max(1.0, frobenius(A))
    return frobenius(A - A.conj().T) <= tol.residual_tol * scale


def require_hermitian(A, tol: Tolerance | None = None, what: str = "matrix") -> np.ndarray:
    A = as_square_matrix(A, what=what)
    if not is_hermitian(A, tol):
        raise NotHermitian(f"{what} is not Hermitian within tolerance")
    return A


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace carried by an orthonormal column basis.

    ``basis`` has shape ``(ambient_dim, dim)`` with pairwise orthonormal
    columns; the induced orthogonal projection is cached.
    """

    ambient_dim: int
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @cached_property
    def projection(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.eye(ambient_dim, dtype=complex))

    def complement(self, tol: Tolerance | None = None) -> "Subspace":
        """Orthogonal complement with a deterministic basis.

        Standard basis vectors are projected onto the complement in index
        order and orthonormalized, so repeated runs agree exactly.
        """
        tol = resolve_tolerance(self.ambient_dim, tol)
        residual = np.eye(self.ambient_dim, dtype=complex) - self.projection
        basis = _mgs_columns(residual, tol.rank_tol)
        return Subspace(self.ambient_dim, basis)

    def contains_vector(self, v, tol: Tolerance | None = None) -> bool:
        tol = resolve_tolerance(self.ambient_dim, tol)
        v = np.asarray(v, dtype=complex).ravel()
        resid = v - self.basis @ (self.basis.conj().T @ v)
        return float(np.linalg.norm(resid)) <= tol.residual_tol * max(1.0, float(np.linalg.norm(v)))


def _mgs_columns(cols: np.ndarray, rank_tol: float) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    Columns whose post-projection norm falls at or below the (scale-aware)
    rank cutoff are dropped.
    """
    n = cols.shape[0]
    kept: list[np.ndarray] = []
    for j in range(cols.shape[1]):
        v = cols[:, j].astype(complex)
        scale = max(1.0, float(np.linalg.norm(v)))
        for _ in range(2):
            for u in kept:
                v = v - np.vdot(u, v) * u
        nv = float(np.linalg.norm(v))
        if nv > rank_tol * scale:
            kept.append(v / nv)
    if not kept:
        return np.zeros((n, 0), dtype=complex)
    return np.column_stack(kept)


def orthonormalize(
    vectors: Iterable, ambient_dim: int | None = None, tol: Tolerance | None = None
) -> Subspace:
    """Closed linear span of ``vectors`` as a :class:`Subspace`.

    Empty input yields the zero subspace (``ambient_dim`` is then required).
    """
    vecs = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    if vecs:
        n = vecs[0].size
        if any(v.size != n for v in vecs):
            raise DimensionMismatch("vectors must share the ambient dimension")
        if ambient_dim is not None and ambient_dim != n:
            raise DimensionMismatch(f"vectors have dimension {n}, expected {ambient_dim}")
    elif ambient_dim is None:
        raise ValueError("ambient_dim is required for empty input")
    else:
        n = ambient_dim
    if not vecs:
        return Subspace.zero(n)
    tol = resolve_tolerance(n, tol)
    basis = _mgs_columns(np.column_stack(vecs), tol.rank_tol)
    return Subspace(n, basis)


def subspace_join(P: Subspace, Q: Subspace, tol: Tolerance | None = None) -> Subspace:
    """Smallest subspace containing both operands."""
    if P.ambient_dim != Q.ambient_dim:
        raise DimensionMismatch("subspaces live on different ambient dimensions")
    cols = np.hstack([P.basis, Q.basis])
    return orthonormalize(cols.T, ambient_dim=P.ambient_dim, tol=tol)


def subspace_meet(P: Subspace, Q: Subspace, tol: Tolerance | None = None) -> Subspace:
    """Intersection, computed as the complement of the join of complements."""
    if P.ambient_dim != Q.ambient_dim:
        raise DimensionMismatch("subspaces live on different ambient dimensions")
    return subspace_join(P.complement(tol), Q.complement(tol), tol).complement(tol)


# ---------------------------------------------------------------------------
# Hermitian spectral analysis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EigenCluster:
    """One merged eigenvalue: representative value, multiplicity, projection.

    ``basis`` is the deterministic eigenbasis of the cluster: standard basis
    vectors projected onto the eigenspace in index order and orthonormalized.
    """

    value: float
    multiplicity: int
    projection: np.ndarray
    basis: np.ndarray


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    clusters: tuple[EigenCluster, ...]

    def reconstruct(self) -> np.ndarray:
        n = self.clusters[0].projection.shape[0]
        out = np.zeros((n, n), dtype=complex)
        for c in self.clusters:
            out += c.value * c.projection
        return out


def _cluster_basis(projection: np.ndarray, multiplicity: int, rank_tol: float) -> np.ndarray:
    basis = _mgs_columns(projection, rank_tol)
    if basis.shape[1] == multiplicity:
        return basis
    # Pathological cancellation against the standard basis: fall back to an
    # eigendecomposition of the projection, which is still deterministic.
    w, vecs = np.linalg.eigh(projection)
    return vecs[:, w > 0.5][:, :multiplicity]


def hermitian_spectral(H, tol: Tolerance | None = None) -> SpectralDecomposition:
    """Eigen-decomposition with gap-based merging of near-degenerate values.

    Sorted eigenvalues split into clusters wherever the gap exceeds
    ``rank_tol * max(1, |lambda|_max)``; each cluster carries a single
    eigenprojection and a deterministic internal basis.
    """
    H = as_square_matrix(H)
    n = H.shape[0]
    tol = resolve_tolerance(n, tol)
    require_hermitian(H, tol)
    w, vecs = np.linalg.eigh(0.5 * (H + H.conj().T))
    gap_cut = tol.rank_tol * max(1.0, float(np.abs(w).max()))
    clusters: list[EigenCluster] = []
    start = 0
    for i in range(1, n + 1):
        if i == n or w[i] - w[i - 1] > gap_cut:
            block = vecs[:, start:i]
            proj = block @ block.conj().T
            mult = i - start
            clusters.append(
                EigenCluster(
                    value=float(np.mean(w[start:i])),
                    multiplicity=mult,
                    projection=proj,
                    basis=_cluster_basis(proj, mult, tol.rank_tol),
                )
            )
            start = i
    return SpectralDecomposition(eigenvalues=w.copy(), clusters=tuple(clusters))


def unitary_from_hermitian(H, tol: Tolerance | None = None) -> np.ndarray:
    """exp(iH) for Hermitian H, evaluated through the spectral decomposition."""
    H = require_hermitian(H, tol)
    w, vecs = np.linalg.eigh(0.5 * (H + H.conj().T))
    return (vecs * np.exp(1j * w)) @ vecs.conj().T
