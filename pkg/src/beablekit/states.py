"""Density-operator states and their dispersion-free structure.

A :class:`State` wraps a positive trace-one operator together with its
spectral decomposition, operator square root, and range subspace.  On top of
that sit the induced functional tr(K .), the left kernel, the definite
algebra (largest subalgebra on which the state is multiplicative), and
finite mixture decompositions into dispersion-free components over abelian
algebras.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import OperatorAlgebra, full_algebra, is_abelian, minimal_projections
from .errors import DimensionMismatch, NotAbelian, ValidationError, VerificationError
from .matcore import (
    EigenCluster,
    SpectralDecomposition,
    Subspace,
    Tolerance,
    as_square_matrix,
    frobenius,
    hermitian_spectral,
    resolve_tolerance,
)

__all__ = [
    "DispersionFreeComponent",
    "State",
    "definite_algebra",
    "dispersion_free_decomposition",
    "dispersion_free_values_in_spectrum",
    "expectation",
    "in_left_kernel",
    "is_dispersion_free_on",
    "is_faithful_on",
    "kadison_singer_definite_set_check",
]


@dataclass(frozen=True)
class State:
    """A density operator K with cached spectral data.

    ``sqrt`` is K^(1/2) with eigenvalues clamped at zero, so numerical
    negativity of order rank_tol cannot poison left-kernel tests;
    ``range_subspace`` holds the deterministic eigenbasis of the eigenvalues
    above rank_tol.
    """

    density: np.ndarray
    spectral: SpectralDecomposition
    sqrt: np.ndarray
    range_subspace: Subspace

    @property
    def dim(self) -> int:
        return self.density.shape[0]

    @property
    def is_pure(self) -> bool:
        return self.range_subspace.dim == 1

    @classmethod
    def from_density(cls, K, tol: Tolerance | None = None) -> "State":
        K = as_square_matrix(K, what="density")
        n = K.shape[0]
        tol = resolve_tolerance(n, tol)
        if frobenius(K - K.conj().T) > tol.residual_tol * max(1.0, frobenius(K)):
            raise ValidationError("density violates the 'hermitian' invariant")
        decomp = hermitian_spectral(K, tol)
        w = decomp.eigenvalues
        scale = max(1.0, float(np.abs(w).max()))
        if w.min() < -tol.rank_tol * scale:
            raise ValidationError("density violates the 'positive' invariant")
        if abs(float(w.sum()) - 1.0) > tol.residual_tol:
            raise ValidationError("density violates the 'trace' invariant")
        sqrt = np.zeros_like(K)
        range_blocks = []
        for c in decomp.clusters:
            lam = max(c.value, 0.0)
            sqrt += np.sqrt(lam) * c.projection
            if c.value > tol.rank_tol * scale:
                range_blocks.append(c.basis)
        if range_blocks:
            rng_basis = np.hstack(range_blocks)
        else:
            rng_basis = np.zeros((n, 0), dtype=complex)
        return cls(K, decomp, sqrt, Subspace(n, rng_basis))

    @classmethod
    def from_vector(cls, v, tol: Tolerance | None = None) -> "State":
        v = np.asarray(v, dtype=complex).ravel()
        n = v.size
        tol = resolve_tolerance(n, tol)
        if abs(float(np.linalg.norm(v)) - 1.0) > tol.residual_tol:
            raise ValidationError("state vector violates the 'norm' invariant")
        P = np.outer(v, v.conj())
        span = Subspace(n, v.reshape(n, 1))
        kernel = span.complement(tol)
        clusters = []
        if n > 1:
            clusters.append(
                EigenCluster(0.0, n - 1, np.eye(n, dtype=complex) - P, kernel.basis)
            )
        clusters.append(EigenCluster(1.0, 1, P, span.basis))
        eigenvalues = np.concatenate([np.zeros(n - 1), [1.0]])
        return cls(P, SpectralDecomposition(eigenvalues, tuple(clusters)), P, span)

    @classmethod
    def maximally_mixed(cls, n: int, tol: Tolerance | None = None) -> "State":
        return cls.from_density(np.eye(n, dtype=complex) / n, tol)


def expectation(rho: State, A) -> complex:
    """tr(KA), the state's expectation functional."""
    A = as_square_matrix(A, dim=rho.dim)
    return complex(np.einsum("ij,ji->", rho.density, A))


def in_left_kernel(rho: State, A, tol: Tolerance | None = None) -> tuple[bool, float]:
    """Whether tr(K A^H A) vanishes, decided through ||A K^(1/2)||_F."""
    A = as_square_matrix(A, dim=rho.dim)
    tol = resolve_tolerance(rho.dim, tol)
    resid = frobenius(A @ rho.sqrt)
    return resid <= tol.residual_tol * max(1.0, frobenius(A)), resid


def definite_algebra(
    rho: State, ambient: OperatorAlgebra | None = None, tol: Tolerance | None = None
) -> OperatorAlgebra:
    """Largest subalgebra of ``ambient`` on which the state is multiplicative.

    Solves tr(KAX) = tr(KA) tr(KX) for every basis element X of the ambient
    algebra, as one null-space problem over the coefficients of A.  The
    output is a unital subalgebra; multiplicative closure is verified as a
    post-check.
    """
    tol = resolve_tolerance(rho.dim, tol)
    if ambient is None:
        ambient = full_algebra(rho.dim)
    if ambient.ambient_dim != rho.dim:
        raise DimensionMismatch("ambient algebra does not match the state dimension")
    B = ambient.basis
    pair = np.einsum("ab,ibc,jca->ij", rho.density, B, B)  # tr(K B_i B_j)
    single = np.einsum("ab,iba->i", rho.density, B)  # tr(K B_i)
    constraints = (pair - np.outer(single, single)).T  # rows j, columns i
    from .algebra import _null_space_rows  # shared rank plumbing

    coeffs = _null_space_rows(constraints, tol.rank_tol)
    mats = np.einsum("ci,inm->cnm", coeffs, B)
    out = OperatorAlgebra(rho.dim, mats)
    closure = out.closure_residuals(tol)
    if max(closure.values()) > tol.residual_tol * 10:
        raise VerificationError(
            f"definite algebra failed its closure post-check: {closure}"
        )
    return out


def kadison_singer_definite_set_check(
    rho: State,
    ambient: OperatorAlgebra | None = None,
    tol: Tolerance | None = None,
    samples: int = 20,
    seed: int = 0,
) -> bool:
    """Cross-check the definite algebra against the zero-dispersion criterion.

    Hermitian H belongs to the definite algebra exactly when
    tr(K H^2) = tr(K H)^2.  Both directions are sampled: the Hermitian basis
    of the definite algebra (and random combinations of it) must satisfy the
    equation, and random ambient Hermitian elements must satisfy it iff they
    lie in the span.
    """
    tol = resolve_tolerance(rho.dim, tol)
    if ambient is None:
        ambient = full_algebra(rho.dim)
    D = definite_algebra(rho, ambient, tol)
    rng = np.random.default_rng(seed)
    candidates = list(D.hermitian_basis)
    dh = D.hermitian_basis
    for _ in range(samples):
        candidates.append(np.einsum("i,inm->nm", rng.standard_normal(dh.shape[0]), dh))
    ah = ambient.hermitian_basis
    for _ in range(samples):
        candidates.append(np.einsum("i,inm->nm", rng.standard_normal(ah.shape[0]), ah))
    for H in candidates:
        scale = max(1.0, frobenius(H) ** 2)
        dispersion = abs(expectation(rho, H @ H) - expectation(rho, H) ** 2)
        zero_dispersion = dispersion <= tol.residual_tol * scale
        member, _ = D.contains(H, tol)
        if zero_dispersion != member:
            return False
    return True


def is_dispersion_free_on(rho: State, B: OperatorAlgebra, tol: Tolerance | None = None) -> bool:
    """Whether every element of B lies in the state's definite algebra."""
    tol = resolve_tolerance(rho.dim, tol)
    D = definite_algebra(rho, full_algebra(rho.dim), tol)
    ok, _ = D.contains_all(B.basis, tol)
    return ok


def is_faithful_on(rho: State, B: OperatorAlgebra, tol: Tolerance | None = None) -> bool:
    """Whether B meets the left kernel only in zero.

    Solves A K^(1/2) = 0 over A in span(B); faithfulness means the only
    solution is A = 0 (empty null space at the rank cutoff).
    """
    from .algebra import _null_space_rows

    tol = resolve_tolerance(rho.dim, tol)
    cols = np.einsum("kij,jl->kil", B.basis, rho.sqrt).reshape(B.dimension, -1)
    null = _null_space_rows(cols.T, tol.rank_tol)
    return null.shape[0] == 0


@dataclass(frozen=True)
class DispersionFreeComponent:
    """One point mass of a finite dispersion-free mixture.

    ``values[i]`` is the component functional evaluated on the i-th basis
    element of the decomposed algebra; the functional is multiplicative, so
    it is dispersion-free there.
    """

    weight: float
    support_projection: np.ndarray
    values: np.ndarray

    def value_of(self, A) -> complex:
        """Evaluate the component functional on an arbitrary matrix."""
        mult = float(np.trace(self.support_projection).real)
        return complex(np.trace(self.support_projection @ A) / mult)


def dispersion_free_decomposition(
    rho: State, B: OperatorAlgebra, tol: Tolerance | None = None, seed: int = 0
) -> list[DispersionFreeComponent]:
    """Write the state's restriction to abelian B as a dispersion-free mixture.

    The minimal projections P_j of B carry the components: weight tr(K P_j),
    values tr(P_j B_i)/tr(P_j).  Components with weight at or below rank_tol
    are dropped, so the mixture has strict finite support.
    """
    tol = resolve_tolerance(rho.dim, tol)
    ok, worst = is_abelian(B, tol)
    if not ok:
        raise NotAbelian(f"decomposition needs an abelian algebra (worst commutator {worst:.3e})")
    comps = []
    for P in minimal_projections(B, tol, seed=seed):
        weight = float(np.einsum("ij,ji->", rho.density, P).real)
        if weight <= tol.rank_tol:
            continue
        mult = float(np.trace(P).real)
        values = np.einsum("kij,ji->k", B.basis, P) / mult
        comps.append(DispersionFreeComponent(weight, P, values))
    return comps


def dispersion_free_values_in_spectrum(
    components: Sequence[DispersionFreeComponent],
    B: OperatorAlgebra,
    tol: Tolerance | None = None,
) -> bool:
    """Each component value on a Hermitian element must be an eigenvalue."""
    tol = resolve_tolerance(B.ambient_dim, tol)
    for H in B.hermitian_basis:
        eigs = np.linalg.eigvalsh(0.5 * (H + H.conj().T))
        allowed = tol.residual_tol * max(1.0, frobenius(H))
        for comp in components:
            v = comp.value_of(H)
            if abs(v.imag) > allowed:
                return False
            if np.abs(eigs - v.real).min() > allowed:
                return False
    return True
