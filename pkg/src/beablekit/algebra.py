"""Finite-dimensional *-algebras of matrices.

An :class:`OperatorAlgebra` is stored as a basis of matrices orthonormal
under the Hilbert-Schmidt inner product; membership is a projection-residual
test against that span.  The module covers generation (smallest unital,
adjoint- and multiplication-closed span), commutants via one stacked
null-space problem, centers, abelian structure, maximal abelian extensions,
and the Jordan/Lie product layer on Hermitian elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    GenericityFailure,
    NotAbelian,
    NotContained,
    NotHermitian,
    NotProjection,
    VerificationError,
)
from .matcore import (
    Tolerance,
    as_square_matrix,
    frobenius,
    hermitian_spectral,
    require_hermitian,
    resolve_tolerance,
    unitary_from_hermitian,
)

__all__ = [
    "GeneratorSet",
    "OperatorAlgebra",
    "associator_residual",
    "center",
    "commutant",
    "cstar_product_from_jlb",
    "double_commutant",
    "extend_to_maximal_abelian",
    "full_algebra",
    "generate_star_algebra",
    "is_abelian",
    "jordan",
    "lie",
    "minimal_projections",
    "noncommuting_conjugate_witness",
    "span_equal",
    "trivial_algebra",
]


@dataclass(frozen=True)
class GeneratorSet:
    """A labelled family of generating matrices on a common ambient space."""

    ambient_dim: int
    generators: tuple[np.ndarray, ...]
    label: str = ""

    def __post_init__(self) -> None:
        mats = tuple(
            as_square_matrix(g, dim=self.ambient_dim, what="generator") for g in self.generators
        )
        object.__setattr__(self, "generators", mats)

    @classmethod
    def from_matrices(cls, mats: Iterable, label: str = "") -> "GeneratorSet":
        mats = [as_square_matrix(m, what="generator") for m in mats]
        if not mats:
            raise ValueError("cannot infer ambient dimension from an empty family")
        return cls(mats[0].shape[0], tuple(mats), label)

    def extended(self, extra: Iterable, label: str | None = None) -> "GeneratorSet":
        return GeneratorSet(
            self.ambient_dim,
            self.generators + tuple(extra),
            self.label if label is None else label,
        )


# ---------------------------------------------------------------------------
# span plumbing on flattened matrices
# ---------------------------------------------------------------------------


def _orthonormal_rows(rows: np.ndarray, rank_tol: float) -> np.ndarray:
    """Orthonormal basis for the row space, cut at the scaled rank tolerance."""
    if rows.shape[0] == 0:
        return rows.reshape(0, rows.shape[1])
    _, s, vh = np.linalg.svd(rows, full_matrices=False)
    if s.size == 0:
        return rows[:0]
    rank = int(np.sum(s > rank_tol * max(1.0, float(s[0]))))
    return vh[:rank]


def _null_space_rows(mat: np.ndarray, rank_tol: float) -> np.ndarray:
    """Orthonormal rows spanning the (right) null space of ``mat``."""
    d = mat.shape[1]
    if mat.shape[0] == 0:
        return np.eye(d, dtype=mat.dtype)
    _, s, vh = np.linalg.svd(mat, full_matrices=True)
    cutoff = rank_tol * max(1.0, float(s[0]) if s.size else 1.0)
    rank = int(np.sum(s > cutoff))
    return vh[rank:]


def _extend_rows(base: np.ndarray, candidates: np.ndarray, rank_tol: float) -> np.ndarray:
    """Append the genuinely new directions from ``candidates`` to ``base``."""
    if base.shape[0] == 0:
        return _orthonormal_rows(candidates, rank_tol)
    resid = candidates - (candidates @ base.conj().T) @ base
    new = _orthonormal_rows(resid, rank_tol)
    if new.shape[0] == 0:
        return base
    new = new - (new @ base.conj().T) @ base
    norms = np.linalg.norm(new, axis=1)
    new = new[norms > 0.5] / norms[norms > 0.5, None]
    return np.vstack([base, new])


@dataclass(frozen=True)
class OperatorAlgebra:
    """A matrix span with an HS-orthonormal basis, shape ``(k, n, n)``.

    Construction routes (:func:`generate_star_algebra`, :func:`commutant`,
    ...) guarantee the span is unital, adjoint-closed, and closed under
    products; :meth:`closure_residuals` re-checks those invariants.
    """

    ambient_dim: int
    basis: np.ndarray

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def flat(self) -> np.ndarray:
        return self.basis.reshape(self.dimension, self.ambient_dim * self.ambient_dim)

    @classmethod
    def from_matrices(
        cls,
        mats: Iterable,
        ambient_dim: int | None = None,
        tol: Tolerance | None = None,
        *,
        assume_orthonormal: bool = False,
    ) -> "OperatorAlgebra":
        arr = np.asarray(list(mats), dtype=complex)
        if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
            raise DimensionMismatch(f"expected a stack of square matrices, got {arr.shape}")
        n = arr.shape[1] if ambient_dim is None else ambient_dim
        if arr.shape[1] != n:
            raise DimensionMismatch(f"matrices have dimension {arr.shape[1]}, expected {n}")
        if assume_orthonormal:
            return cls(n, arr)
        tol = resolve_tolerance(n, tol)
        rows = _orthonormal_rows(arr.reshape(arr.shape[0], n * n), tol.rank_tol)
        return cls(n, rows.reshape(-1, n, n))

    def project(self, X) -> np.ndarray:
        """Orthogonal projection of ``X`` onto the span."""
        x = as_square_matrix(X, dim=self.ambient_dim).ravel()
        coeff = self.flat.conj() @ x
        return (coeff @ self.flat).reshape(self.ambient_dim, self.ambient_dim)

    def containment_residual(self, X) -> float:
        x = as_square_matrix(X, dim=self.ambient_dim).ravel()
        coeff = self.flat.conj() @ x
        return float(np.linalg.norm(x - coeff @ self.flat))

    def contains(self, X, tol: Tolerance | None = None) -> tuple[bool, float]:
        """Span membership: residual <= residual_tol * max(1, ||X||_F)."""
        tol = resolve_tolerance(self.ambient_dim, tol)
        resid = self.containment_residual(X)
        return resid <= tol.residual_tol * max(1.0, frobenius(X)), resid

    def contains_all(self, mats: Iterable, tol: Tolerance | None = None) -> tuple[bool, float]:
        tol = resolve_tolerance(self.ambient_dim, tol)
        ok, worst = True, 0.0
        for M in mats:
            inside, resid = self.contains(M, tol)
            worst = max(worst, resid)
            ok = ok and inside
        return ok, worst

    @cached_property
    def hermitian_basis(self) -> np.ndarray:
        """Orthonormal basis of the Hermitian elements, shape ``(m, n, n)``.

        For an adjoint-closed span, m equals the complex dimension.  Rank
        decisions use the default tolerance of the ambient dimension.
        """
        B = self.basis
        Bh = B.conj().transpose(0, 2, 1)
        cands = np.concatenate([0.5 * (B + Bh), (B - Bh) / 2j])
        d = self.ambient_dim * self.ambient_dim
        flat = cands.reshape(-1, d)
        real_rows = np.hstack([flat.real, flat.imag])
        rank_tol = Tolerance.default(self.ambient_dim).rank_tol
        onb = _orthonormal_rows(real_rows, rank_tol)
        mats = (onb[:, :d] + 1j * onb[:, d:]).reshape(-1, self.ambient_dim, self.ambient_dim)
        return mats

    @cached_property
    def _abelian_stats(self) -> tuple[float, tuple[int, int]]:
        worst, witness = 0.0, (0, 0)
        B = self.basis
        for i in range(self.dimension):
            left = np.einsum("ab,jbc->jac", B[i], B)
            right = np.einsum("jab,bc->jac", B, B[i])
            norms = np.linalg.norm((left - right).reshape(self.dimension, -1), axis=1)
            j = int(np.argmax(norms))
            if norms[j] > worst:
                worst, witness = float(norms[j]), (i, j)
        return worst, witness

    def closure_residuals(self, tol: Tolerance | None = None) -> dict[str, float]:
        """Worst residuals of the three span invariants (unit, adjoint, product)."""
        tol = resolve_tolerance(self.ambient_dim, tol)
        n = self.ambient_dim
        out = {"identity": self.containment_residual(np.eye(n))}
        adj_worst = max(self.containment_residual(b.conj().T) for b in self.basis)
        out["adjoint"] = adj_worst
        prod_worst = 0.0
        for b in self.basis:
            prods = np.einsum("ab,jbc->jac", b, self.basis).reshape(self.dimension, n * n)
            resid = prods - (prods @ self.flat.conj().T) @ self.flat
            prod_worst = max(prod_worst, float(np.linalg.norm(resid, axis=1).max()))
        out["product"] = prod_worst
        return out


def trivial_algebra(n: int) -> OperatorAlgebra:
    """The scalars: span{I} with its normalized basis element."""
    basis = (np.eye(n, dtype=complex) / np.sqrt(n))[None, :, :]
    return OperatorAlgebra(n, basis)


def full_algebra(n: int) -> OperatorAlgebra:
    """All of M_n, with the matrix units as orthonormal basis."""
    basis = np.eye(n * n, dtype=complex).reshape(n * n, n, n)
    return OperatorAlgebra(n, basis)


def span_equal(A: OperatorAlgebra, B: OperatorAlgebra, tol: Tolerance | None = None) -> tuple[bool, float]:
    """Mutual span containment; returns the verdict and the worst defect."""
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch("algebras live on different ambient dimensions")
    tol = resolve_tolerance(A.ambient_dim, tol)
    _, d1 = B.contains_all(A.basis, tol)
    _, d2 = A.contains_all(B.basis, tol)
    defect = max(d1, d2)
    return defect <= tol.residual_tol, defect


def _as_generator_set(obj, *, include_adjoints: bool = False) -> GeneratorSet:
    if isinstance(obj, OperatorAlgebra):
        gs = GeneratorSet(obj.ambient_dim, tuple(obj.basis))
    elif isinstance(obj, GeneratorSet):
        gs = obj
    else:
        gs = GeneratorSet.from_matrices(obj)
    if include_adjoints:
        gs = gs.extended(tuple(g.conj().T for g in gs.generators))
    return gs


# ---------------------------------------------------------------------------
# generation, commutants, centers
# ---------------------------------------------------------------------------


def generate_star_algebra(gens, tol: Tolerance | None = None) -> OperatorAlgebra:
    """Smallest unital, adjoint-closed, multiplication-closed span of ``gens``.

    Seeds the span with I, the generators and their adjoints, then repeatedly
    appends pairwise basis products until the span dimension stabilizes; the
    dimension increases strictly each round so at most n^2 rounds run.
    """
    gs = _as_generator_set(gens)
    n = gs.ambient_dim
    tol = resolve_tolerance(n, tol)
    seed = [np.eye(n, dtype=complex)]
    seed.extend(gs.generators)
    seed.extend(g.conj().T for g in gs.generators)
    flat = _orthonormal_rows(np.stack([m.ravel() for m in seed]), tol.rank_tol)
    for _ in range(n * n):
        mats = flat.reshape(-1, n, n)
        prods = np.einsum("aij,bjk->abik", mats, mats).reshape(-1, n * n)
        grown = _extend_rows(flat, prods, tol.rank_tol)
        if grown.shape[0] == flat.shape[0]:
            break
        flat = grown
    return OperatorAlgebra(n, flat.reshape(-1, n, n))


def commutant(obj, tol: Tolerance | None = None) -> OperatorAlgebra:
    """All X with [X, A] = 0 for every A in the family (and its adjoints).

    The constraints X -> AX - XA are stacked, over all generators, into one
    null-space problem on flattened matrices; a single singular-value cutoff
    then decides the rank.
    """
    gs = _as_generator_set(obj, include_adjoints=True)
    n = gs.ambient_dim
    tol = resolve_tolerance(n, tol)
    eye = np.eye(n, dtype=complex)
    blocks = [np.kron(A, eye) - np.kron(eye, A.T) for A in gs.generators]
    if blocks:
        null = _null_space_rows(np.vstack(blocks), tol.rank_tol)
    else:
        null = np.eye(n * n, dtype=complex)
    return OperatorAlgebra(n, null.reshape(-1, n, n))


def double_commutant(obj, tol: Tolerance | None = None) -> OperatorAlgebra:
    """commutant(commutant(.)): the generated von Neumann algebra.

    In finite dimension this equals :func:`generate_star_algebra` on the
    same family; the property suite cross-checks the two routes.
    """
    return commutant(commutant(obj, tol), tol)


def is_abelian(A: OperatorAlgebra, tol: Tolerance | None = None) -> tuple[bool, float]:
    """Whether all basis pairs commute, plus the worst commutator norm.

    Bilinearity of the commutator makes the basis check complete.
    """
    tol = resolve_tolerance(A.ambient_dim, tol)
    worst, _ = A._abelian_stats
    return worst <= tol.residual_tol, worst


def center(A: OperatorAlgebra, tol: Tolerance | None = None) -> OperatorAlgebra:
    """A intersected with its commutant, solved inside A's coordinates."""
    tol = resolve_tolerance(A.ambient_dim, tol)
    coeffs = _relative_commutant_coeffs(A.basis, A, tol)
    mats = np.einsum("ci,inm->cnm", coeffs, A.basis)
    return OperatorAlgebra(A.ambient_dim, mats)


def _relative_commutant_coeffs(
    constraints, ambient: OperatorAlgebra, tol: Tolerance
) -> np.ndarray:
    """Coefficient vectors c with [sum_i c_i B_i, S] = 0 for every constraint S.

    Constraints are taken together with their adjoints and stacked into one
    null-space problem; orthonormal coefficient rows come straight out of
    the SVD, so the resulting matrices stay HS-orthonormal.
    """
    B = ambient.basis
    k = ambient.dimension
    sides = list(constraints) + [S.conj().T for S in constraints]
    cols = []
    for S in sides:
        left = np.einsum("iab,bc->iac", B, S)
        right = np.einsum("ab,ibc->iac", S, B)
        cols.append((left - right).reshape(k, -1))
    if not cols:
        return np.eye(k, dtype=complex)
    mat = np.hstack(cols).T  # rows: stacked constraint entries; columns: coefficients
    return _null_space_rows(mat, tol.rank_tol)


def relative_commutant(
    sub: OperatorAlgebra, ambient: OperatorAlgebra, tol: Tolerance | None = None
) -> OperatorAlgebra:
    """Elements of ``ambient`` commuting with every element of ``sub``."""
    if sub.ambient_dim != ambient.ambient_dim:
        raise DimensionMismatch("algebras live on different ambient dimensions")
    tol = resolve_tolerance(ambient.ambient_dim, tol)
    coeffs = _relative_commutant_coeffs(sub.basis, ambient, tol)
    mats = np.einsum("ci,inm->cnm", coeffs, ambient.basis)
    return OperatorAlgebra(ambient.ambient_dim, mats)


# ---------------------------------------------------------------------------
# abelian structure
# ---------------------------------------------------------------------------


def _first_primes(count: int) -> list[int]:
    primes: list[int] = []
    x = 2
    while len(primes) < count:
        if all(x % p for p in primes if p * p <= x):
            primes.append(x)
        x += 1
    return primes


def minimal_projections(
    A: OperatorAlgebra, tol: Tolerance | None = None, seed: int = 0
) -> list[np.ndarray]:
    """Minimal projections of an abelian algebra, summing to the identity.

    A generic Hermitian element G = sum_i c_i H_i is formed over a Hermitian
    basis with deterministic pairwise-distinct coefficients c_i = 1/prime_i;
    its eigenprojections are the candidates.  Each candidate must lie in A
    and every basis element must act as a scalar on each eigenspace; on
    verification failure the coefficients are perturbed (seeded) and the
    construction retried, at most five times.
    """
    tol = resolve_tolerance(A.ambient_dim, tol)
    ok, worst = is_abelian(A, tol)
    if not ok:
        raise NotAbelian(f"algebra is not abelian (worst commutator {worst:.3e})")
    herm = A.hermitian_basis
    m = herm.shape[0]
    base_coeffs = np.array([1.0 / p for p in _first_primes(m)])
    rng = np.random.default_rng(seed)
    for attempt in range(6):
        coeffs = base_coeffs if attempt == 0 else base_coeffs + 0.01 * rng.standard_normal(m)
        G = np.einsum("i,inm->nm", coeffs, herm)
        decomp = hermitian_spectral(G, tol)
        projs = [c.projection for c in decomp.clusters]
        if len(projs) != A.dimension:
            continue
        if _verify_minimal_projections(A, projs, tol):
            return projs
    raise GenericityFailure("generic element failed to separate the minimal projections")


def _verify_minimal_projections(
    A: OperatorAlgebra, projs: Sequence[np.ndarray], tol: Tolerance
) -> bool:
    for P in projs:
        inside, _ = A.contains(P, tol)
        if not inside:
            return False
        mult = float(np.trace(P).real)
        for B in A.basis:
            c = np.trace(B @ P) / mult
            if frobenius(B @ P - c * P) > tol.residual_tol * max(1.0, frobenius(B)):
                return False
    return True


def extend_to_maximal_abelian(
    M: OperatorAlgebra, ambient: OperatorAlgebra, tol: Tolerance | None = None
) -> OperatorAlgebra:
    """Grow an abelian M <= ambient until it equals its relative commutant.

    Each round computes C = commutant(N) within ambient; if C is contained
    in N the extension is maximal and returned.  Otherwise the first
    Hermitian direction of C outside span(N) -- ordered by basis index,
    real part before imaginary part -- is adjoined and the span regenerated.
    The dimension grows strictly, so the loop terminates.
    """
    if M.ambient_dim != ambient.ambient_dim:
        raise DimensionMismatch("algebras live on different ambient dimensions")
    tol = resolve_tolerance(ambient.ambient_dim, tol)
    ok, worst = is_abelian(M, tol)
    if not ok:
        raise NotAbelian(f"seed is not abelian (worst commutator {worst:.3e})")
    contained, defect = ambient.contains_all(M.basis, tol)
    if not contained:
        raise NotContained(f"seed is not contained in the ambient algebra (defect {defect:.3e})")

    N = M
    for _ in range(ambient.dimension + 1):
        C = relative_commutant(N, ambient, tol)
        inside, _ = N.contains_all(C.basis, tol)
        if inside:
            return N
        X = _first_hermitian_outside(C, N, tol)
        N = generate_star_algebra(
            GeneratorSet(N.ambient_dim, tuple(N.basis) + (X,)), tol
        )
    raise VerificationError("maximal abelian extension failed to terminate")


def _first_hermitian_outside(
    C: OperatorAlgebra, N: OperatorAlgebra, tol: Tolerance
) -> np.ndarray:
    threshold = tol.residual_tol
    fallback, fallback_resid = None, 0.0
    for B in C.basis:
        for part in (0.5 * (B + B.conj().T), (B - B.conj().T) / 2j):
            norm = frobenius(part)
            if norm <= tol.rank_tol:
                continue
            cand = part / norm
            resid = N.containment_residual(cand)
            if resid > threshold:
                return cand
            if resid > fallback_resid:
                fallback, fallback_resid = cand, resid
    if fallback is None:
        raise VerificationError("relative commutant holds no Hermitian direction outside the seed")
    return fallback


# ---------------------------------------------------------------------------
# Jordan/Lie layer on Hermitian elements
# ---------------------------------------------------------------------------


def jordan(A, B, tol: Tolerance | None = None) -> np.ndarray:
    """Symmetrized product (AB + BA) / 2 of Hermitian operands."""
    A = require_hermitian(A, tol, "first operand")
    B = require_hermitian(B, tol, "second operand")
    return 0.5 * (A @ B + B @ A)


def lie(A, B, tol: Tolerance | None = None) -> np.ndarray:
    """Antisymmetrized product i(AB - BA) / 2 of Hermitian operands."""
    A = require_hermitian(A, tol, "first operand")
    B = require_hermitian(B, tol, "second operand")
    return 0.5j * (A @ B - B @ A)


def associator_residual(A, B, C, r: float = 1.0, tol: Tolerance | None = None) -> float:
    """Frobenius defect of (A.B).C - A.(B.C) = r((A*C)*B) for the JLB products.

    With r = 1 the identity holds exactly for the products above, so the
    residual stays at rounding level for all Hermitian triples.
    """
    lhs = jordan(jordan(A, B, tol), C, tol) - jordan(A, jordan(B, C, tol), tol)
    rhs = r * lie(lie(A, C, tol), B, tol)
    return frobenius(lhs - rhs)


def cstar_product_from_jlb(A, B, r: float = 1.0, tol: Tolerance | None = None) -> np.ndarray:
    """Reconstruct the associative product from the Jordan and Lie parts."""
    if r <= 0:
        raise ValueError("r must be positive")
    return jordan(A, B, tol) - 1j * np.sqrt(r) * lie(A, B, tol)


# ---------------------------------------------------------------------------
# randomized conjugation witness
# ---------------------------------------------------------------------------


def noncommuting_conjugate_witness(
    V: OperatorAlgebra,
    Q,
    trials: int = 100,
    seed: int = 0,
    tol: Tolerance | None = None,
) -> np.ndarray | None:
    """Search V' for a unitary U with [U Q U^H, Q] != 0.

    Draws seeded Hermitian combinations H over a Hermitian basis of V' and
    tests U = exp(iH).  If Q lies in V no draw can ever witness; if Q lies
    outside V a witness exists and random search finds one almost surely.
    """
    tol = resolve_tolerance(V.ambient_dim, tol)
    Q = as_square_matrix(Q, dim=V.ambient_dim, what="projection")
    if frobenius(Q @ Q - Q) > tol.residual_tol * max(1.0, frobenius(Q)) or frobenius(
        Q - Q.conj().T
    ) > tol.residual_tol * max(1.0, frobenius(Q)):
        raise NotProjection("Q must satisfy Q^2 = Q = Q^H within tolerance")
    herm = commutant(V, tol).hermitian_basis
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        H = np.einsum("i,inm->nm", rng.standard_normal(herm.shape[0]), herm)
        U = unitary_from_hermitian(H, tol)
        conj = U @ Q @ U.conj().T
        if frobenius(conj @ Q - Q @ conj) > tol.residual_tol:
            return U
    return None
