"""Beable-status testing and maximal beable algebra constructions.

A subalgebra is beable for a state when the state restricts to a mixture of
dispersion-free states on it; equivalently, all commutators of the algebra
lie in the state's left kernel.  This module tests that condition two ways
(directly and through compression onto the closure subspace), constructs
canonical and extended maximal beable algebras, and builds the maximal
algebras determined by a privileged family of commuting observables,
including the membership fast path and the randomized definability
(conjugation-invariance) certification.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .algebra import (
    GeneratorSet,
    OperatorAlgebra,
    commutant,
    extend_to_maximal_abelian,
    full_algebra,
    generate_star_algebra,
    is_abelian,
    relative_commutant,
)
from .errors import (
    DimensionMismatch,
    ExtraNotAdmissible,
    GeneratorsNotMutuallyCommuting,
    NotCommutingWithState,
    NotUnitVector,
    SeedNotBeable,
    VerificationError,
)
from .matcore import (
    Subspace,
    Tolerance,
    as_square_matrix,
    frobenius,
    orthonormalize,
    require_hermitian,
    resolve_tolerance,
    unitary_from_hermitian,
)
from .states import State

__all__ = [
    "BeableVerdict",
    "Membership",
    "RBeableResult",
    "Uniqueness",
    "canonical_maximal_beable",
    "closure_subspace",
    "extend_to_maximal_beable",
    "is_beable",
    "is_beable_via_compression",
    "is_maximal_beable",
    "maximal_rbeable",
    "membership_fast",
    "privileged_subspace",
    "rbeable_commuting_state",
    "rbeable_vector_state",
    "verify_def_invariance",
]


class Uniqueness(str, Enum):
    UNIQUE_COMMUTING = "UniqueCommuting"
    UNIQUE_VECTOR_STATE = "UniqueVectorState"
    NON_UNIQUE_CHOICE = "NonUniqueChoice"


class Membership(str, Enum):
    MEMBER = "Member"
    NON_MEMBER = "NonMember"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class BeableVerdict:
    """Outcome of the commutator-in-left-kernel test.

    ``witness`` names the basis pair with the largest kernel defect when the
    test fails.
    """

    is_beable: bool
    worst_residual: float
    witness: tuple[int, int] | None


@dataclass(frozen=True)
class RBeableResult:
    """A maximal algebra determined by privileged observables.

    ``algebra`` acts on the ambient space and splits as the full block on
    the orthocomplement of the privileged subspace plus ``abelian_part``,
    which is expressed in the coordinates of that subspace.
    """

    privileged_subspace: Subspace
    algebra: OperatorAlgebra
    uniqueness: Uniqueness
    abelian_part: OperatorAlgebra


# ---------------------------------------------------------------------------
# subspace and block plumbing
# ---------------------------------------------------------------------------


def closure_subspace(B: OperatorAlgebra, M: Subspace, tol: Tolerance | None = None) -> Subspace:
    """Closed span of B applied to M; contains M and is invariant under B."""
    if B.ambient_dim != M.ambient_dim:
        raise DimensionMismatch("algebra and subspace dimensions differ")
    tol = resolve_tolerance(B.ambient_dim, tol)
    if M.dim == 0:
        return M
    prods = np.einsum("kij,jm->kim", B.basis, M.basis)
    cols = np.hstack([M.basis, prods.transpose(1, 0, 2).reshape(M.ambient_dim, -1)])
    return orthonormalize(cols.T, ambient_dim=M.ambient_dim, tol=tol)


def _compress(mats: np.ndarray, S: Subspace) -> np.ndarray:
    """V^H M V for each matrix, with V the subspace isometry."""
    V = S.basis
    return np.einsum("im,kij,jl->kml", V.conj(), mats, V)


def _lift(mats: np.ndarray, S: Subspace) -> np.ndarray:
    """Embed matrices on the subspace coordinates back into the ambient space."""
    V = S.basis
    return np.einsum("im,kml,jl->kij", V, mats, V.conj())


def _block_algebra(S: Subspace, compressed: OperatorAlgebra) -> OperatorAlgebra:
    """Full block on the orthocomplement of S, plus ``compressed`` lifted to S.

    Matrix units on the complement and lifted orthonormal basis elements on
    S have disjoint supports, so their union is already HS-orthonormal.
    """
    n = S.ambient_dim
    perp = S.complement()
    parts = []
    if perp.dim:
        W = perp.basis
        units = np.einsum("ia,jb->abij", W, W.conj()).reshape(perp.dim * perp.dim, n, n)
        parts.append(units)
    if compressed.dimension:
        parts.append(_lift(compressed.basis, S))
    basis = np.concatenate(parts) if parts else np.zeros((0, n, n), dtype=complex)
    return OperatorAlgebra(n, basis)


# ---------------------------------------------------------------------------
# beable status
# ---------------------------------------------------------------------------


def is_beable(B: OperatorAlgebra, rho: State, tol: Tolerance | None = None) -> BeableVerdict:
    """Test whether every commutator of B lies in the state's left kernel.

    The worst residual is max over basis pairs of ||[B_i, B_j] K^(1/2)||_F;
    bilinearity of the commutator and linearity of the kernel make the basis
    check complete.
    """
    if B.ambient_dim != rho.dim:
        raise DimensionMismatch("algebra and state dimensions differ")
    tol = resolve_tolerance(rho.dim, tol)
    BK = np.einsum("kij,jl->kil", B.basis, rho.sqrt)
    worst, pair = 0.0, (0, 0)
    for i in range(B.dimension):
        left = np.einsum("ab,jbc->jac", B.basis[i], BK)
        right = np.einsum("jab,bc->jac", B.basis, BK[i])
        norms = np.linalg.norm((left - right).reshape(B.dimension, -1), axis=1)
        j = int(np.argmax(norms))
        if norms[j] > worst:
            worst, pair = float(norms[j]), (i, j)
    beable = worst <= tol.residual_tol
    return BeableVerdict(beable, worst, None if beable else pair)


def is_beable_via_compression(
    B: OperatorAlgebra, rho: State, tol: Tolerance | None = None
) -> bool:
    """Equivalent test: the compression of B onto [B ran K] must be abelian."""
    tol = resolve_tolerance(rho.dim, tol)
    T = closure_subspace(B, rho.range_subspace, tol)
    comp = _compress(B.basis, T)
    worst = 0.0
    for i in range(comp.shape[0]):
        diffs = np.einsum("ab,jbc->jac", comp[i], comp) - np.einsum(
            "jab,bc->jac", comp, comp[i]
        )
        worst = max(worst, float(np.linalg.norm(diffs.reshape(comp.shape[0], -1), axis=1).max()))
    return worst <= tol.residual_tol


def canonical_maximal_beable(rho: State, tol: Tolerance | None = None) -> OperatorAlgebra:
    """The maximal beable algebra carried by the state's own eigenstructure.

    On the range of K the algebra is diagonal in K's (deterministically
    resolved) eigenbasis; off the range it is everything.
    """
    tol = resolve_tolerance(rho.dim, tol)
    T = rho.range_subspace
    # the diagonal algebra in T-coordinates lifts to span{t_a t_a^H}
    diag = np.zeros((T.dim, T.dim, T.dim), dtype=complex)
    for a in range(T.dim):
        diag[a, a, a] = 1.0
    return _block_algebra(T, OperatorAlgebra(T.dim, diag))


def extend_to_maximal_beable(
    B0: OperatorAlgebra, rho: State, tol: Tolerance | None = None
) -> OperatorAlgebra:
    """Grow a beable seed to a maximal beable algebra.

    The closure subspace T of the seed is frozen first; the seed's abelian
    compression is extended to a maximal abelian algebra inside the full
    algebra on T, and the full block on the orthocomplement is adjoined.
    """
    tol = resolve_tolerance(rho.dim, tol)
    verdict = is_beable(B0, rho, tol)
    if not verdict.is_beable:
        raise SeedNotBeable(
            f"seed algebra is not beable for the state (residual {verdict.worst_residual:.3e})"
        )
    T = closure_subspace(B0, rho.range_subspace, tol)
    M_T = OperatorAlgebra.from_matrices(_compress(B0.basis, T), T.dim, tol)
    ok, worst = is_abelian(M_T, tol)
    if not ok:
        raise VerificationError(
            f"compression of a beable seed must be abelian (worst commutator {worst:.3e})"
        )
    N = extend_to_maximal_abelian(M_T, full_algebra(T.dim), tol)
    return _block_algebra(T, N)


def is_maximal_beable(B: OperatorAlgebra, rho: State, tol: Tolerance | None = None) -> bool:
    """Structural test for maximality.

    Checks that T = [B ran K] reduces B, that B contains the full block on
    the orthocomplement of T, that the compression onto T is abelian and
    equals its own relative commutant, and that the dimensions account for
    the whole block sum.
    """
    tol = resolve_tolerance(rho.dim, tol)
    T = closure_subspace(B, rho.range_subspace, tol)
    P = T.projection
    Pc = np.eye(rho.dim, dtype=complex) - P
    off = 0.0
    for b in B.basis:
        off = max(off, frobenius(Pc @ b @ P), frobenius(P @ b @ Pc))
    if off > tol.residual_tol:
        return False

    perp = T.complement(tol)
    if perp.dim:
        W = perp.basis
        units = np.einsum("ia,jb->abij", W, W.conj()).reshape(-1, rho.dim, rho.dim)
        ok, _ = B.contains_all(units, tol)
        if not ok:
            return False

    N = OperatorAlgebra.from_matrices(_compress(B.basis, T), T.dim, tol)
    ok, _ = is_abelian(N, tol)
    if not ok:
        return False
    C = relative_commutant(N, full_algebra(T.dim), tol)
    ok, _ = N.contains_all(C.basis, tol)
    if not ok:
        return False
    return B.dimension == perp.dim * perp.dim + N.dimension


# ---------------------------------------------------------------------------
# algebras determined by privileged observables
# ---------------------------------------------------------------------------


def _require_mutually_commuting(R: GeneratorSet, tol: Tolerance) -> None:
    gens = R.generators
    family = gens + tuple(g.conj().T for g in gens)
    for i, A in enumerate(family):
        for Bm in family[i + 1 :]:
            scale = max(1.0, frobenius(A) * frobenius(Bm))
            if frobenius(A @ Bm - Bm @ A) > tol.residual_tol * scale:
                raise GeneratorsNotMutuallyCommuting(
                    "privileged generators (with adjoints) must mutually commute"
                )


def privileged_subspace(R: GeneratorSet, rho: State, tol: Tolerance | None = None) -> Subspace:
    """Smallest subspace containing ran K and invariant under the family.

    Computed as the closure subspace of the generated algebra applied to
    ran K; the generated algebra equals the double commutant here, a span
    equality the bicommutant property suite certifies.
    """
    tol = resolve_tolerance(rho.dim, tol)
    vnr = generate_star_algebra(R, tol)
    return closure_subspace(vnr, rho.range_subspace, tol)


def _abelian_compression(
    basis: np.ndarray, S: Subspace, tol: Tolerance, what: str
) -> OperatorAlgebra:
    comp = OperatorAlgebra.from_matrices(_compress(basis, S), S.dim, tol)
    ok, worst = is_abelian(comp, tol)
    if not ok:
        raise VerificationError(f"{what} must compress to an abelian algebra ({worst:.3e})")
    return comp


def rbeable_commuting_state(
    R: GeneratorSet, rho: State, tol: Tolerance | None = None
) -> RBeableResult:
    """Unique maximal construction when the state commutes with the family."""
    tol = resolve_tolerance(rho.dim, tol)
    if R.ambient_dim != rho.dim:
        raise DimensionMismatch("generator and state dimensions differ")
    _require_mutually_commuting(R, tol)
    for g in R.generators:
        scale = max(1.0, frobenius(g))
        if frobenius(g @ rho.density - rho.density @ g) > tol.residual_tol * scale:
            raise NotCommutingWithState("every generator must commute with the density operator")
    S = privileged_subspace(R, rho, tol)
    amb = generate_star_algebra(R.extended([rho.density]), tol)
    M_S = _abelian_compression(amb.basis, S, tol, "the algebra of the family and the state")
    return RBeableResult(S, _block_algebra(S, M_S), Uniqueness.UNIQUE_COMMUTING, M_S)


def _vector_setup(
    R: GeneratorSet, v: np.ndarray, tol: Tolerance
) -> tuple[State, OperatorAlgebra, Subspace]:
    rho = State.from_vector(v, tol)
    vnr = generate_star_algebra(R, tol)
    S = closure_subspace(vnr, rho.range_subspace, tol)
    return rho, vnr, S


def rbeable_vector_state(R: GeneratorSet, v, tol: Tolerance | None = None) -> RBeableResult:
    """Unique maximal construction for a vector state.

    The compression of the generated algebra onto S is maximal abelian there
    because the vector is cyclic for it; the relative-commutant check makes
    that explicit.
    """
    v = np.asarray(v, dtype=complex).ravel()
    tol = resolve_tolerance(v.size, tol)
    if R.ambient_dim != v.size:
        raise DimensionMismatch("generator and vector dimensions differ")
    if abs(float(np.linalg.norm(v)) - 1.0) > tol.residual_tol:
        raise NotUnitVector("the state vector must have unit norm")
    _require_mutually_commuting(R, tol)
    _, vnr, S = _vector_setup(R, v, tol)
    M_S = _abelian_compression(vnr.basis, S, tol, "the generated algebra")
    C = relative_commutant(M_S, full_algebra(S.dim), tol)
    ok, defect = M_S.contains_all(C.basis, tol)
    if not ok:
        raise VerificationError(
            f"compressed algebra is not maximal abelian on the privileged subspace ({defect:.3e})"
        )
    return RBeableResult(S, _block_algebra(S, M_S), Uniqueness.UNIQUE_VECTOR_STATE, M_S)


def membership_fast(A, R: GeneratorSet, v, tol: Tolerance | None = None) -> Membership:
    """Cheap three-way membership test against the vector-state construction.

    Member when A commutes with the family and maps the vector into the
    privileged subspace S; NonMember when A fails to leave S invariant;
    Inconclusive otherwise.  Exact span membership remains the arbiter, and
    this test never contradicts it.
    """
    v = np.asarray(v, dtype=complex).ravel()
    tol = resolve_tolerance(v.size, tol)
    A = require_hermitian(A, tol, "query observable")
    if A.shape[0] != v.size or R.ambient_dim != v.size:
        raise DimensionMismatch("query, generators, and vector dimensions differ")
    _, _, S = _vector_setup(R, v, tol)
    P = S.projection
    Pc = np.eye(v.size, dtype=complex) - P
    scale_a = max(1.0, frobenius(A))
    commutes = all(
        frobenius(A @ g - g @ A) <= tol.residual_tol * max(1.0, frobenius(A) * frobenius(g))
        for g in R.generators
    )
    if commutes and float(np.linalg.norm(Pc @ (A @ v))) <= tol.residual_tol * scale_a:
        return Membership.MEMBER
    if frobenius(Pc @ A @ P) > tol.residual_tol * scale_a:
        return Membership.NON_MEMBER
    return Membership.INCONCLUSIVE


def maximal_rbeable(
    R: GeneratorSet,
    rho: State,
    extra_commuting: GeneratorSet | None = None,
    tol: Tolerance | None = None,
) -> RBeableResult:
    """A maximal algebra containing the privileged family, for any state.

    On the privileged subspace S the result is a maximal abelian algebra
    squeezed between the compressed generated algebra of the family and the
    compressed algebra of the family together with the state.  The choice in
    between is genuinely non-unique; ``extra_commuting`` exposes it by
    seeding the extension with admissible elements (validated to lie in the
    compressed ambient algebra and to commute with the compressed family).
    """
    tol = resolve_tolerance(rho.dim, tol)
    if R.ambient_dim != rho.dim:
        raise DimensionMismatch("generator and state dimensions differ")
    _require_mutually_commuting(R, tol)
    S = privileged_subspace(R, rho, tol)
    amb_full = generate_star_algebra(R.extended([rho.density]), tol)
    ambient_S = OperatorAlgebra.from_matrices(_compress(amb_full.basis, S), S.dim, tol)
    vnr = generate_star_algebra(R, tol)
    seed_S = _abelian_compression(vnr.basis, S, tol, "the generated algebra")

    if extra_commuting is not None and extra_commuting.generators:
        if extra_commuting.ambient_dim != rho.dim:
            raise DimensionMismatch("extra elements live on the wrong ambient dimension")
        extras = list(_compress(np.stack(extra_commuting.generators), S))
        for Xc in extras:
            inside, resid = ambient_S.contains(Xc, tol)
            if not inside:
                raise ExtraNotAdmissible(
                    f"extra element falls outside the compressed ambient algebra ({resid:.3e})"
                )
            for s in seed_S.basis:
                scale = max(1.0, frobenius(Xc) * frobenius(s))
                if frobenius(Xc @ s - s @ Xc) > tol.residual_tol * scale:
                    raise ExtraNotAdmissible(
                        "extra element does not commute with the compressed family"
                    )
        grown = generate_star_algebra(
            GeneratorSet(S.dim, tuple(seed_S.basis) + tuple(extras)), tol
        )
        ok, worst = is_abelian(grown, tol)
        if not ok:
            raise ExtraNotAdmissible(
                f"extra elements generate a non-abelian seed (worst commutator {worst:.3e})"
            )
        inside, resid = ambient_S.contains_all(grown.basis, tol)
        if not inside:
            raise ExtraNotAdmissible(
                f"extended seed escapes the compressed ambient algebra ({resid:.3e})"
            )
        seed_S = grown

    M = extend_to_maximal_abelian(seed_S, ambient_S, tol)

    commutes_with_state = all(
        frobenius(g @ rho.density - rho.density @ g)
        <= tol.residual_tol * max(1.0, frobenius(g))
        for g in R.generators
    )
    if commutes_with_state:
        uniqueness = Uniqueness.UNIQUE_COMMUTING
    elif rho.is_pure:
        uniqueness = Uniqueness.UNIQUE_VECTOR_STATE
    else:
        uniqueness = Uniqueness.NON_UNIQUE_CHOICE
    return RBeableResult(S, _block_algebra(S, M), uniqueness, M)


def verify_def_invariance(
    B: OperatorAlgebra,
    R: GeneratorSet,
    rho: State,
    trials: int = 50,
    seed: int = 0,
    tol: Tolerance | None = None,
) -> tuple[bool, float]:
    """Randomized certification of definability under symmetry.

    Draws Hermitian combinations H over a basis of the joint commutant of
    the family and the state, so U = exp(iH) fixes both; the conjugated span
    U B U^H must equal span(B).  Passing is evidence, not proof, but the
    theorem-backed maximal constructions always pass, and the check doubles
    as a falsifier for hand-built candidates.
    """
    tol = resolve_tolerance(rho.dim, tol)
    joint = commutant(GeneratorSet(rho.dim, R.generators + (rho.density,)), tol)
    herm = joint.hermitian_basis
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        H = np.einsum("i,inm->nm", rng.standard_normal(herm.shape[0]), herm)
        U = unitary_from_hermitian(H, tol)
        conj = np.einsum("ab,kbc,cd->kad", U, B.basis, U.conj().T)
        conj_flat = conj.reshape(B.dimension, -1)
        # unitary conjugation preserves HS orthonormality, so both spans project cleanly
        r1 = np.linalg.norm(
            conj_flat - (conj_flat @ B.flat.conj().T) @ B.flat, axis=1
        ).max()
        r2 = np.linalg.norm(
            B.flat - (B.flat @ conj_flat.conj().T) @ conj_flat, axis=1
        ).max()
        worst = max(worst, float(r1), float(r2))
        if worst > tol.residual_tol:
            return False, worst
    return True, worst
