"""Worked measurement scenarios with their expected verdicts.

Each builder assembles an exact finite-arithmetic configuration -- pointer
observables strictly correlated to measured observables, entangled spin
pairs, a three-dimensional non-uniqueness construction, and a clock-shift
pair -- together with the membership verdicts or structural facts the
configuration is known to produce.  The checks below re-derive every verdict
through exact span membership so the builders double as golden tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import beable
from .algebra import (
    GeneratorSet,
    OperatorAlgebra,
    full_algebra,
    generate_star_algebra,
    span_equal,
)
from .beable import Membership, membership_fast, rbeable_vector_state
from .errors import DegenerateAngles, ValidationError
from .matcore import (
    Subspace,
    Tolerance,
    frobenius,
    hermitian_spectral,
    orthonormalize,
    resolve_tolerance,
    subspace_join,
    subspace_meet,
)
from .states import (
    State,
    definite_algebra,
    dispersion_free_decomposition,
    expectation,
)

__all__ = [
    "CheckResult",
    "MembershipQuery",
    "NonUniquenessScenario",
    "ScenarioOutcome",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "definite_algebra_checks",
    "definite_algebra_demo",
    "epr_spin",
    "evaluate_membership_queries",
    "finite_weyl",
    "finite_weyl_checks",
    "ideal_measurement",
    "ideal_measurement_extra_checks",
    "kron_all",
    "nonuniqueness_3d",
    "nonuniqueness_checks",
    "schrodinger_two_pointer",
]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

_X_PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
_X_MINUS = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0)
_Y_PLUS = np.array([1.0, 1.0j], dtype=complex) / np.sqrt(2.0)
_Y_MINUS = np.array([1.0, -1.0j], dtype=complex) / np.sqrt(2.0)


def kron_all(*mats) -> np.ndarray:
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


@dataclass(frozen=True)
class MembershipQuery:
    name: str
    observable: np.ndarray
    expected: Membership


@dataclass(frozen=True)
class ScenarioOutcome:
    """A declarative measurement configuration plus its expected verdicts."""

    label: str
    state: State
    privileged: GeneratorSet
    queries: tuple[MembershipQuery, ...]
    vector: np.ndarray | None = None
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def evaluate_membership_queries(
    outcome: ScenarioOutcome, tol: Tolerance | None = None
) -> list[CheckResult]:
    """Decide every query by exact span membership and record consistency.

    The fast test must never contradict the exact verdict; a contradiction
    fails the query outright.
    """
    if outcome.vector is None:
        raise ValidationError("membership evaluation needs a vector-state scenario")
    tol = resolve_tolerance(outcome.state.dim, tol)
    result = rbeable_vector_state(outcome.privileged, outcome.vector, tol)
    checks = []
    for q in outcome.queries:
        member, residual = result.algebra.contains(q.observable, tol)
        verdict = Membership.MEMBER if member else Membership.NON_MEMBER
        fast = membership_fast(q.observable, outcome.privileged, outcome.vector, tol)
        consistent = fast is Membership.INCONCLUSIVE or fast is verdict
        passed = verdict is q.expected and consistent
        checks.append(
            CheckResult(
                name=q.name,
                passed=passed,
                detail=(
                    f"expected {q.expected.value}, exact {verdict.value} "
                    f"(residual {residual:.2e}), fast {fast.value}"
                ),
            )
        )
    return checks


# ---------------------------------------------------------------------------
# ideal measurement
# ---------------------------------------------------------------------------


def ideal_measurement(
    apparatus_dim: int,
    coeffs,
    eigenvalues,
    tol: Tolerance | None = None,
) -> tuple[ScenarioOutcome, ScenarioOutcome]:
    """Pointer strictly correlated to a measured observable, pre and post.

    The apparatus holds a ground state x_0 and one outcome state per object
    eigenvector, so ``apparatus_dim`` must exceed the number of coefficients.
    The measured observable is expected outside the pre-measurement algebra
    exactly when the object superposition mixes at least two distinct
    eigenvalues; after the correlating evolution it always belongs.
    """
    c = np.asarray(coeffs, dtype=complex).ravel()
    lam = np.asarray(eigenvalues, dtype=float).ravel()
    k = c.size
    if lam.size != k:
        raise ValidationError("coefficient and eigenvalue lists must have equal length")
    if k < 2:
        raise ValidationError("at least two object eigenstates are required")
    if apparatus_dim < k + 1:
        raise ValidationError("apparatus must hold a ground state plus one state per outcome")
    if abs(float(np.linalg.norm(c)) - 1.0) > 1e-10:
        raise ValidationError("coefficients must be normalized")

    m = apparatus_dim
    pointer = np.diag(np.arange(m, dtype=float)).astype(complex)
    R = GeneratorSet(m * k, (kron_all(pointer, np.eye(k)),), label="pointer")
    measured = kron_all(np.eye(m), np.diag(lam).astype(complex))

    ground = np.zeros(m, dtype=complex)
    ground[0] = 1.0
    v_pre = np.kron(ground, c)
    v_post = np.zeros(m * k, dtype=complex)
    for n in range(k):
        outcome_state = np.zeros(m, dtype=complex)
        outcome_state[n + 1] = 1.0
        unit = np.zeros(k, dtype=complex)
        unit[n] = 1.0
        v_post += c[n] * np.kron(outcome_state, unit)

    support = np.abs(c) > 1e-12
    distinct_on_support = np.unique(np.round(lam[support], 12)).size
    pre_expected = Membership.MEMBER if distinct_on_support <= 1 else Membership.NON_MEMBER

    meta = {
        "apparatus_dim": m,
        "coeffs": c,
        "eigenvalues": lam,
        "measured": measured,
    }
    pre = ScenarioOutcome(
        label="ideal-measurement-pre",
        state=State.from_vector(v_pre, tol),
        privileged=R,
        queries=(MembershipQuery("measured-observable", measured, pre_expected),),
        vector=v_pre,
        metadata=meta,
    )
    post = ScenarioOutcome(
        label="ideal-measurement-post",
        state=State.from_vector(v_post, tol),
        privileged=R,
        queries=(MembershipQuery("measured-observable", measured, Membership.MEMBER),),
        vector=v_post,
        metadata=meta,
    )
    return pre, post


def ideal_measurement_extra_checks(
    post: ScenarioOutcome, tol: Tolerance | None = None
) -> list[CheckResult]:
    """The pointer-correlated observable reproduces the measured action.

    sum_n lambda_n (Q_n (x) I) lies in the generated pointer algebra and
    agrees with the measured observable on the post-measurement vector.
    """
    tol = resolve_tolerance(post.state.dim, tol)
    m = post.metadata["apparatus_dim"]
    lam = post.metadata["eigenvalues"]
    k = lam.size
    measured = post.metadata["measured"]
    correlate = np.zeros((m * k, m * k), dtype=complex)
    for n in range(k):
        Q = np.zeros((m, m), dtype=complex)
        Q[n + 1, n + 1] = 1.0
        correlate += lam[n] * kron_all(Q, np.eye(k))
    vnr = generate_star_algebra(post.privileged, tol)
    inside, resid = vnr.contains(correlate, tol)
    action = float(np.linalg.norm(correlate @ post.vector - measured @ post.vector))
    return [
        CheckResult(
            "pointer-correlate-in-generated-algebra",
            inside,
            f"containment residual {resid:.2e}",
        ),
        CheckResult(
            "pointer-correlate-reproduces-measured-action",
            action <= tol.residual_tol,
            f"action defect {action:.2e}",
        ),
    ]


# ---------------------------------------------------------------------------
# entangled spin pairs
# ---------------------------------------------------------------------------


def _singlet() -> np.ndarray:
    """The spin singlet, written in the x-eigenbasis of both particles."""
    return (np.kron(_X_PLUS, _X_MINUS) - np.kron(_X_MINUS, _X_PLUS)) / np.sqrt(2.0)


def epr_spin(tol: Tolerance | None = None) -> tuple[ScenarioOutcome, ScenarioOutcome]:
    """Strictly correlated x-spin measurement on one half of a singlet.

    A three-level pointer (values 0, +1, -1) measures the first particle's
    x-spin.  Before the interaction none of the single-particle spin
    components is determinate alongside the pointer; afterwards both x-spins
    and their product are, while the y-spins are not.
    """
    eye2 = np.eye(2, dtype=complex)
    pointer = np.diag([0.0, 1.0, -1.0]).astype(complex)
    R = GeneratorSet(12, (kron_all(pointer, eye2, eye2),), label="x-spin pointer")

    e_ground = np.array([1.0, 0.0, 0.0], dtype=complex)
    e_plus = np.array([0.0, 1.0, 0.0], dtype=complex)
    e_minus = np.array([0.0, 0.0, 1.0], dtype=complex)

    v_pre = np.kron(e_ground, _singlet())
    v_post = (
        np.kron(e_plus, np.kron(_X_PLUS, _X_MINUS))
        - np.kron(e_minus, np.kron(_X_MINUS, _X_PLUS))
    ) / np.sqrt(2.0)

    eye3 = np.eye(3, dtype=complex)
    sx1 = kron_all(eye3, SIGMA_X, eye2)
    sx2 = kron_all(eye3, eye2, SIGMA_X)
    sy1 = kron_all(eye3, SIGMA_Y, eye2)
    sy2 = kron_all(eye3, eye2, SIGMA_Y)
    sx1sx2 = kron_all(eye3, SIGMA_X, SIGMA_X)

    pre = ScenarioOutcome(
        label="epr-spin-pre",
        state=State.from_vector(v_pre, tol),
        privileged=R,
        queries=(
            MembershipQuery("sigma_x1", sx1, Membership.NON_MEMBER),
            MembershipQuery("sigma_x2", sx2, Membership.NON_MEMBER),
            MembershipQuery("sigma_y1", sy1, Membership.NON_MEMBER),
            MembershipQuery("sigma_y2", sy2, Membership.NON_MEMBER),
        ),
        vector=v_pre,
    )
    post = ScenarioOutcome(
        label="epr-spin-post",
        state=State.from_vector(v_post, tol),
        privileged=R,
        queries=(
            MembershipQuery("sigma_x1_sigma_x2", sx1sx2, Membership.MEMBER),
            MembershipQuery("sigma_x1", sx1, Membership.MEMBER),
            MembershipQuery("sigma_x2", sx2, Membership.MEMBER),
            MembershipQuery("sigma_y1", sy1, Membership.NON_MEMBER),
            MembershipQuery("sigma_y2", sy2, Membership.NON_MEMBER),
        ),
        vector=v_post,
    )
    return pre, post


def schrodinger_two_pointer(tol: Tolerance | None = None) -> ScenarioOutcome:
    """Simultaneous x-measurement on particle 1 and y-measurement on particle 2.

    Two three-level pointers are strictly correlated, through permutation
    correlators in the respective eigenbases, to sigma_x of particle 1 and
    sigma_y of particle 2 of a singlet.  Only strictness of the correlation
    matters for the verdicts, so any strict correlator gives the same
    answers.  With both pointers privileged, sigma_x1 and sigma_y2 are
    determinate while sigma_x2 and sigma_y1 are not.
    """
    eye2 = np.eye(2, dtype=complex)
    eye3 = np.eye(3, dtype=complex)
    dim = 36

    pointer = np.diag([0.0, 1.0, -1.0]).astype(complex)
    R1 = kron_all(pointer, eye3, eye2, eye2)
    R2 = kron_all(eye3, pointer, eye2, eye2)
    R = GeneratorSet(dim, (R1, R2), label="two pointers")

    ground = np.zeros(3, dtype=complex)
    ground[0] = 1.0
    initial = np.kron(np.kron(ground, ground), _singlet())

    px = [np.outer(_X_PLUS, _X_PLUS.conj()), np.outer(_X_MINUS, _X_MINUS.conj())]
    py = [np.outer(_Y_PLUS, _Y_PLUS.conj()), np.outer(_Y_MINUS, _Y_MINUS.conj())]
    # correlator 1 acts on (pointer1, particle1): reorder slots via kron structure
    u1 = np.zeros((dim, dim), dtype=complex)
    u2 = np.zeros((dim, dim), dtype=complex)
    for j, P in enumerate(px):
        T = np.eye(3, dtype=complex)
        slot = j + 1
        T[0, 0] = T[slot, slot] = 0.0
        T[0, slot] = T[slot, 0] = 1.0
        u1 += kron_all(T, eye3, P, eye2)
    for j, P in enumerate(py):
        T = np.eye(3, dtype=complex)
        slot = j + 1
        T[0, 0] = T[slot, slot] = 0.0
        T[0, slot] = T[slot, 0] = 1.0
        u2 += kron_all(eye3, T, eye2, P)
    v_t = u2 @ (u1 @ initial)

    queries = (
        MembershipQuery("sigma_x1", kron_all(eye3, eye3, SIGMA_X, eye2), Membership.MEMBER),
        MembershipQuery("sigma_y2", kron_all(eye3, eye3, eye2, SIGMA_Y), Membership.MEMBER),
        MembershipQuery("sigma_x2", kron_all(eye3, eye3, eye2, SIGMA_X), Membership.NON_MEMBER),
        MembershipQuery("sigma_y1", kron_all(eye3, eye3, SIGMA_Y, eye2), Membership.NON_MEMBER),
        MembershipQuery("identity", np.eye(dim, dtype=complex), Membership.MEMBER),
    )
    return ScenarioOutcome(
        label="schrodinger-two-pointer",
        state=State.from_vector(v_t, tol),
        privileged=R,
        queries=queries,
        vector=v_t,
    )


# ---------------------------------------------------------------------------
# three-dimensional non-uniqueness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NonUniquenessScenario:
    outcome: ScenarioOutcome
    algebras: tuple[OperatorAlgebra, OperatorAlgebra]
    witnesses: tuple[np.ndarray, np.ndarray]


def nonuniqueness_3d(
    angles: tuple[float, float] = (0.7, 0.4), tol: Tolerance | None = None
) -> NonUniquenessScenario:
    """Two distinct maximal algebras over one privileged observable and state.

    The privileged observable R has eigenspaces [r1] and [r2, r3]; the state
    has three distinct nonzero eigenvalues along a rotated basis w.  Each of
    the two nondegenerate operators built from the lattice element
    ([w_i] v [r1]) ^ [r2, r3] generates a maximal abelian algebra containing
    R, and the two are genuinely different.
    """
    tol = resolve_tolerance(3, tol)
    theta, phi = float(angles[0]), float(angles[1])
    ry = np.array(
        [
            [np.cos(theta), 0.0, np.sin(theta)],
            [0.0, 1.0, 0.0],
            [-np.sin(theta), 0.0, np.cos(theta)],
        ]
    )
    rz = np.array(
        [
            [np.cos(phi), -np.sin(phi), 0.0],
            [np.sin(phi), np.cos(phi), 0.0],
            [0.0, 0.0, 1.0],
        ]
    )
    w = (rz @ ry).astype(complex)  # columns w_1, w_2, w_3

    r1 = Subspace(3, np.eye(3, dtype=complex)[:, :1])
    r23 = Subspace(3, np.eye(3, dtype=complex)[:, 1:])
    R = np.diag([1.0, -1.0, -1.0]).astype(complex)

    for i in (0, 1):
        wi = w[:, i]
        if (
            np.linalg.norm(r1.projection @ wi) <= tol.residual_tol
            or np.linalg.norm(r23.projection @ wi) <= tol.residual_tol
        ):
            raise DegenerateAngles("w vectors must avoid both eigenspaces of R")

    eigvals = np.array([0.5, 0.3, 0.2])
    K = (w * eigvals) @ w.conj().T

    def lattice_axis(i: int) -> Subspace:
        span_wi = orthonormalize([w[:, i]], tol=tol)
        axis = subspace_meet(subspace_join(span_wi, r1, tol), r23, tol)
        if axis.dim != 1:
            raise DegenerateAngles("lattice element did not come out one-dimensional")
        return axis

    axis1, axis2 = lattice_axis(0), lattice_axis(1)
    overlap = abs(complex(np.vdot(axis1.basis[:, 0], axis2.basis[:, 0])))
    if not tol.residual_tol < overlap < 1.0 - tol.residual_tol:
        raise DegenerateAngles(
            "projected w vectors must be neither parallel nor orthogonal"
        )

    def nondegenerate_operator(axis: Subspace) -> np.ndarray:
        inside = subspace_meet(axis.complement(tol), r23, tol)
        u1 = axis.basis[:, 0]
        u2 = inside.basis[:, 0]
        u3 = r1.basis[:, 0]
        return (
            1.0 * np.outer(u1, u1.conj())
            + 2.0 * np.outer(u2, u2.conj())
            + 3.0 * np.outer(u3, u3.conj())
        )

    A1 = nondegenerate_operator(axis1)
    A2 = nondegenerate_operator(axis2)
    vn1 = generate_star_algebra(GeneratorSet(3, (A1,)), tol)
    vn2 = generate_star_algebra(GeneratorSet(3, (A2,)), tol)

    outcome = ScenarioOutcome(
        label="nonuniqueness-3d",
        state=State.from_density(K, tol),
        privileged=GeneratorSet(3, (R,), label="two-eigenspace observable"),
        queries=(),
        metadata={"angles": (theta, phi), "witness_operators": (A1, A2)},
    )
    return NonUniquenessScenario(outcome, (vn1, vn2), (A1, A2))


def nonuniqueness_checks(
    scenario: NonUniquenessScenario, tol: Tolerance | None = None, trials: int = 50
) -> list[CheckResult]:
    tol = resolve_tolerance(3, tol)
    rho = scenario.outcome.state
    R = scenario.outcome.privileged
    ambient = generate_star_algebra(R.extended([rho.density]), tol)
    checks = []
    for idx, alg in enumerate(scenario.algebras, start=1):
        ok_r, resid_r = alg.contains(R.generators[0], tol)
        checks.append(
            CheckResult(f"algebra-{idx}-contains-privileged", ok_r, f"residual {resid_r:.2e}")
        )
        inside, resid_in = ambient.contains_all(alg.basis, tol)
        checks.append(
            CheckResult(
                f"algebra-{idx}-inside-generated-ambient", inside, f"residual {resid_in:.2e}"
            )
        )
        from .algebra import relative_commutant

        C = relative_commutant(alg, ambient, tol)
        fixed, defect = alg.contains_all(C.basis, tol)
        checks.append(
            CheckResult(
                f"algebra-{idx}-maximal-abelian-in-ambient",
                fixed,
                f"relative commutant defect {defect:.2e}",
            )
        )
        verdict = beable.is_beable(alg, rho, tol)
        checks.append(
            CheckResult(
                f"algebra-{idx}-beable",
                verdict.is_beable,
                f"worst residual {verdict.worst_residual:.2e}",
            )
        )
        inv_ok, inv_worst = beable.verify_def_invariance(
            alg, R, rho, trials=trials, seed=idx, tol=tol
        )
        checks.append(
            CheckResult(
                f"algebra-{idx}-definability-invariance",
                inv_ok,
                f"{trials} trials, worst residual {inv_worst:.2e}",
            )
        )
    equal, defect = span_equal(scenario.algebras[0], scenario.algebras[1], tol)
    checks.append(
        CheckResult(
            "algebras-distinct",
            (not equal) and defect > 10 * tol.residual_tol,
            f"span defect {defect:.2e}",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# finite clock-shift pair
# ---------------------------------------------------------------------------


def finite_weyl(n: int, tol: Tolerance | None = None) -> ScenarioOutcome:
    """Clock-shift pair U, V on n dimensions with UV = exp(2 pi i / n) VU.

    The privileged family is the pair of Hermitian parts of the clock; its
    generated algebra is the diagonal algebra.  Every dispersion-free
    component there kills all nontrivial powers of the shift, the finite
    analogue of conjugate pairs having no joint sharp values.  This is an
    analogue: the continuous-spectrum statement itself is out of reach at
    finite dimension.
    """
    if n < 2:
        raise ValidationError("the clock-shift pair needs dimension at least 2")
    omega = np.exp(2j * np.pi / n)
    clock = np.diag(omega ** np.arange(n))
    shift = np.zeros((n, n), dtype=complex)
    for j in range(n):
        shift[(j + 1) % n, j] = 1.0
    gens = GeneratorSet(
        n,
        (clock + clock.conj().T, 1j * (clock - clock.conj().T)),
        label="clock hermitian parts",
    )
    return ScenarioOutcome(
        label=f"finite-weyl-{n}",
        state=State.maximally_mixed(n, tol),
        privileged=gens,
        queries=(),
        metadata={"n": n, "clock": clock, "shift": shift},
    )


def finite_weyl_checks(outcome: ScenarioOutcome, tol: Tolerance | None = None) -> list[CheckResult]:
    n = outcome.metadata["n"]
    shift = outcome.metadata["shift"]
    tol = resolve_tolerance(n, tol)
    clock_algebra = generate_star_algebra(outcome.privileged, tol)
    checks = [
        CheckResult(
            "clock-algebra-is-diagonal",
            clock_algebra.dimension == n,
            f"dimension {clock_algebra.dimension}, expected {n}",
        )
    ]

    basis_state = np.zeros(n, dtype=complex)
    basis_state[0] = 1.0
    states = [("maximally-mixed", outcome.state), ("basis-state", State.from_vector(basis_state, tol))]
    worst_shift = 0.0
    for _, rho in states:
        comps = dispersion_free_decomposition(rho, clock_algebra, tol)
        power = shift.copy()
        for _k in range(1, n):
            for comp in comps:
                worst_shift = max(worst_shift, abs(comp.value_of(power)))
            power = power @ shift
    checks.append(
        CheckResult(
            "shift-powers-vanish-on-components",
            worst_shift <= 1e-10,
            f"worst |<V^k>| = {worst_shift:.2e}",
        )
    )

    worst_uniform = 0.0
    comps = dispersion_free_decomposition(outcome.state, clock_algebra, tol)
    for herm in (shift + shift.conj().T, 1j * (shift - shift.conj().T)):
        for cluster in hermitian_spectral(herm, tol).clusters:
            for comp in comps:
                worst_uniform = max(
                    worst_uniform,
                    abs(comp.value_of(cluster.projection) - cluster.multiplicity / n),
                )
    checks.append(
        CheckResult(
            "shift-spectral-distribution-uniform",
            worst_uniform <= tol.residual_tol,
            f"worst deviation {worst_uniform:.2e}",
        )
    )

    full = full_algebra(n)
    not_beable = all(
        not beable.is_beable(full, rho, tol).is_beable for _, rho in states
    )
    checks.append(
        CheckResult(
            "full-algebra-never-beable",
            not_beable,
            "commutators escape the left kernel for every tested state",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# definite algebra of a pure state
# ---------------------------------------------------------------------------


def definite_algebra_demo(v, tol: Tolerance | None = None) -> ScenarioOutcome:
    """The observables sharp in a pure state: those with the vector as eigenvector."""
    v = np.asarray(v, dtype=complex).ravel()
    tol = resolve_tolerance(v.size, tol)
    return ScenarioOutcome(
        label="definite-algebra",
        state=State.from_vector(v, tol),
        privileged=GeneratorSet(v.size, (), label="none"),
        queries=(),
        vector=v,
        metadata={},
    )


def definite_algebra_checks(
    outcome: ScenarioOutcome, tol: Tolerance | None = None
) -> list[CheckResult]:
    v = outcome.vector
    n = v.size
    tol = resolve_tolerance(n, tol)
    rho = outcome.state
    D = definite_algebra(rho, full_algebra(n), tol)

    span = Subspace(n, v.reshape(n, 1))
    comp = span.complement(tol)
    blocks = [np.outer(v, v.conj())]
    for a in range(comp.dim):
        for b in range(comp.dim):
            blocks.append(np.outer(comp.basis[:, a], comp.basis[:, b].conj()))
    block_alg = OperatorAlgebra.from_matrices(blocks, n, tol)

    equal, defect = span_equal(D, block_alg, tol)
    expected_dim = (n - 1) ** 2 + 1
    maximal = beable.is_maximal_beable(D, rho, tol)
    return [
        CheckResult(
            "definite-algebra-matches-eigenvector-block",
            equal,
            f"span defect {defect:.2e}",
        ),
        CheckResult(
            "definite-algebra-dimension",
            D.dimension == expected_dim,
            f"dimension {D.dimension}, expected {expected_dim}",
        ),
        CheckResult("definite-algebra-maximal-beable", maximal, ""),
    ]
