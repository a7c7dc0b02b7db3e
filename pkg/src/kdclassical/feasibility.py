"""Existence and construction of KD classical states with prescribed supports.

A normalized state with supports (S_A, S_B) is KD classical iff there are
phases alpha_j, beta_k and strictly positive amplitudes A_j, B_k with

    arg U[j,k] = alpha_j + beta_k   (mod 2pi)   wherever U[j,k] != 0 on the window,
    psi = sum_j A_j e^{i alpha_j} |a_j>  =  sum_k B_k e^{-i beta_k} |b_k>.

The phase condition is solved by gauge-fixing one row phase per connected
component of the window's nonzero pattern and propagating along a spanning
forest; every non-tree edge is then re-verified, which is equivalent to
demanding that all entry-phase cycle sums vanish.  The amplitude condition
becomes a homogeneous real linear system (fixed-point equations through the
window's modulus matrix, plus vanishing of both expansions off-support)
whose null space must contain a strictly positive vector.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_TOL,
    Tolerances,
    as_state,
    as_unitary,
    circular_distance,
    normalize_angle,
)
from .errors import InconsistentSupportError, InternalConsistencyError
from .kd import SupportPair, b_coefficients, classify

_FALLBACK_SAMPLES_PER_DIM = 10_000
_PROJECTION_MAX_ITER = 10_000


@dataclass(frozen=True)
class PhaseAssignment:
    """Row/column phases realizing arg U[j,k] = alpha_j + beta_k on the window."""

    alpha: dict[int, float]
    beta: dict[int, float]


@dataclass(frozen=True)
class PhaseCycleViolation:
    """A 4-cycle of nonzero window entries whose phase sum does not vanish.

    Indices may be None when the obstruction is a longer chordless cycle,
    which can happen only for windows with zero entries.
    """

    j1: int | None
    j2: int | None
    k1: int | None
    k2: int | None


@dataclass(frozen=True)
class NoPositiveAmplitude:
    """The amplitude system has no strictly positive solution.

    ``low_confidence`` marks the rare case where the projection solver hit
    its iteration bound and the sampling fallback also found nothing, so
    infeasibility was not proven exactly.
    """

    low_confidence: bool = False


@dataclass(frozen=True)
class OffSupportLeak:
    """Amplitudes solving the window fixed point exist, but every such state
    has a nonzero coefficient at ``index`` outside the requested support."""

    index: int
    side: str  # "a" or "b"


Refutation = PhaseCycleViolation | NoPositiveAmplitude | OffSupportLeak


@dataclass(frozen=True)
class AmplitudeSolution:
    """Strictly positive amplitudes over the two supports, normalized so the
    squared A-side amplitudes sum to 1."""

    s_a: tuple[int, ...]
    s_b: tuple[int, ...]
    a: np.ndarray
    b: np.ndarray
    null_space_dim: int
    tolerance_warning: bool = False


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    support: SupportPair
    phases: PhaseAssignment | None = None
    amplitudes: AmplitudeSolution | None = None
    state: np.ndarray | None = field(default=None, repr=False)
    refutation: Refutation | None = None


def _window_edges(U: np.ndarray, sp: SupportPair, tol: Tolerances):
    """Nonzero cells of the support window, with empty rows/columns rejected."""
    d = U.shape[0]
    if not sp.s_a or not sp.s_b:
        raise ValueError("both supports must be nonempty")
    if sp.s_a[-1] >= d or sp.s_b[-1] >= d:
        raise ValueError(f"support indices must lie in [0, {d})")
    row_hits = {j: [] for j in sp.s_a}
    col_hits = {k: [] for k in sp.s_b}
    for j in sp.s_a:
        for k in sp.s_b:
            if abs(U[j, k]) > tol.eps_zero:
                row_hits[j].append(k)
                col_hits[k].append(j)
    for j, hits in row_hits.items():
        if not hits:
            raise InconsistentSupportError(
                f"support row {j} has no nonzero entry over the B support"
            )
    for k, hits in col_hits.items():
        if not hits:
            raise InconsistentSupportError(
                f"support column {k} has no nonzero entry over the A support"
            )
    return row_hits, col_hits


def find_violating_four_cycle(U, sp: SupportPair, tol: Tolerances = DEFAULT_TOL):
    """First 4-cycle (j1, j2, k1, k2) of nonzero window entries whose phase sum
    theta[j1,k1] - theta[j1,k2] - theta[j2,k1] + theta[j2,k2] is not 0 mod 2pi,
    or None when all 4-cycles are consistent."""
    U = np.asarray(U, dtype=np.complex128)
    theta = np.angle(U)
    nonzero = np.abs(U) > tol.eps_zero
    s_a, s_b = sp.s_a, sp.s_b
    for i1 in range(len(s_a)):
        for i2 in range(i1 + 1, len(s_a)):
            j1, j2 = s_a[i1], s_a[i2]
            for l1 in range(len(s_b)):
                if not (nonzero[j1, s_b[l1]] and nonzero[j2, s_b[l1]]):
                    continue
                for l2 in range(l1 + 1, len(s_b)):
                    k1, k2 = s_b[l1], s_b[l2]
                    if not (nonzero[j1, k2] and nonzero[j2, k2]):
                        continue
                    cycle = theta[j1, k1] - theta[j1, k2] - theta[j2, k1] + theta[j2, k2]
                    if circular_distance(cycle, 0.0) > tol.eps_angle:
                        return j1, j2, k1, k2
    return None


def solve_phases(
    U, sp: SupportPair, tol: Tolerances = DEFAULT_TOL
) -> PhaseAssignment | PhaseCycleViolation:
    """Find phases with arg U[j,k] = alpha_j + beta_k on the window, or refute.

    One alpha per connected component is gauge-fixed to 0 (the smallest row
    index); the rest propagate along a spanning forest and every edge is
    re-verified against the final assignment within eps_angle.
    """
    U = as_unitary(U, tol)
    row_hits, col_hits = _window_edges(U, sp, tol)
    theta = {
        (j, k): normalize_angle(np.angle(U[j, k]))
        for j in sp.s_a
        for k in row_hits[j]
    }

    alpha: dict[int, float] = {}
    beta: dict[int, float] = {}
    for root in sp.s_a:
        if root in alpha:
            continue
        alpha[root] = 0.0
        queue: deque[tuple[str, int]] = deque([("row", root)])
        while queue:
            side, idx = queue.popleft()
            if side == "row":
                for k in row_hits[idx]:
                    if k not in beta:
                        beta[k] = normalize_angle(theta[idx, k] - alpha[idx])
                        queue.append(("col", k))
            else:
                for j in col_hits[idx]:
                    if j not in alpha:
                        alpha[j] = normalize_angle(theta[j, idx] - beta[idx])
                        queue.append(("row", j))

    for (j, k), th in theta.items():
        if circular_distance(th, alpha[j] + beta[k]) > tol.eps_angle:
            quad = find_violating_four_cycle(U, sp, tol)
            if quad is None:
                return PhaseCycleViolation(None, None, None, None)
            return PhaseCycleViolation(*quad)
    return PhaseAssignment(alpha=alpha, beta=beta)


def _positive_null_vector(basis: np.ndarray) -> tuple[np.ndarray | None, bool]:
    """Search the column span of ``basis`` (n x m) for a componentwise positive
    vector.  Returns (vector, low_confidence)."""
    n, m = basis.shape
    if m == 0:
        return None, False
    if m == 1:
        x = basis[:, 0].copy()
        if x.sum() < 0.0:
            x = -x
        return (x, False) if np.all(x > 0.0) else (None, False)

    # Feasibility of N c >= 1 (scale-invariant form of strict positivity),
    # by successive projection onto the most violated half-space.
    row_norms_sq = np.einsum("ij,ij->i", basis, basis)
    if np.any(row_norms_sq <= 0.0):
        return None, False  # some component vanishes on the whole null space
    c, *_ = np.linalg.lstsq(basis, np.ones(n), rcond=None)
    for _ in range(_PROJECTION_MAX_ITER):
        values = basis @ c
        worst = int(np.argmin(values))
        if values[worst] >= 1.0 - 1e-12:
            return basis @ c, False
        c = c + ((1.0 - values[worst]) / row_norms_sq[worst]) * basis[worst]

    # Projection did not settle: sample directions on the unit sphere.
    rng = np.random.Generator(np.random.Philox(0x5D1CE))
    remaining = _FALLBACK_SAMPLES_PER_DIM * m
    while remaining > 0:
        batch = min(remaining, 2048)
        remaining -= batch
        cs = rng.standard_normal((batch, m))
        values = cs @ basis.T
        hits = np.flatnonzero(values.min(axis=1) > 0.0)
        if hits.size:
            return basis @ cs[hits[0]], False
    return None, True


def _amplitude_system(
    U: np.ndarray, sp: SupportPair, phases: PhaseAssignment
) -> tuple[np.ndarray, np.ndarray]:
    """Stack the homogeneous real system over (a, b): window fixed point plus
    vanishing of both basis expansions outside the supports.  Also returns
    the fixed-point-only subsystem used for refutation diagnostics."""
    d = U.shape[0]
    s_a, s_b = list(sp.s_a), list(sp.s_b)
    n_a, n_b = len(s_a), len(s_b)
    V = np.abs(U[np.ix_(s_a, s_b)])
    alpha = np.array([phases.alpha[j] for j in s_a])
    beta = np.array([phases.beta[k] for k in s_b])

    top = np.hstack([np.eye(n_a), -V])
    mid = np.hstack([-V.T, np.eye(n_b)])
    fixed_point = np.vstack([top, mid])

    rows = [fixed_point]
    comp_rows = sorted(set(range(d)) - set(s_a))
    if comp_rows:
        # A-coefficients of the B-side expansion must vanish off S_A
        coeff = U[np.ix_(comp_rows, s_b)] * np.exp(-1j * beta)[None, :]
        zeros = np.zeros((len(comp_rows), n_a))
        rows.append(np.hstack([zeros, coeff.real]))
        rows.append(np.hstack([zeros, coeff.imag]))
    comp_cols = sorted(set(range(d)) - set(s_b))
    if comp_cols:
        # B-coefficients of the A-side expansion must vanish off S_B
        coeff = (U.conj()[np.ix_(s_a, comp_cols)].T) * np.exp(1j * alpha)[None, :]
        zeros = np.zeros((len(comp_cols), n_b))
        rows.append(np.hstack([coeff.real, zeros]))
        rows.append(np.hstack([coeff.imag, zeros]))
    return np.vstack(rows), fixed_point


def _null_space(system: np.ndarray, tol: Tolerances) -> tuple[np.ndarray, bool]:
    """Orthonormal null-space basis (columns) plus an ambiguous-band flag."""
    n = system.shape[1]
    _, sv, vt = np.linalg.svd(system)
    threshold = tol.eps_eig * max(1.0, float(sv[0]) if sv.size else 1.0)
    keep = [i for i in range(n) if i >= sv.size or sv[i] <= threshold]
    warn = bool(np.any((sv > threshold) & (sv <= 10.0 * threshold)))
    return vt[keep].T if keep else np.zeros((n, 0)), warn


def solve_amplitudes(
    U, sp: SupportPair, phases: PhaseAssignment, tol: Tolerances = DEFAULT_TOL
) -> AmplitudeSolution | NoPositiveAmplitude | OffSupportLeak:
    """Find strictly positive amplitudes for a valid phase assignment, or refute.

    Builds the homogeneous system, extracts its null space, and searches it
    for a strictly positive vector; on success the solution is scaled so the
    squared A-side amplitudes sum to one.
    """
    U = as_unitary(U, tol)
    n_a, n_b = sp.n_a, sp.n_b
    system, fixed_point = _amplitude_system(U, sp, phases)
    basis, warn = _null_space(system, tol)
    candidate, low_confidence = _positive_null_vector(basis)

    if candidate is not None:
        scaled = candidate / np.linalg.norm(candidate[:n_a])
        if np.all(scaled > tol.eps_zero):
            return AmplitudeSolution(
                s_a=sp.s_a,
                s_b=sp.s_b,
                a=scaled[:n_a],
                b=scaled[n_a:],
                null_space_dim=basis.shape[1],
                tolerance_warning=warn,
            )

    # Distinguish genuinely unsolvable amplitudes from a leak off-support:
    # does the window fixed point alone admit a positive solution?
    fp_basis, _ = _null_space(fixed_point, tol)
    fp_candidate, _ = _positive_null_vector(fp_basis)
    if fp_candidate is not None:
        scaled = fp_candidate / np.linalg.norm(fp_candidate[:n_a])
        if np.all(scaled > tol.eps_zero):
            return _locate_leak(U, sp, phases, scaled[:n_a], scaled[n_a:])
    return NoPositiveAmplitude(low_confidence=low_confidence)


def _locate_leak(
    U: np.ndarray, sp: SupportPair, phases: PhaseAssignment, a: np.ndarray, b: np.ndarray
) -> OffSupportLeak:
    """Index where a fixed-point solution's expansions spill outside the supports."""
    d = U.shape[0]
    s_a, s_b = list(sp.s_a), list(sp.s_b)
    beta = np.array([phases.beta[k] for k in s_b])
    alpha = np.array([phases.alpha[j] for j in s_a])
    worst: tuple[float, int, str] = (-1.0, -1, "a")
    comp_rows = sorted(set(range(d)) - set(s_a))
    if comp_rows:
        leak = np.abs(U[np.ix_(comp_rows, s_b)] @ (b * np.exp(-1j * beta)))
        i = int(np.argmax(leak))
        worst = max(worst, (float(leak[i]), comp_rows[i], "a"))
    comp_cols = sorted(set(range(d)) - set(s_b))
    if comp_cols:
        leak = np.abs(U.conj()[np.ix_(s_a, comp_cols)].T @ (a * np.exp(1j * alpha)))
        i = int(np.argmax(leak))
        worst = max(worst, (float(leak[i]), comp_cols[i], "b"))
    return OffSupportLeak(index=worst[1], side=worst[2])


def construct_classical_state(
    U, sp: SupportPair, tol: Tolerances = DEFAULT_TOL
) -> FeasibilityResult:
    """Decide whether a KD classical state with exactly these supports exists,
    and build one when it does.

    The constructed state is re-verified end to end (classicality plus exact
    support equality); feasible=True is returned only when both re-checks pass.
    """
    U = as_unitary(U, tol)
    phases = solve_phases(U, sp, tol)
    if isinstance(phases, PhaseCycleViolation):
        return FeasibilityResult(feasible=False, support=sp, refutation=phases)
    amplitudes = solve_amplitudes(U, sp, phases, tol)
    if not isinstance(amplitudes, AmplitudeSolution):
        return FeasibilityResult(feasible=False, support=sp, refutation=amplitudes)

    psi = np.zeros(U.shape[0], dtype=np.complex128)
    alpha = np.array([phases.alpha[j] for j in sp.s_a])
    psi[list(sp.s_a)] = amplitudes.a * np.exp(1j * alpha)
    psi = psi / np.linalg.norm(psi)

    report = classify(U, psi, tol)
    if report.classical and report.support == sp:
        return FeasibilityResult(
            feasible=True,
            support=sp,
            phases=phases,
            amplitudes=amplitudes,
            state=psi,
        )
    # A borderline null vector slipped through the singular-value threshold:
    # fail closed with the most informative refutation available.
    if report.support != sp:
        extra_b = set(report.support.s_b) ^ set(sp.s_b)
        extra_a = set(report.support.s_a) ^ set(sp.s_a)
        if extra_a:
            refutation: Refutation = OffSupportLeak(index=min(extra_a), side="a")
        else:
            refutation = OffSupportLeak(index=min(extra_b), side="b")
    else:
        refutation = NoPositiveAmplitude(low_confidence=True)
    return FeasibilityResult(feasible=False, support=sp, refutation=refutation)


def decompose_classical_state(
    U, psi, tol: Tolerances = DEFAULT_TOL
) -> tuple[SupportPair, PhaseAssignment, AmplitudeSolution]:
    """Read the phases and amplitudes off a state already known to be classical.

    Extracts alpha_j = arg<a_j|psi>, beta_k = arg<psi|b_k>, the positive
    amplitudes, and re-asserts the phase identity on every nonzero window
    entry and the amplitude fixed point; any failure means tolerances are
    mis-set and raises InternalConsistencyError.
    """
    U = as_unitary(U, tol)
    psi = as_state(psi)
    report = classify(U, psi, tol)
    if not report.classical:
        raise ValueError("state is not KD classical for this transition matrix")
    sp = report.support
    b_coeff = b_coefficients(U, psi)

    alpha = {j: normalize_angle(np.angle(psi[j])) for j in sp.s_a}
    beta = {k: normalize_angle(np.angle(np.conj(b_coeff[k]))) for k in sp.s_b}
    a_vec = np.abs(psi[list(sp.s_a)])
    b_vec = np.abs(b_coeff[list(sp.s_b)])

    for j in sp.s_a:
        for k in sp.s_b:
            if abs(U[j, k]) <= tol.eps_zero:
                continue
            theta = normalize_angle(np.angle(U[j, k]))
            if circular_distance(theta, alpha[j] + beta[k]) > tol.eps_angle:
                raise InternalConsistencyError(
                    f"phase identity fails at window cell ({j}, {k}) "
                    "of a state that classified as classical"
                )
    V = np.abs(U[np.ix_(list(sp.s_a), list(sp.s_b))])
    if np.max(np.abs(a_vec - V @ b_vec)) > 1e-8 or np.max(np.abs(b_vec - V.T @ a_vec)) > 1e-8:
        raise InternalConsistencyError(
            "amplitude fixed point fails for a state that classified as classical"
        )
    amplitudes = AmplitudeSolution(
        s_a=sp.s_a, s_b=sp.s_b, a=a_vec, b=b_vec, null_space_dim=0
    )
    return sp, PhaseAssignment(alpha=alpha, beta=beta), amplitudes


def mub_uniform_amplitude_check(U, psi, tol: Tolerances = DEFAULT_TOL) -> bool:
    """For a mutually unbiased basis pair, a classical state must have all
    A-amplitudes equal, all B-amplitudes equal, and n_A * n_B = d exactly.

    Raises when U is not unbiased (some |U[j,k]| differs from 1/sqrt(d)) or
    psi is not classical.
    """
    U = as_unitary(U, tol)
    d = U.shape[0]
    if float(np.max(np.abs(np.abs(U) - 1.0 / np.sqrt(d)))) > tol.eps_zero:
        raise ValueError("transition matrix is not a mutually unbiased pair")
    sp, _, amplitudes = decompose_classical_state(U, psi, tol)
    a_flat = float(np.ptp(amplitudes.a)) <= 1e-8
    b_flat = float(np.ptp(amplitudes.b)) <= 1e-8
    return a_flat and b_flat and sp.n_a * sp.n_b == d
