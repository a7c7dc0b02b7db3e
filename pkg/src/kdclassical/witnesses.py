"""Zero-counting certificates of KD nonclassicality.

For an indecomposable transition matrix, the support window of any KD
classical state splits into s nonnegative blocks with s <= d/2, and then
two facts tie the supports to the zeros of U: n_A + n_B <= d + s, and for
s >= 2 the matrix must contain at least s(2s - 1) zero entries.  Running
these implications backwards gives one-directional witnesses: when the
zeros are too few for the support sizes observed, no block count is
available and the state is certifiably nonclassical.  Witnesses never
certify classicality.

The s(2s - 1) floor counts cross-block window zeros plus the zeros forced
on single-row/column blocks by their vanishing flanks; the flank zeros
exist only when some index lies outside each support.  A window covering
a full basis side (n_A = d or n_B = d) evades part of the count (e.g. two
1x2 blocks across all four columns of a 4x4 unitary force just 4 zeros,
not 6), but the cross-block zeros alone still force N >= 2s(s - 1).  The
floor-based witnesses therefore use s(2s - 1) when n_A < d and n_B < d,
and the weaker unconditional floor 2s(s - 1) otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blocks import canonical_form, decompose
from .core import DEFAULT_TOL, Tolerances, as_state, as_unitary
from .errors import DecomposableMatrixError
from .kd import classify, supports

NONCLASSICAL = "nonclassical"
BOUND_ONLY = "bound_only"


@dataclass(frozen=True)
class WitnessVerdict:
    name: str
    fired: bool
    implies: str  # NONCLASSICAL or BOUND_ONLY


@dataclass(frozen=True)
class WitnessReport:
    n_zeros: int
    s_full: int
    z_r: int
    z_c: int
    n_a: int
    n_b: int
    verdicts: tuple[WitnessVerdict, ...]

    @property
    def certifies_nonclassical(self) -> bool:
        return any(v.fired and v.implies == NONCLASSICAL for v in self.verdicts)


def count_zeros(U, tol: Tolerances = DEFAULT_TOL) -> int:
    """Number of entries with modulus <= eps_zero; gauge invariant."""
    U = np.asarray(U, dtype=np.complex128)
    return int(np.sum(np.abs(U) <= tol.eps_zero))


def two_line_zeros(U, tol: Tolerances = DEFAULT_TOL) -> tuple[int, int]:
    """(z_r, z_c): the largest total zero count over any two rows / columns.

    For d < 2 both are 0 by convention.
    """
    U = np.asarray(U, dtype=np.complex128)
    zero = np.abs(U) <= tol.eps_zero
    if min(U.shape) < 2:
        return 0, 0
    row_counts = np.sort(zero.sum(axis=1))[::-1]
    col_counts = np.sort(zero.sum(axis=0))[::-1]
    return int(row_counts[0] + row_counts[1]), int(col_counts[0] + col_counts[1])


def zero_count_floor(s: int) -> int:
    """Zeros a window with s >= 2 blocks forces on U when an index exists
    outside both supports (flanked case)."""
    return s * (2 * s - 1)


def cross_zero_floor(s: int) -> int:
    """Zeros forced by the cross-block window cells alone, valid without
    any flank assumption."""
    return 2 * s * (s - 1)


def zero_count_bound_holds(U, states, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Check N_zeros >= s(2s - 1) against classical states supplied by the caller.

    ``states`` provide the witness windows: each must be classical for U;
    the largest block count s among their canonical forms is used.  Windows
    covering a full basis side (n_A = d or n_B = d) sit outside the floor's
    hypothesis and are skipped; block counts below 2 make the bound vacuous
    (returns True).
    """
    U = as_unitary(U, tol)
    if decompose(U, tol=tol).s > 1:
        raise DecomposableMatrixError(
            "zero-count bound applies to indecomposable transition matrices"
        )
    d = U.shape[0]
    best_s = 0
    for psi in states:
        report = classify(U, psi, tol)
        if not report.classical:
            raise ValueError("zero-count bound check needs KD classical states")
        if report.support.n_a == d or report.support.n_b == d:
            continue
        cf = canonical_form(U, report.support, tol)
        best_s = max(best_s, cf.decomposition.s)
    if best_s < 2:
        return True
    return count_zeros(U, tol) >= zero_count_floor(best_s)


def nonclassicality_witness(U, psi, tol: Tolerances = DEFAULT_TOL) -> WitnessReport:
    """Evaluate the zero-count witnesses for one state.

    Requires an indecomposable U (split a direct sum first).  Each verdict
    row records one sufficient condition for nonclassicality:

      few_zeros              N < 6 and n_A + n_B > d + 1
      zero_floor[s]          N < s(2s-1) and n_A + n_B > d + s - 1, for s in 2..d/2
      dense_matrix           no zeros at all and n_A + n_B > d + 1
      support_three_halves   psi not a basis state and n_A + n_B > 3d/2
      two_line_zeros         max(n_A, n_B) > max(z_r, z_c) forces a single
                             block, and then n_A + n_B > d + 1

    In few_zeros and zero_floor, "floor" is s(2s-1) when n_A < d and
    n_B < d, and the unconditional cross-block count 2s(s-1) otherwise
    (see the module docstring); few_zeros is the s = 2 instance applied to
    every s >= 2 at once.  The single-block deduction is also reported on
    its own as a bound-only row.
    """
    U = as_unitary(U, tol)
    psi = as_state(psi)
    full = decompose(U, tol=tol)
    if full.s > 1:
        raise DecomposableMatrixError(
            "witnesses require an indecomposable transition matrix; "
            "split the direct sum first"
        )
    d = U.shape[0]
    n0 = count_zeros(U, tol)
    z_r, z_c = two_line_zeros(U, tol)
    sp = supports(U, psi, tol)
    n_a, n_b = sp.n_a, sp.n_b
    total = n_a + n_b

    flanked = n_a < d and n_b < d

    def floor(s: int) -> int:
        return zero_count_floor(s) if flanked else cross_zero_floor(s)

    verdicts = [
        WitnessVerdict("few_zeros", n0 < floor(2) and total > d + 1, NONCLASSICAL),
    ]
    for s in range(2, d // 2 + 1):
        verdicts.append(
            WitnessVerdict(
                f"zero_floor[s={s}]",
                n0 < floor(s) and total > d + s - 1,
                NONCLASSICAL,
            )
        )
    verdicts.append(WitnessVerdict("dense_matrix", n0 == 0 and total > d + 1, NONCLASSICAL))
    verdicts.append(
        WitnessVerdict(
            "support_three_halves",
            n_a >= 2 and n_b >= 2 and 2 * total > 3 * d,
            NONCLASSICAL,
        )
    )
    single_block_forced = max(n_a, n_b) > max(z_r, z_c)
    verdicts.append(
        WitnessVerdict("single_block_recorded", single_block_forced, BOUND_ONLY)
    )
    verdicts.append(
        WitnessVerdict(
            "two_line_zeros",
            single_block_forced and total > d + 1,
            NONCLASSICAL,
        )
    )
    return WitnessReport(
        n_zeros=n0,
        s_full=full.s,
        z_r=z_r,
        z_c=z_c,
        n_a=n_a,
        n_b=n_b,
        verdicts=tuple(verdicts),
    )
