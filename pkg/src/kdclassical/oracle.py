"""Brute-force ground truth at small dimension.

The catalog walks every nonempty support pair (as bit masks, ascending)
and runs the full feasibility construction, so at d <= 8 it instantiates
the classicality characterization exhaustively and independently of any
closed-form enumeration.  The soundness sweep throws seeded Haar-random
states at the witnesses and insists that a fired certificate always
coincides with a nonclassical table.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field

import numpy as np

from .blocks import decompose
from .core import DEFAULT_TOL, Tolerances, as_unitary
from .feasibility import AmplitudeSolution, construct_classical_state
from .kd import SupportPair, classify
from .witnesses import nonclassicality_witness

DEFAULT_MAX_D = 8


@dataclass(frozen=True)
class OracleEntry:
    support: SupportPair
    state: np.ndarray = field(repr=False)
    null_space_dim: int


@dataclass(frozen=True)
class OracleCatalog:
    d: int
    unitary_id: str
    feasible: tuple[OracleEntry, ...]
    elapsed: float


@dataclass(frozen=True)
class SweepReport:
    trials: int
    checked: int
    fired: int
    skipped: bool = False
    reason: str | None = None
    violation: tuple[int, np.ndarray] | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None


def unitary_digest(U) -> str:
    """Content digest of a matrix (exact float bytes, shape included)."""
    arr = np.ascontiguousarray(U, dtype=np.complex128)
    h = hashlib.sha256()
    h.update(str(arr.shape).encode())
    h.update(arr.tobytes())
    return h.hexdigest()[:16]


def haar_random_state(d: int, rng: np.random.Generator) -> np.ndarray:
    """Normalized complex-Gaussian vector (Haar distributed on the sphere)."""
    vec = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return vec / np.linalg.norm(vec)


def _bits(mask: int, d: int) -> tuple[int, ...]:
    return tuple(i for i in range(d) if mask >> i & 1)


def brute_force_catalog(
    U, tol: Tolerances = DEFAULT_TOL, max_d: int = DEFAULT_MAX_D
) -> OracleCatalog:
    """Exhaustively find every support pair admitting a KD classical state.

    Iterates all (2^d - 1)^2 nonempty support-pair bit masks in ascending
    numeric order; pairs whose window has an all-zero row or column are
    skipped up front (no state can realize them).  Raise ``max_d`` above its
    default 8 to run larger dimensions knowingly.
    """
    U = as_unitary(U, tol)
    d = U.shape[0]
    if d > max_d:
        raise ValueError(
            f"d = {d} exceeds max_d = {max_d}; pass max_d={d} to search anyway"
        )
    start = time.perf_counter()
    nonzero = np.abs(U) > tol.eps_zero
    row_masks = [int(sum(1 << k for k in range(d) if nonzero[j, k])) for j in range(d)]
    col_masks = [int(sum(1 << j for j in range(d) if nonzero[j, k])) for k in range(d)]

    entries = []
    for mask_a in range(1, 1 << d):
        rows = _bits(mask_a, d)
        for mask_b in range(1, 1 << d):
            if any(row_masks[j] & mask_b == 0 for j in rows):
                continue
            cols = _bits(mask_b, d)
            if any(col_masks[k] & mask_a == 0 for k in cols):
                continue
            sp = SupportPair(s_a=rows, s_b=cols)
            result = construct_classical_state(U, sp, tol)
            if result.feasible:
                assert isinstance(result.amplitudes, AmplitudeSolution)
                entries.append(
                    OracleEntry(
                        support=sp,
                        state=result.state,
                        null_space_dim=result.amplitudes.null_space_dim,
                    )
                )
    return OracleCatalog(
        d=d,
        unitary_id=unitary_digest(U),
        feasible=tuple(entries),
        elapsed=time.perf_counter() - start,
    )


def witness_soundness_sweep(
    U, trials: int, seed: int, tol: Tolerances = DEFAULT_TOL
) -> SweepReport:
    """Assert on random states that a fired witness implies a nonclassical table.

    States are sampled from a counter-based generator seeded by ``seed`` so
    runs are reproducible.  Decomposable matrices are skipped (the witnesses
    require an indecomposable input); the first counterexample, if any,
    stops the sweep and is returned with its trial index.
    """
    U = as_unitary(U, tol)
    if decompose(U, tol=tol).s > 1:
        return SweepReport(trials=trials, checked=0, fired=0, skipped=True, reason="decomposable")
    d = U.shape[0]
    rng = np.random.Generator(np.random.Philox(seed))
    fired = 0
    for t in range(trials):
        psi = haar_random_state(d, rng)
        report = nonclassicality_witness(U, psi, tol)
        if report.certifies_nonclassical:
            fired += 1
            if classify(U, psi, tol).classical:
                return SweepReport(
                    trials=trials,
                    checked=t + 1,
                    fired=fired,
                    violation=(t, psi),
                )
    return SweepReport(trials=trials, checked=trials, fired=fired)
