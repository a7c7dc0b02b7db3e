"""The discrete Fourier basis pair and its complete KD classical catalog.

For the DFT transition matrix U[j,k] = exp(2*pi*i*j*k/d)/sqrt(d), the KD
classical pure states are exactly the divisor-lattice states: pick d1*d2=d,
offsets j0 < d2 and k0 < d1, and place equal amplitudes 1/sqrt(d1) with
phases exp(2*pi*i*j'*k0/d1) at the A-indices j0 + j'*d2.  Such a state has
A-support of size d1 and B-support the dual lattice {k0 + k'*d1} of size
d2, so n_A * n_B = d always.  Enumerating all parameter choices yields
d * (number of divisors of d) states, each verified here at construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .core import DEFAULT_TOL, TWO_PI, Tolerances, as_state, as_unitary
from .errors import InternalConsistencyError
from .feasibility import mub_uniform_amplitude_check
from .kd import b_coefficients, classify


@dataclass(frozen=True)
class DftClassicalParams:
    """Parameters (d1, d2, j0, k0, alpha) of one divisor-lattice state."""

    d: int
    d1: int
    d2: int
    j0: int
    k0: int
    alpha: float = 0.0

    def __post_init__(self):
        if self.d < 1 or self.d1 < 1 or self.d2 < 1:
            raise ValueError("dimensions must be positive")
        if self.d1 * self.d2 != self.d:
            raise ValueError(f"d1 * d2 = {self.d1 * self.d2} != d = {self.d}")
        if not 0 <= self.j0 < self.d2:
            raise ValueError(f"j0 must lie in [0, {self.d2})")
        if not 0 <= self.k0 < self.d1:
            raise ValueError(f"k0 must lie in [0, {self.d1})")


@dataclass(frozen=True)
class SupportLattice:
    """Arithmetic-progression supports of a classical DFT state.

    gcd_a / gcd_b are the gcds of consecutive support gaps (set to d for a
    singleton support, where there are no gaps); d divides gcd_a * gcd_b.
    """

    s_a: tuple[int, ...]
    s_b: tuple[int, ...]
    gcd_a: int
    gcd_b: int


def dft_matrix(d: int) -> np.ndarray:
    """The d-dimensional DFT transition matrix exp(2*pi*i*j*k/d)/sqrt(d)."""
    if d < 1:
        raise ValueError("dimension must be a positive integer")
    jk = np.outer(np.arange(d), np.arange(d)) % d  # keep phase arguments small
    return np.exp(1j * TWO_PI * jk / d) / np.sqrt(d)


def divisor_pairs(d: int) -> list[tuple[int, int]]:
    """All ordered pairs (d1, d2) with d1 * d2 = d, ascending in d1."""
    if d < 1:
        raise ValueError("dimension must be a positive integer")
    return [(d1, d // d1) for d1 in range(1, d + 1) if d % d1 == 0]


def make_state(p: DftClassicalParams) -> np.ndarray:
    """Build the divisor-lattice state for the given parameters."""
    psi = np.zeros(p.d, dtype=np.complex128)
    for jp in range(p.d1):
        phase = TWO_PI * ((jp * p.k0) % p.d1) / p.d1
        psi[p.j0 + jp * p.d2] = np.exp(1j * phase)
    return np.exp(1j * p.alpha) * psi / np.sqrt(p.d1)


def b_expansion_coefficients(p: DftClassicalParams) -> np.ndarray:
    """Closed-form B-basis coefficients <b_k|psi> of the lattice state."""
    out = np.zeros(p.d, dtype=np.complex128)
    lead = p.alpha - TWO_PI * ((p.j0 * p.k0) % p.d) / p.d
    for kp in range(p.d2):
        phase = lead - TWO_PI * ((p.j0 * kp) % p.d2) / p.d2
        out[p.k0 + kp * p.d1] = np.exp(1j * phase)
    return out / np.sqrt(p.d2)


def check_b_expansion(p: DftClassicalParams, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Verify the closed-form B expansion against U^dag psi componentwise."""
    U = dft_matrix(p.d)
    psi = make_state(p)
    numeric = b_coefficients(U, psi)
    return bool(np.max(np.abs(numeric - b_expansion_coefficients(p))) <= 1e-10)


def enumerate_classical(
    d: int, tol: Tolerances = DEFAULT_TOL
) -> list[tuple[DftClassicalParams, np.ndarray]]:
    """All KD classical states of DFT(d), one per (d1, j0, k0), alpha = 0.

    Every state is verified on the way out (classical, uniform amplitudes,
    n_A * n_B = d); the catalog has d * tau(d) entries in ascending
    (d1, j0, k0) order.
    """
    U = dft_matrix(d)
    out = []
    for d1, d2 in divisor_pairs(d):
        for j0 in range(d2):
            for k0 in range(d1):
                params = DftClassicalParams(d=d, d1=d1, d2=d2, j0=j0, k0=k0)
                psi = make_state(params)
                report = classify(U, psi, tol)
                if not report.classical:
                    raise InternalConsistencyError(
                        f"lattice state {params} failed the classicality check"
                    )
                if not mub_uniform_amplitude_check(U, psi, tol):
                    raise InternalConsistencyError(
                        f"lattice state {params} failed the unbiased amplitude check"
                    )
                out.append((params, psi))
    return out


def mub_m_ab(U, tol: Tolerances = DEFAULT_TOL) -> float:
    """Largest entry modulus of the transition matrix.

    Equals 1/sqrt(d) exactly for an unbiased pair, where the classicality
    criterion n_A * n_B = 1 / M^2 becomes n_A * n_B = d.
    """
    return float(np.max(np.abs(np.asarray(U, dtype=np.complex128))))


def _gap_gcd(indices: tuple[int, ...], d: int) -> int:
    if len(indices) < 2:
        return d  # singleton support: no gaps, convention gcd = d
    gaps = np.diff(np.array(indices))
    out = 0
    for g in gaps:
        out = gcd(out, int(g))
    return out


def support_lattice_check(U, psi, tol: Tolerances = DEFAULT_TOL) -> SupportLattice:
    """Verify that a classical DFT state's supports form the divisor lattice.

    Checks that both supports are arithmetic progressions whose common gap
    times the support size equals d, and that d divides the product of the
    two gap gcds.  Violations raise InternalConsistencyError, since they
    cannot occur for a genuinely classical state of the DFT pair.
    """
    U = as_unitary(U, tol)
    psi = as_state(psi)
    d = U.shape[0]
    if float(np.max(np.abs(U - dft_matrix(d)))) > 1e-8:
        raise ValueError("support lattice check applies to the DFT transition matrix")
    report = classify(U, psi, tol)
    if not report.classical:
        raise ValueError("state is not KD classical for the DFT pair")
    sp = report.support

    gcd_a = _gap_gcd(sp.s_a, d)
    gcd_b = _gap_gcd(sp.s_b, d)
    for name, idx, step in (("A", sp.s_a, gcd_a), ("B", sp.s_b, gcd_b)):
        if len(idx) > 1 and any(int(g) != step for g in np.diff(np.array(idx))):
            raise InternalConsistencyError(
                f"{name}-support of a classical DFT state is not an arithmetic progression"
            )
        if len(idx) * step != d:
            raise InternalConsistencyError(
                f"{name}-support gap times size is {len(idx) * step}, expected {d}"
            )
    if (gcd_a * gcd_b) % d != 0:
        raise InternalConsistencyError(
            f"d = {d} does not divide gcd_a * gcd_b = {gcd_a * gcd_b}"
        )
    return SupportLattice(s_a=sp.s_a, s_b=sp.s_b, gcd_a=gcd_a, gcd_b=gcd_b)
