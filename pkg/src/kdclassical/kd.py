"""Kirkwood-Dirac tables of pure states over a basis pair.

The basis pair (A, B) is carried entirely by its transition matrix
U[j, k] = <a_j|b_k>, which must be unitary.  States are given by their
A-basis coefficients, so <a_j|psi> = psi[j].  The KD table is

    Q[j, k] = <a_j|psi> <psi|b_k> <b_k|a_j>,

a complex quasiprobability whose row sums, column sums, and total recover
the two Born distributions and 1.  A state is KD classical when every
entry is (numerically) a nonnegative real.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import DEFAULT_TOL, Tolerances, as_state, as_unitary


@dataclass(frozen=True)
class SupportPair:
    """Index sets where the state has nonzero A-basis / B-basis coefficients."""

    s_a: tuple[int, ...]
    s_b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "s_a", tuple(sorted(set(int(j) for j in self.s_a))))
        object.__setattr__(self, "s_b", tuple(sorted(set(int(k) for k in self.s_b))))
        if (self.s_a and self.s_a[0] < 0) or (self.s_b and self.s_b[0] < 0):
            raise ValueError("support indices must be nonnegative")

    @property
    def n_a(self) -> int:
        return len(self.s_a)

    @property
    def n_b(self) -> int:
        return len(self.s_b)


@dataclass(frozen=True)
class KDTable:
    """A d x d complex KD quasiprobability table."""

    q: np.ndarray

    @property
    def d(self) -> int:
        return self.q.shape[0]

    def row_marginals(self) -> np.ndarray:
        """Row sums; equal |<a_j|psi>|^2 up to rounding."""
        return self.q.sum(axis=1)

    def col_marginals(self) -> np.ndarray:
        """Column sums; equal |<psi|b_k>|^2 up to rounding."""
        return self.q.sum(axis=0)

    def total(self) -> complex:
        return complex(self.q.sum())


@dataclass(frozen=True)
class ClassicalityReport:
    classical: bool
    min_real: float
    max_abs_imag: float
    offending_cells: tuple[tuple[int, int], ...]
    support: SupportPair
    table: KDTable = field(repr=False)


def b_coefficients(U: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """B-basis coefficients <b_k|psi> = sum_j conj(U[j,k]) psi[j]."""
    return U.conj().T @ psi


def kd_table(U, psi, tol: Tolerances = DEFAULT_TOL) -> KDTable:
    """Compute the KD table of a normalized state for a unitary basis pair.

    Raises ValueError when U is not unitary within eps_unitary or psi is
    not normalized within 1e-10.
    """
    U = as_unitary(U, tol)
    psi = as_state(psi)
    if psi.shape[0] != U.shape[0]:
        raise ValueError(
            f"state dimension {psi.shape[0]} does not match matrix dimension {U.shape[0]}"
        )
    b = b_coefficients(U, psi)
    q = np.outer(psi, b.conj()) * U.conj()
    return KDTable(q=q)


def supports(U, psi, tol: Tolerances = DEFAULT_TOL) -> SupportPair:
    """Nonzero-coefficient index sets of psi in the A and B bases."""
    U = as_unitary(U, tol)
    psi = as_state(psi)
    s_a = tuple(int(j) for j in np.flatnonzero(np.abs(psi) > tol.eps_zero))
    b = b_coefficients(U, psi)
    s_b = tuple(int(k) for k in np.flatnonzero(np.abs(b) > tol.eps_zero))
    return SupportPair(s_a=s_a, s_b=s_b)


def classify(U, psi, tol: Tolerances = DEFAULT_TOL) -> ClassicalityReport:
    """Decide KD classicality: all table entries real and >= 0 within tolerance.

    A cell offends when its real part drops below -eps_zero or its imaginary
    part exceeds eps_zero in magnitude; offending cells come back sorted by
    (row, column).
    """
    table = kd_table(U, psi, tol)
    q = table.q
    min_real = float(q.real.min())
    max_abs_imag = float(np.abs(q.imag).max())
    bad = (q.real < -tol.eps_zero) | (np.abs(q.imag) > tol.eps_zero)
    cells = tuple((int(j), int(k)) for j, k in np.argwhere(bad))
    classical = min_real >= -tol.eps_zero and max_abs_imag <= tol.eps_zero
    return ClassicalityReport(
        classical=classical,
        min_real=min_real,
        max_abs_imag=max_abs_imag,
        offending_cells=cells,
        support=supports(U, psi, tol),
        table=table,
    )


def gauge_rotate(U, xi, eta) -> np.ndarray:
    """Rephase the two bases: U'[j,k] = exp(-i xi[j]) U[j,k] exp(i eta[k]).

    This is the basis freedom |a_j> -> e^{i xi_j}|a_j>, |b_k> -> e^{i eta_k}|b_k>;
    the KD table is invariant once the state coefficients are rephased to the
    new A basis (psi'[j] = e^{-i xi_j} psi[j]).
    """
    U = np.asarray(U, dtype=np.complex128)
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    if xi.shape != (U.shape[0],) or eta.shape != (U.shape[1],):
        raise ValueError(
            f"phase vectors must have lengths {U.shape}, got {xi.shape} and {eta.shape}"
        )
    return np.exp(-1j * xi)[:, None] * U * np.exp(1j * eta)[None, :]
