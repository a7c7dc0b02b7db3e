"""Shared numeric primitives: the tolerance policy, polar splitting of
complex entries, unitarity validation, and numerical rank.

All phases handled by this package live in [0, 2*pi); phase comparisons go
through :func:`circular_distance` so nothing breaks at the 0/2*pi seam.
Indices are 0-based everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

TWO_PI = 2.0 * np.pi

#: Norm slack accepted for state vectors (fixed, not part of Tolerances).
STATE_NORM_ATOL = 1e-10


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used throughout the package.

    eps_zero: absolute magnitude below which a complex entry counts as zero.
    eps_angle: slack in radians for phase congruences mod 2*pi.
    eps_unitary: max-norm slack allowed on U^dag U - I.
    eps_eig: singular-value slack when solving the amplitude fixed point.

    All four must be strictly positive and below 1e-3.
    """

    eps_zero: float = 1e-10
    eps_angle: float = 1e-8
    eps_unitary: float = 1e-8
    eps_eig: float = 1e-8

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not 0.0 < value < 1e-3:
                raise ValueError(
                    f"{f.name} must lie strictly inside (0, 1e-3), got {value!r}"
                )


DEFAULT_TOL = Tolerances()


def as_complex_matrix(matrix) -> np.ndarray:
    """Coerce to a 2-D complex array, rejecting non-finite entries."""
    arr = np.asarray(matrix, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError("matrix contains NaN or Inf entries")
    return arr


def as_unitary(matrix, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Validate a transition matrix: square, finite, unitary within tolerance."""
    arr = as_complex_matrix(matrix)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"transition matrix must be square, got shape {arr.shape}")
    if not check_unitary(arr, tol):
        raise ValueError("matrix is not unitary within eps_unitary")
    return arr


def as_state(psi) -> np.ndarray:
    """Coerce to a 1-D complex unit vector (norm 1 within 1e-10)."""
    arr = np.asarray(psi, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D state vector, got ndim={arr.ndim}")
    if arr.size == 0:
        raise ValueError("state vector is empty")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError("state vector contains NaN or Inf entries")
    norm = float(np.linalg.norm(arr))
    if abs(norm - 1.0) > STATE_NORM_ATOL:
        raise ValueError(f"state vector is not normalized: ||psi|| = {norm!r}")
    return arr


def check_unitary(matrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff max-norm of U^dag U - I is at most eps_unitary.

    Raises on non-square input; any other defect just returns False.
    """
    arr = as_complex_matrix(matrix)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"unitarity check needs a square matrix, got {arr.shape}")
    d = arr.shape[0]
    residual = arr.conj().T @ arr - np.eye(d)
    return float(np.max(np.abs(residual))) <= tol.eps_unitary


def normalize_angle(angle: float) -> float:
    """Map an angle to the canonical representative in [0, 2*pi)."""
    out = float(angle) % TWO_PI
    # the modulo can return TWO_PI itself for tiny negative inputs
    return 0.0 if out >= TWO_PI else out


def circular_distance(x: float, y: float) -> float:
    """Distance between two angles on the circle, in [0, pi]."""
    delta = abs(float(x) - float(y)) % TWO_PI
    return min(delta, TWO_PI - delta)


def entry_polar(z: complex, tol: Tolerances = DEFAULT_TOL):
    """Split a complex number into (modulus, phase in [0, 2*pi)).

    Returns None when |z| <= eps_zero, i.e. the entry is treated as an
    exact zero and carries no phase.
    """
    z = complex(z)
    modulus = abs(z)
    if modulus <= tol.eps_zero:
        return None
    return modulus, normalize_angle(np.angle(z))


def numerical_rank(matrix, eps: float = DEFAULT_TOL.eps_zero) -> int:
    """Rank = number of singular values above eps * (largest singular value).

    A matrix whose largest singular value is itself below eps counts as the
    zero matrix (rank 0); empty matrices also have rank 0.
    """
    arr = np.asarray(matrix, dtype=np.complex128)
    if arr.size == 0:
        return 0
    sv = np.linalg.svd(arr, compute_uv=False)
    if sv[0] <= eps:
        return 0
    return int(np.sum(sv > eps * sv[0]))


class UnionFind:
    """Disjoint sets over range(n) with path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)
