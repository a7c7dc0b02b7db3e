"""Independent oracles and instance generators shared by the test modules.

Everything here is deliberately written without reusing the package's own
linear-algebra paths: the KD table oracle sums terms in pure Python, block
components come from a breadth-first search, and the cycle checker loops
over all 4-cycles explicitly.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------- oracles


def kd_table_oracle(U, psi) -> list[list[complex]]:
    """Direct termwise evaluation of Q[j,k] = <a_j|psi><psi|b_k><b_k|a_j>."""
    U = [[complex(z) for z in row] for row in np.asarray(U)]
    psi = [complex(z) for z in np.asarray(psi)]
    d = len(psi)
    q = [[0j] * d for _ in range(d)]
    for j in range(d):
        for k in range(d):
            b_overlap = sum(U[m][k].conjugate() * psi[m] for m in range(d))
            q[j][k] = psi[j] * b_overlap.conjugate() * U[j][k].conjugate()
    return q


def bfs_components(window: np.ndarray) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Connected components of a boolean bipartite pattern, by BFS.

    Rows and columns index the window positions; returns (rows, cols) pairs
    sorted by smallest row (columns for row-less components).
    """
    n_r, n_c = window.shape
    seen_r, seen_c = [False] * n_r, [False] * n_c
    comps = []
    for start in range(n_r + n_c):
        is_row = start < n_r
        idx = start if is_row else start - n_r
        if (seen_r[idx] if is_row else seen_c[idx]):
            continue
        rows, cols, queue = [], [], [(is_row, idx)]
        while queue:
            row_side, i = queue.pop(0)
            if row_side:
                if seen_r[i]:
                    continue
                seen_r[i] = True
                rows.append(i)
                for k in range(n_c):
                    if window[i, k] and not seen_c[k]:
                        queue.append((False, k))
            else:
                if seen_c[i]:
                    continue
                seen_c[i] = True
                cols.append(i)
                for j in range(n_r):
                    if window[j, i] and not seen_r[j]:
                        queue.append((True, j))
        comps.append((tuple(sorted(rows)), tuple(sorted(cols))))
    big = n_r + n_c
    comps.sort(key=lambda rc: (rc[0][0] if rc[0] else big, rc[1][0] if rc[1] else big))
    return comps


def circ_to_zero(angle: float) -> float:
    delta = abs(angle) % TWO_PI
    return min(delta, TWO_PI - delta)


def four_cycles_consistent(U, s_a, s_b, eps_zero=1e-10, eps_angle=1e-8) -> bool:
    """Exhaustive check of the 4-cycle phase condition on a support window."""
    U = np.asarray(U)
    s_a, s_b = sorted(s_a), sorted(s_b)
    for i1 in range(len(s_a)):
        for i2 in range(i1 + 1, len(s_a)):
            j1, j2 = s_a[i1], s_a[i2]
            for l1 in range(len(s_b)):
                for l2 in range(l1 + 1, len(s_b)):
                    k1, k2 = s_b[l1], s_b[l2]
                    cells = (U[j1, k1], U[j1, k2], U[j2, k1], U[j2, k2])
                    if any(abs(z) <= eps_zero for z in cells):
                        continue
                    total = (
                        cmath.phase(cells[0])
                        - cmath.phase(cells[1])
                        - cmath.phase(cells[2])
                        + cmath.phase(cells[3])
                    )
                    if circ_to_zero(total) > eps_angle:
                        return False
    return True


# ------------------------------------------------------------- generators


def simplex_family(r: int) -> np.ndarray:
    """r orthonormal vectors plus the negated normalized sum: an obtuse set
    of r + 1 vectors spanning r dimensions."""
    vs = np.eye(r, dtype=complex)
    return np.vstack([vs, -vs.sum(axis=0) / math.sqrt(r)])


def haar_state(d: int, rng: np.random.Generator) -> np.ndarray:
    vec = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return vec / np.linalg.norm(vec)


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR with the standard phase fix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def block_sum_unitary(
    dims: tuple[int, ...], rng: np.random.Generator, permute: bool = True
):
    """Direct sum of Haar blocks, optionally hidden by row/column permutations.

    Returns (U, row_sets, col_sets) where the index sets name each block's
    rows/columns inside the permuted matrix.
    """
    d = sum(dims)
    U = np.zeros((d, d), dtype=np.complex128)
    offsets = np.cumsum((0,) + dims)
    for lo, hi in zip(offsets[:-1], offsets[1:]):
        U[lo:hi, lo:hi] = haar_unitary(hi - lo, rng)
    row_perm = rng.permutation(d) if permute else np.arange(d)
    col_perm = rng.permutation(d) if permute else np.arange(d)
    U = U[np.ix_(row_perm, col_perm)]
    inv_r = np.argsort(row_perm)
    inv_c = np.argsort(col_perm)
    row_sets = [
        tuple(sorted(int(inv_r[i]) for i in range(lo, hi)))
        for lo, hi in zip(offsets[:-1], offsets[1:])
    ]
    col_sets = [
        tuple(sorted(int(inv_c[i]) for i in range(lo, hi)))
        for lo, hi in zip(offsets[:-1], offsets[1:])
    ]
    return U, row_sets, col_sets


def minimal_zero_block_unitary(s: int, rng: np.random.Generator, permute: bool = True):
    """Unitary of dimension 2s+1 whose classical-state window splits into s
    two-row/one-column blocks, with exactly s(2s-1) zero entries.

    Returns (U, psi) where psi is a KD classical state realizing the window.
    """
    if s < 2:
        raise ValueError("needs s >= 2")
    d = 2 * s + 1
    while True:
        angles = rng.uniform(0.2, math.pi / 2 - 0.2, size=s)
        U = np.zeros((d, d), dtype=np.complex128)
        for j, t in enumerate(angles):
            U[2 * j, j] = math.cos(t)
            U[2 * j + 1, j] = math.sin(t)
        # complete with a dense mixing of the orthocomplement
        W = np.zeros((d, s + 1), dtype=np.complex128)
        for j, t in enumerate(angles):
            W[2 * j, j] = -math.sin(t)
            W[2 * j + 1, j] = math.cos(t)
        W[2 * s, s] = 1.0
        U[:, s:] = W @ haar_unitary(s + 1, rng)
        if np.sum(np.abs(U) <= 1e-10) == s * (2 * s - 1):
            break
    weights = rng.uniform(0.5, 1.5, size=s)
    weights /= np.linalg.norm(weights)
    psi = np.zeros(d, dtype=np.complex128)
    for j, t in enumerate(angles):
        psi[2 * j] = weights[j] * math.cos(t)
        psi[2 * j + 1] = weights[j] * math.sin(t)
    if permute:
        row_perm = rng.permutation(d)
        col_perm = rng.permutation(d)
        U = U[np.ix_(row_perm, col_perm)]
        psi = psi[row_perm]
    return U, psi


def givens_sparse_unitary(d: int, rotations: int, rng: np.random.Generator) -> np.ndarray:
    """Product of a few random complex Givens rotations: unitary with zeros."""
    U = np.eye(d, dtype=np.complex128)
    for _ in range(rotations):
        i, j = rng.choice(d, size=2, replace=False)
        t = rng.uniform(0.0, TWO_PI)
        phase = np.exp(1j * rng.uniform(0.0, TWO_PI))
        G = np.eye(d, dtype=np.complex128)
        G[i, i] = math.cos(t)
        G[i, j] = -math.sin(t) * phase.conjugate()
        G[j, i] = math.sin(t) * phase
        G[j, j] = math.cos(t)
        U = G @ U
    return U


def random_support_pair(d: int, rng: np.random.Generator):
    """Uniformly random nonempty subsets of [0, d) for rows and columns."""
    while True:
        mask_a = int(rng.integers(1, 1 << d))
        mask_b = int(rng.integers(1, 1 << d))
        rows = tuple(i for i in range(d) if mask_a >> i & 1)
        cols = tuple(i for i in range(d) if mask_b >> i & 1)
        if rows and cols:
            return rows, cols
