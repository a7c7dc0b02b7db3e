"""Clustering of unit vectors with nonpositive pairwise inner products.

A family of unit vectors whose pairwise inner products all lie in [-1, 0]
splits uniquely into mutually orthogonal clusters, each of one of three
shapes: a singleton, an antipodal pair (inner product exactly -1), or a
strictly-obtuse set where every pair sits in (-1, 0].  An obtuse cluster
of m vectors spans either m or m - 1 dimensions; the dimension-law check
verifies exactly that on the Gram spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, Tolerances, UnionFind

SINGLETON = "singleton"
ANTIPODAL = "antipodal"
OBTUSE = "obtuse"


@dataclass(frozen=True)
class ClusterDecomposition:
    """Partition of the input family into orthogonal clusters.

    ``clusters`` holds (member indices, kind) in order of smallest member;
    ``gram`` is the Hermitian matrix of pairwise inner products of the
    normalized vectors; ``norms`` records the original vector norms.
    """

    clusters: tuple[tuple[tuple[int, ...], str], ...]
    gram: np.ndarray
    norms: np.ndarray


def _family_matrix(vs) -> np.ndarray:
    arr = np.asarray(vs, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError("expected a nonempty sequence of equal-length vectors")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError("vector family contains NaN or Inf entries")
    return arr


def validate_family(vs, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Gram matrix of a unit-vector family, enforcing the [-1, 0] condition.

    Inner products are conjugate-linear in the first argument.  Rejects any
    off-diagonal entry with |imag| > eps_zero or real part outside
    [-1 - eps_zero, eps_zero], naming the offending pair.
    """
    arr = _family_matrix(vs)
    norms = np.linalg.norm(arr, axis=1)
    bad = np.flatnonzero(np.abs(norms - 1.0) > 1e-10)
    if bad.size:
        raise ValueError(f"vector {int(bad[0])} is not normalized: norm {norms[bad[0]]!r}")
    gram = arr.conj() @ arr.T
    n = arr.shape[0]
    for j in range(n):
        for k in range(j + 1, n):
            g = gram[j, k]
            if abs(g.imag) > tol.eps_zero:
                raise ValueError(
                    f"inner product of pair ({j}, {k}) is not real: {g!r}"
                )
            if g.real > tol.eps_zero or g.real < -1.0 - tol.eps_zero:
                raise ValueError(
                    f"inner product of pair ({j}, {k}) is outside [-1, 0]: {g.real!r}"
                )
    return gram


def _label(gram: np.ndarray, members: tuple[int, ...], tol: Tolerances) -> str:
    if len(members) == 1:
        return SINGLETON
    sub = gram[np.ix_(members, members)]
    at_minus_one = np.abs(sub + 1.0) <= tol.eps_zero
    np.fill_diagonal(at_minus_one, False)
    if at_minus_one.any():
        if len(members) > 2:
            raise ValueError(
                f"cluster {members} mixes an antipodal pair with further "
                "members; the [-1, 0] condition cannot produce this"
            )
        return ANTIPODAL
    return OBTUSE


def cluster(vs, tol: Tolerances = DEFAULT_TOL) -> ClusterDecomposition:
    """Decompose a vector family into its orthogonal clusters.

    Inputs need not be normalized; each vector is scaled to unit norm first
    and original norms are recorded.  Clusters are the connected components
    of the graph with an edge wherever the Gram entry is nonzero, which is
    exactly the unique orthogonal decomposition.
    """
    arr = _family_matrix(vs)
    norms = np.linalg.norm(arr, axis=1)
    if np.any(norms <= tol.eps_zero):
        raise ValueError("vector family contains a (numerically) zero vector")
    arr = arr / norms[:, None]
    gram = validate_family(arr, tol)

    n = arr.shape[0]
    uf = UnionFind(n)
    edges = np.abs(gram) > tol.eps_zero
    np.fill_diagonal(edges, False)
    for j, k in np.argwhere(edges):
        uf.union(int(j), int(k))
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(uf.find(i), []).append(i)
    ordered = sorted(groups.values(), key=lambda g: g[0])
    clusters = tuple(
        (tuple(g), _label(gram, tuple(g), tol)) for g in ordered
    )
    return ClusterDecomposition(clusters=clusters, gram=gram, norms=norms)


def gram_rank(gram_sub: np.ndarray, eps: float = DEFAULT_TOL.eps_zero) -> int:
    """Rank of a Hermitian Gram submatrix via its eigenvalue spectrum."""
    if gram_sub.size == 0:
        return 0
    eigs = np.linalg.eigvalsh(gram_sub)
    top = float(eigs.max())
    if top <= eps:
        return 0
    return int(np.sum(eigs > eps * top))


def check_dimension_law(cd: ClusterDecomposition, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff every obtuse cluster has size rank or rank + 1 of its Gram block.

    Singletons and antipodal pairs span one dimension and pass trivially.
    """
    for members, kind in cd.clusters:
        if kind != OBTUSE:
            continue
        rank = gram_rank(cd.gram[np.ix_(members, members)], tol.eps_zero)
        if len(members) not in (rank, rank + 1):
            return False
    return True
