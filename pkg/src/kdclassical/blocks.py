"""Direct-sum block structure of transition matrices.

A transition matrix restricted to a row/column window splits into
indecomposable blocks: the connected components of the bipartite graph
whose edges are the window's nonzero entries.  This is the maximal
refinement of any block-diagonal reordering, so the component partition
realizes the maximum block count without search.

For the support window of a KD classical state, the reordered picture has
s nonnegative diagonal blocks; each block j also owes two flanking
submatrices of the full unitary: the rows outside the A support under its
columns (``c_blocks[j]``) and the columns outside the B support beside its
rows (``r_blocks[j]``).  Unitarity then forces rank(c_blocks[j]) to be one
less than the block's column count, rank(r_blocks[j]) one less than its
row count, n_A + n_B <= d + s, and s <= d/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, Tolerances, UnionFind, as_complex_matrix, numerical_rank
from .errors import InconsistentSupportError
from .kd import SupportPair


@dataclass(frozen=True)
class Block:
    rows: tuple[int, ...]
    cols: tuple[int, ...]


@dataclass(frozen=True)
class BlockDecomposition:
    """Partition of a window into indecomposable blocks plus a reordering
    of the full index ranges that makes the window block diagonal."""

    blocks: tuple[Block, ...]
    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class CanonicalForm:
    decomposition: BlockDecomposition
    c_blocks: tuple[np.ndarray, ...]
    r_blocks: tuple[np.ndarray, ...]
    support: SupportPair


@dataclass(frozen=True)
class RankRelationReport:
    """Outcome of the structural checks on a classical state's canonical form."""

    rank_ok: tuple[bool, ...]
    bound_support: bool
    bound_s: bool

    @property
    def all_ok(self) -> bool:
        return all(self.rank_ok) and self.bound_support and self.bound_s


def _validated_window(U: np.ndarray, rows, cols) -> tuple[list[int], list[int]]:
    d_rows, d_cols = U.shape
    row_list = sorted(set(int(j) for j in rows))
    col_list = sorted(set(int(k) for k in cols))
    if not row_list or not col_list:
        raise ValueError("row and column index sets must be nonempty")
    if row_list[0] < 0 or row_list[-1] >= d_rows:
        raise ValueError(f"row indices out of range [0, {d_rows})")
    if col_list[0] < 0 or col_list[-1] >= d_cols:
        raise ValueError(f"column indices out of range [0, {d_cols})")
    return row_list, col_list


def decompose(U, rows=None, cols=None, tol: Tolerances = DEFAULT_TOL) -> BlockDecomposition:
    """Split a window of U into connected components of its nonzero pattern.

    Rows or columns that are entirely zero inside the window become
    singleton blocks of their own.  Blocks are ordered by their smallest
    row index (columns break ties for row-less blocks), and the returned
    permutations list block members first, then the indices outside the
    window in ascending order.
    """
    U = as_complex_matrix(U)
    d_rows, d_cols = U.shape
    if rows is None:
        rows = range(d_rows)
    if cols is None:
        cols = range(d_cols)
    row_list, col_list = _validated_window(U, rows, cols)

    n_r, n_c = len(row_list), len(col_list)
    uf = UnionFind(n_r + n_c)
    window = np.abs(U[np.ix_(row_list, col_list)]) > tol.eps_zero
    for a, b in np.argwhere(window):
        uf.union(int(a), n_r + int(b))

    groups: dict[int, tuple[list[int], list[int]]] = {}
    for i in range(n_r + n_c):
        root = uf.find(i)
        grp = groups.setdefault(root, ([], []))
        if i < n_r:
            grp[0].append(row_list[i])
        else:
            grp[1].append(col_list[i - n_r])

    big = d_rows + d_cols
    ordered = sorted(
        groups.values(),
        key=lambda g: (g[0][0] if g[0] else big, g[1][0] if g[1] else big),
    )
    blocks = tuple(Block(rows=tuple(g[0]), cols=tuple(g[1])) for g in ordered)

    row_perm = [j for blk in blocks for j in blk.rows]
    row_perm += sorted(set(range(d_rows)) - set(row_list))
    col_perm = [k for blk in blocks for k in blk.cols]
    col_perm += sorted(set(range(d_cols)) - set(col_list))
    return BlockDecomposition(
        blocks=blocks, row_perm=tuple(row_perm), col_perm=tuple(col_perm)
    )


def canonical_form(U, sp: SupportPair, tol: Tolerances = DEFAULT_TOL) -> CanonicalForm:
    """Block-decompose a support window and collect the flanking submatrices.

    The caller is responsible for handing in an indecomposable U (a direct
    sum should be split first and each summand treated separately).  A
    window row or column with no nonzero entry cannot belong to a genuine
    support pair and is rejected.
    """
    U = as_complex_matrix(U)
    if U.shape[0] != U.shape[1]:
        raise ValueError("canonical form needs a square transition matrix")
    d = U.shape[0]
    row_list, col_list = _validated_window(U, sp.s_a, sp.s_b)
    window = np.abs(U[np.ix_(row_list, col_list)]) > tol.eps_zero
    for i, j in enumerate(row_list):
        if not window[i].any():
            raise InconsistentSupportError(
                f"support row {j} has no nonzero entry in the window"
            )
    for i, k in enumerate(col_list):
        if not window[:, i].any():
            raise InconsistentSupportError(
                f"support column {k} has no nonzero entry in the window"
            )
    dec = decompose(U, row_list, col_list, tol)
    comp_rows = sorted(set(range(d)) - set(row_list))
    comp_cols = sorted(set(range(d)) - set(col_list))
    c_blocks = tuple(U[np.ix_(comp_rows, blk.cols)] for blk in dec.blocks)
    r_blocks = tuple(U[np.ix_(blk.rows, comp_cols)] for blk in dec.blocks)
    return CanonicalForm(
        decomposition=dec,
        c_blocks=c_blocks,
        r_blocks=r_blocks,
        support=SupportPair(s_a=tuple(row_list), s_b=tuple(col_list)),
    )


def verify_rank_relations(
    cf: CanonicalForm, d: int, tol: Tolerances = DEFAULT_TOL
) -> RankRelationReport:
    """Check the structural facts a classical state's canonical form must obey.

    Per block: rank of the flanking column matrix equals the block's column
    count minus one, and rank of the flanking row matrix equals the block's
    row count minus one (single-row/column blocks therefore require zero
    flanks).  Globally: n_A + n_B <= d + s and s <= d/2.
    """
    rank_ok = []
    for blk, c_mat, r_mat in zip(cf.decomposition.blocks, cf.c_blocks, cf.r_blocks):
        c_rank = numerical_rank(c_mat, tol.eps_zero)
        r_rank = numerical_rank(r_mat, tol.eps_zero)
        rank_ok.append(c_rank == len(blk.cols) - 1 and r_rank == len(blk.rows) - 1)
    s = cf.decomposition.s
    n_a = sum(len(blk.rows) for blk in cf.decomposition.blocks)
    n_b = sum(len(blk.cols) for blk in cf.decomposition.blocks)
    return RankRelationReport(
        rank_ok=tuple(rank_ok),
        bound_support=n_a + n_b <= d + s,
        # s <= d/2 presumes d >= 2; the trivial pair d = 1 has a single
        # 1x1 window and passes vacuously
        bound_s=2 * s <= d or d == 1,
    )
