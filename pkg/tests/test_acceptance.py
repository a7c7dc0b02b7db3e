"""Acceptance suite.

Each test exercises one release criterion at its stated tolerance and
prints a single PASS/FAIL line (run with -s or check captured output).
"""

import time

import numpy as np
import pytest

from kdclassical import (
    DEFAULT_TOL,
    PhaseAssignment,
    SupportPair,
    brute_force_catalog,
    canonical_form,
    check_b_expansion,
    check_dimension_law,
    classify,
    cluster,
    count_zeros,
    decompose,
    dft_matrix,
    enumerate_classical,
    gauge_rotate,
    kd_table,
    nonclassicality_witness,
    solve_phases,
    supports,
    verify_rank_relations,
    zero_count_bound_holds,
    zero_count_floor,
)

from helpers import (
    block_sum_unitary,
    four_cycles_consistent,
    givens_sparse_unitary,
    haar_state,
    haar_unitary,
    minimal_zero_block_unitary,
    random_support_pair,
    simplex_family,
)

CRITERION3_SEEDS = {3: 1003, 4: 1004, 5: 1005}
CRITERION3_TRIALS = 10_000


def report(tag: str, ok: bool, detail: str) -> None:
    print(f"[{tag}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"{tag} failed: {detail}"


def tau(d: int) -> int:
    return sum(1 for k in range(1, d + 1) if d % k == 0)


def lattice_support(params) -> tuple[tuple[int, ...], tuple[int, ...]]:
    s_a = tuple(sorted(params.j0 + jp * params.d2 for jp in range(params.d1)))
    s_b = tuple(sorted(params.k0 + kp * params.d1 for kp in range(params.d2)))
    return s_a, s_b


def split_into_indecomposable(U, psi):
    """Restrict (U, psi) to each direct-sum component carrying state mass."""
    out = []
    for blk in decompose(U).blocks:
        rows, cols = list(blk.rows), list(blk.cols)
        assert len(rows) == len(cols), "component of a unitary must be square"
        mass = float(np.linalg.norm(psi[rows]))
        if mass <= DEFAULT_TOL.eps_zero:
            continue
        out.append((U[np.ix_(rows, cols)], psi[rows] / mass, len(rows)))
    return out


def rank_relations_hold(U, psi) -> bool:
    for sub_u, sub_psi, sub_d in split_into_indecomposable(U, psi):
        rep = classify(sub_u, sub_psi)
        if not rep.classical:
            return False
        cf = canonical_form(sub_u, rep.support)
        if not verify_rank_relations(cf, sub_d).all_ok:
            return False
    return True


@pytest.fixture(scope="module")
def oracle_corpus():
    """100 seeded unitaries at d in {3, 4, 5} (dense, block-structured, and
    zero-patterned) with their exhaustive classical-support catalogs."""
    rng = np.random.Generator(np.random.Philox(55))
    splits = {3: [(1, 2), (2, 1)], 4: [(2, 2), (1, 3), (1, 1, 2)], 5: [(2, 3), (1, 4), (1, 2, 2)]}
    matrices = []
    for d, n_haar in ((3, 18), (4, 17), (5, 15)):
        for _ in range(n_haar):
            matrices.append((d, haar_unitary(d, rng)))
        for i in range(8):
            dims = splits[d][i % len(splits[d])]
            matrices.append((d, block_sum_unitary(dims, rng)[0]))
        for _ in range(8):
            matrices.append((d, givens_sparse_unitary(d, d - 1, rng)))
    for _ in range(2):
        matrices.append((5, minimal_zero_block_unitary(2, rng)[0]))
    assert len(matrices) == 100
    return [(d, U, brute_force_catalog(U)) for d, U in matrices]


def test_criterion1_dft_catalog_completeness():
    t0 = time.perf_counter()
    total = 0
    for d in (2, 3, 4, 5, 6):
        U = dft_matrix(d)
        catalog = brute_force_catalog(U)
        expected = {}
        for params, psi in enumerate_classical(d):
            expected[lattice_support(params)] = psi
        assert len(catalog.feasible) == d * tau(d), (
            f"d={d}: found {len(catalog.feasible)} pairs, expected {d * tau(d)}"
        )
        found = {(e.support.s_a, e.support.s_b): e.state for e in catalog.feasible}
        assert set(found) == set(expected), f"d={d}: support sets differ"
        for key, state in found.items():
            overlap = abs(np.vdot(state, expected[key]))
            assert overlap >= 1 - 1e-8, f"d={d}, pair {key}: overlap {overlap}"
        total += len(catalog.feasible)
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    report(
        "C1",
        True,
        f"exhaustive catalogs on DFT(2..6) match the closed-form family "
        f"({total} support pairs, {elapsed:.1f}s)",
    )


def test_criterion2_constructed_states_classical_up_to_64():
    t0 = time.perf_counter()
    checked = 0
    for d in range(1, 65):
        U = dft_matrix(d)
        for params, psi in enumerate_classical(d):
            table = kd_table(U, psi)
            assert float(table.q.real.min()) >= -1e-10
            assert float(np.abs(table.q.imag).max()) <= 1e-10
            sp = supports(U, psi)
            assert sp.n_a * sp.n_b == d
            assert check_b_expansion(params)
            checked += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    report(
        "C2",
        True,
        f"{checked} lattice states over d=1..64 classical with exact "
        f"B expansions ({elapsed:.1f}s)",
    )


def test_criterion3_off_product_supports_nonclassical():
    checked = 0
    for d, seed in CRITERION3_SEEDS.items():
        U = dft_matrix(d)
        rng = np.random.Generator(np.random.Philox(seed))
        for _ in range(CRITERION3_TRIALS):
            psi = haar_state(d, rng)
            sp = supports(U, psi)
            if sp.n_a * sp.n_b == d:  # not in scope for this criterion
                continue
            assert not classify(U, psi).classical, f"classical exception at d={d}"
            checked += 1
    report(
        "C3",
        True,
        f"{checked} random states with n_A*n_B != d all nonclassical, zero exceptions",
    )


def test_criterion4_cycle_check_equivalence():
    rng = np.random.Generator(np.random.Philox(44))
    cases = 0
    for d in (2, 3, 4, 5, 6):
        for trial in range(200):
            if trial % 2 == 0:
                U = haar_unitary(d, rng)
            else:
                xi = rng.uniform(0, 2 * np.pi, size=d)
                eta = rng.uniform(0, 2 * np.pi, size=d)
                U = gauge_rotate(dft_matrix(d), xi, eta)
            rows, cols = random_support_pair(d, rng)
            forest = isinstance(solve_phases(U, SupportPair(rows, cols)), PhaseAssignment)
            cycles = four_cycles_consistent(U, rows, cols)
            assert forest == cycles, f"d={d}, window {rows}x{cols}: {forest} vs {cycles}"
            cases += 1
    report("C4", True, f"forest and 4-cycle phase checks agree on {cases} windows")


def test_criterion5_rank_relations_on_oracle_states(oracle_corpus):
    states = 0
    multiblock = 0
    for d, U, catalog in oracle_corpus:
        dense = count_zeros(U) == 0
        for entry in catalog.feasible:
            assert rank_relations_hold(U, entry.state), (
                f"rank relations failed at d={d}, support {entry.support}"
            )
            states += 1
            if dense:  # a zero-free transition matrix caps classical supports
                assert entry.support.n_a + entry.support.n_b <= d + 1
            for sub_u, sub_psi, sub_d in split_into_indecomposable(U, entry.state):
                sub_sp = classify(sub_u, sub_psi).support
                cf = canonical_form(sub_u, sub_sp)
                if cf.decomposition.s >= 2:
                    multiblock += 1
                if sub_d >= 2:  # support uncertainty never exceeds 3d/2
                    assert 2 * (sub_sp.n_a + sub_sp.n_b) <= 3 * sub_d
    assert multiblock > 0, "corpus never exercised a multi-block window"
    report(
        "C5",
        True,
        f"rank and support bounds hold for {states} oracle states over 100 "
        f"unitaries ({multiblock} multi-block windows)",
    )


def test_criterion6_cluster_recovery():
    rng = np.random.Generator(np.random.Philox(66))
    recovered = 0
    for _ in range(1000):
        families = []
        kinds = []
        for _ in range(int(rng.integers(1, 5))):
            pick = int(rng.integers(0, 3))
            if pick == 0:
                r = int(rng.integers(2, 5))
                families.append(simplex_family(r))
                kinds.append("obtuse")
            elif pick == 1:
                families.append(np.array([[1.0], [-1.0]], dtype=complex))
                kinds.append("antipodal")
            else:
                families.append(np.array([[1.0]], dtype=complex))
                kinds.append("singleton")
        ambient = sum(f.shape[1] for f in families)
        rotation = haar_unitary(ambient, rng)
        vectors, groups, offset = [], [], 0
        for fam in families:
            block = np.zeros((fam.shape[0], ambient), dtype=complex)
            block[:, offset : offset + fam.shape[1]] = fam
            start = len(vectors)
            vectors.extend(block @ rotation.T)
            groups.append(range(start, start + fam.shape[0]))
            offset += fam.shape[1]
        order = rng.permutation(len(vectors))
        shuffled = np.array(vectors)[order]
        relabel = np.argsort(order)
        expected = {
            frozenset(int(relabel[i]) for i in grp): kind
            for grp, kind in zip(groups, kinds)
        }
        decomposition = cluster(shuffled)
        got = {frozenset(members): kind for members, kind in decomposition.clusters}
        assert got == expected
        assert check_dimension_law(decomposition)
        recovered += 1
    report("C6", True, f"{recovered} constructed partitions recovered exactly")


def test_criterion7_witness_soundness(oracle_corpus):
    # (a) no false certificates on criterion 3's random-state sets
    fired = 0
    for d, seed in CRITERION3_SEEDS.items():
        U = dft_matrix(d)
        rng = np.random.Generator(np.random.Philox(seed))
        for _ in range(CRITERION3_TRIALS):
            psi = haar_state(d, rng)
            if nonclassicality_witness(U, psi).certifies_nonclassical:
                fired += 1
                assert not classify(U, psi).classical

    # (b) witnesses stay silent on every oracle classical state
    silent = 0
    for d, U, catalog in oracle_corpus:
        for entry in catalog.feasible:
            for sub_u, sub_psi, _ in split_into_indecomposable(U, entry.state):
                assert not nonclassicality_witness(sub_u, sub_psi).certifies_nonclassical
                silent += 1

    # (c) zero-count floor on randomized permuted block unitaries, with the
    # exact boundary values on the minimal constructions
    rng = np.random.Generator(np.random.Philox(77))
    for trial in range(500):
        s = int(rng.integers(2, 5))
        U, psi = minimal_zero_block_unitary(s, rng)
        n0 = count_zeros(U)
        assert n0 >= zero_count_floor(s)
        assert n0 == s * (2 * s - 1)  # construction is zero-minimal
        assert zero_count_bound_holds(U, [psi])
    boundary = {s: count_zeros(minimal_zero_block_unitary(s, rng, permute=False)[0]) for s in (2, 3)}
    assert boundary == {2: 6, 3: 15}
    report(
        "C7",
        True,
        f"{fired} fired certificates all nonclassical, {silent} classical "
        f"restrictions silent, zero floor tight at N=6 (s=2) and N=15 (s=3)",
    )


def test_criterion8_table_invariants_and_symmetries():
    rng = np.random.Generator(np.random.Philox(88))
    checked = 0
    for i in range(10_000):
        d = 2 + (i % 7)
        U = haar_unitary(d, rng)
        psi = haar_state(d, rng)
        table = kd_table(U, psi)
        assert abs(table.total() - 1.0) <= 1e-10
        assert float(np.abs(table.row_marginals() - np.abs(psi) ** 2).max()) <= 1e-10
        b = U.conj().T @ psi
        assert float(np.abs(table.col_marginals() - np.abs(b) ** 2).max()) <= 1e-10

        verdict = classify(U, psi).classical
        theta = rng.uniform(0, 2 * np.pi)
        rotated = np.exp(1j * theta) * psi
        assert classify(U, rotated).classical == verdict
        assert float(np.abs(kd_table(U, rotated).q - table.q).max()) <= 1e-12

        xi = rng.uniform(0, 2 * np.pi, size=d)
        eta = rng.uniform(0, 2 * np.pi, size=d)
        assert (
            classify(gauge_rotate(U, xi, eta), np.exp(-1j * xi) * psi).classical
            == verdict
        )
        checked += 1
    report(
        "C8",
        True,
        f"{checked} random pairs: marginals within 1e-10, phase and gauge "
        f"invariance exact at the verdict level",
    )
