import numpy as np
import pytest

from kdclassical import (
    SupportPair,
    brute_force_catalog,
    canonical_form,
    classify,
    dft_matrix,
    enumerate_classical,
    supports,
    witness_soundness_sweep,
)
from kdclassical.oracle import unitary_digest

from helpers import haar_unitary


def direct_sum(*mats):
    d = sum(m.shape[0] for m in mats)
    out = np.zeros((d, d), dtype=complex)
    at = 0
    for m in mats:
        out[at : at + m.shape[0], at : at + m.shape[0]] = m
        at += m.shape[0]
    return out


class TestBruteForceCatalog:
    def test_identity_d2(self):
        catalog = brute_force_catalog(np.eye(2))
        pairs = [(e.support.s_a, e.support.s_b) for e in catalog.feasible]
        assert pairs == [((0,), (0,)), ((1,), (1,)), ((0, 1), (0, 1))]
        assert catalog.feasible[-1].null_space_dim == 2

    def test_dft4_matches_enumeration(self):
        catalog = brute_force_catalog(dft_matrix(4))
        assert len(catalog.feasible) == 12
        enumerated = {
            (tuple(supports(dft_matrix(4), psi).s_a), tuple(supports(dft_matrix(4), psi).s_b))
            for _, psi in enumerate_classical(4)
        }
        found = {(e.support.s_a, e.support.s_b) for e in catalog.feasible}
        assert found == enumerated

    def test_dense_unitary_support_bound(self, rng):
        # with no zero entries, classical states obey n_A + n_B <= d + 1
        U = haar_unitary(3, rng)
        catalog = brute_force_catalog(U)
        for entry in catalog.feasible:
            assert entry.support.n_a + entry.support.n_b <= 4

    def test_every_entry_is_classical_with_exact_support(self, rng):
        U = haar_unitary(3, rng)
        for entry in brute_force_catalog(U).feasible:
            report = classify(U, entry.state)
            assert report.classical
            assert report.support == entry.support

    def test_support_bound_with_block_count(self, rng):
        U = dft_matrix(4)
        for entry in brute_force_catalog(U).feasible:
            cf = canonical_form(U, entry.support)
            s = cf.decomposition.s
            assert entry.support.n_a + entry.support.n_b <= 4 + s

    def test_deterministic_reruns(self, rng):
        U = haar_unitary(3, rng)
        first = brute_force_catalog(U)
        second = brute_force_catalog(U)
        assert first.unitary_id == second.unitary_id
        assert len(first.feasible) == len(second.feasible)
        for a, b in zip(first.feasible, second.feasible):
            assert a.support == b.support
            assert a.null_space_dim == b.null_space_dim
            np.testing.assert_array_equal(a.state, b.state)

    def test_sorted_by_bitmask(self):
        catalog = brute_force_catalog(dft_matrix(3))
        masks = [
            (sum(1 << j for j in e.support.s_a), sum(1 << k for k in e.support.s_b))
            for e in catalog.feasible
        ]
        assert masks == sorted(masks)

    def test_dimension_guard(self):
        with pytest.raises(ValueError, match="max_d"):
            brute_force_catalog(np.eye(9))

    def test_digest_distinguishes_matrices(self):
        assert unitary_digest(np.eye(2)) != unitary_digest(dft_matrix(2))


class TestWitnessSoundnessSweep:
    def test_dft5_clean(self):
        report = witness_soundness_sweep(dft_matrix(5), trials=500, seed=11)
        assert report.ok
        assert not report.skipped
        assert report.checked == 500
        assert report.fired > 0  # generic states trip the dense-matrix witness

    def test_decomposable_skipped(self):
        report = witness_soundness_sweep(np.eye(4), trials=50, seed=1)
        assert report.skipped
        assert report.reason == "decomposable"
        assert report.checked == 0

    def test_block_sum_swept_per_block(self):
        U = direct_sum(dft_matrix(2), dft_matrix(3))
        assert witness_soundness_sweep(U, trials=10, seed=2).skipped
        for rows in ((0, 1), (2, 3, 4)):
            sub = U[np.ix_(rows, rows)]
            report = witness_soundness_sweep(sub, trials=300, seed=3)
            assert report.ok and not report.skipped

    def test_seeded_reproducibility(self):
        a = witness_soundness_sweep(dft_matrix(4), trials=200, seed=9)
        b = witness_soundness_sweep(dft_matrix(4), trials=200, seed=9)
        assert a.fired == b.fired
