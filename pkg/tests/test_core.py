import numpy as np
import pytest

from kdclassical import Tolerances, check_unitary, dft_matrix, entry_polar
from kdclassical.core import circular_distance, normalize_angle, numerical_rank

from helpers import haar_unitary


class TestTolerances:
    def test_defaults(self):
        t = Tolerances()
        assert t.eps_zero == 1e-10
        assert t.eps_angle == 1e-8
        assert t.eps_unitary == 1e-8
        assert t.eps_eig == 1e-8

    @pytest.mark.parametrize("field", ["eps_zero", "eps_angle", "eps_unitary", "eps_eig"])
    @pytest.mark.parametrize("bad", [0.0, -1e-9, 1e-3, 0.5])
    def test_rejects_out_of_range(self, field, bad):
        with pytest.raises(ValueError):
            Tolerances(**{field: bad})


class TestCheckUnitary:
    def test_identity(self):
        assert check_unitary(np.eye(3))

    def test_dft_is_unitary(self):
        assert check_unitary(dft_matrix(4))

    def test_all_ones_is_not(self):
        assert not check_unitary(np.ones((2, 2)))

    def test_non_square_raises(self):
        with pytest.raises(ValueError):
            check_unitary(np.ones((2, 3)))

    def test_nan_rejected(self):
        bad = np.eye(2, dtype=complex)
        bad[0, 0] = np.nan
        with pytest.raises(ValueError):
            check_unitary(bad)

    def test_invariant_under_permutation_and_rephasing(self, rng):
        # permuting rows/columns or multiplying by diagonal phases preserves
        # unitarity, and does not create it where it is absent
        for d in (2, 3, 5):
            U = haar_unitary(d, rng)
            perm_r, perm_c = rng.permutation(d), rng.permutation(d)
            phases = np.exp(1j * rng.uniform(0, 2 * np.pi, size=d))
            assert check_unitary(U[np.ix_(perm_r, perm_c)])
            assert check_unitary(phases[:, None] * U)
            assert check_unitary(U * phases[None, :])
            bad = U.copy()
            bad[0] *= 1.5
            assert not check_unitary(bad[np.ix_(perm_r, perm_c)])


class TestEntryPolar:
    def test_unit(self):
        assert entry_polar(1.0) == (1.0, 0.0)

    def test_minus_i(self):
        modulus, phase = entry_polar(-1j)
        assert modulus == pytest.approx(1.0)
        assert phase == pytest.approx(3 * np.pi / 2)

    def test_below_threshold_is_zero(self):
        assert entry_polar(1e-14 + 0j) is None
        assert entry_polar(0) is None

    def test_just_above_threshold(self):
        assert entry_polar(2e-10) is not None

    def test_roundtrip(self, rng):
        for _ in range(500):
            z = complex(rng.standard_normal(), rng.standard_normal())
            if abs(z) <= 1e-10:
                continue
            modulus, phase = entry_polar(z)
            assert 0.0 <= phase < 2 * np.pi
            assert abs(modulus * np.exp(1j * phase) - z) <= 1e-12 * abs(z)


class TestAngles:
    @pytest.mark.parametrize(
        "angle,expected",
        [(0.0, 0.0), (-np.pi / 2, 3 * np.pi / 2), (2 * np.pi, 0.0), (5 * np.pi, np.pi)],
    )
    def test_normalize(self, angle, expected):
        assert normalize_angle(angle) == pytest.approx(expected)

    def test_normalize_tiny_negative(self):
        out = normalize_angle(-1e-18)
        assert 0.0 <= out < 2 * np.pi

    def test_circular_distance_wraps(self):
        assert circular_distance(0.01, 2 * np.pi - 0.01) == pytest.approx(0.02)
        assert circular_distance(np.pi, 0.0) == pytest.approx(np.pi)


class TestNumericalRank:
    def test_zero_matrix(self):
        assert numerical_rank(np.zeros((3, 2))) == 0

    def test_empty(self):
        assert numerical_rank(np.zeros((0, 2))) == 0

    def test_nearly_zero_matrix_is_rank_zero(self):
        assert numerical_rank(np.full((2, 2), 1e-16)) == 0

    def test_rank_one(self):
        m = np.outer([1.0, 2.0], [3.0, 4.0])
        assert numerical_rank(m) == 1

    def test_full_rank(self, rng):
        assert numerical_rank(haar_unitary(4, rng)) == 4
