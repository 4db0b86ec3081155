import math

import numpy as np
import pytest

from ohlab.freeprob import (
    FreeFamily,
    TruncatedFock,
    catalan_numbers,
    fock_semicircular_moments,
    free_clt_check,
    free_family,
    gue,
    haar_unitary,
    normalized_trace,
    semicircle_diag,
    trace_norm,
    voiculescu_check,
    voiculescu_converse_check,
)


class TestHaar:
    def test_unitarity(self):
        rng = np.random.default_rng(0)
        u = haar_unitary(48, rng)
        assert np.max(np.abs(u.conj().T @ u - np.eye(48))) < 1e-12

    def test_column_norms(self):
        rng = np.random.default_rng(1)
        u = haar_unitary(32, rng)
        assert np.max(np.abs(np.linalg.norm(u, axis=0) - 1.0)) < 1e-12

    def test_seed_determinism(self):
        a = haar_unitary(16, np.random.default_rng(7))
        b = haar_unitary(16, np.random.default_rng(7))
        assert np.array_equal(a, b)


class TestFreeFamily:
    def test_members_centred(self):
        fam = free_family([gue(32, np.random.default_rng(2))], 32, seed=3)
        assert abs(normalized_trace(fam.members[0])) < 1e-12

    def test_seed_reproducibility(self):
        base = [gue(24, np.random.default_rng(4)) for _ in range(3)]
        f1 = free_family(base, 24, seed=11)
        f2 = free_family(base, 24, seed=11)
        for a, b in zip(f1.members, f2.members):
            assert np.array_equal(a, b)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="shape"):
            free_family([np.eye(3)], 4, seed=0)

    def test_uncentred_rejected(self):
        with pytest.raises(ValueError, match="centred"):
            FreeFamily(members=(np.eye(8, dtype=complex),))

    def test_mixed_moment_vanishes(self):
        # alternating centred moment of two independently rotated elements
        rng = np.random.default_rng(5)
        fam = free_family([gue(512, rng), gue(512, rng)], 512, seed=6)
        a1, a2 = fam.members
        mixed = abs(np.trace(a1 @ a2 @ a1 @ a2) / 512)
        assert mixed <= 0.05


class TestVoiculescu:
    def test_single_member_margin(self):
        rng = np.random.default_rng(7)
        fam = free_family([gue(64, rng)], 64, seed=8)
        res = voiculescu_check(fam)
        a = fam.members[0]
        assert res.margin == pytest.approx(2 * math.sqrt(np.vdot(a, a).real / 64), rel=1e-12)
        assert res.margin >= 0

    def test_zero_family(self):
        fam = FreeFamily(members=(np.zeros((8, 8), dtype=complex),) * 3)
        res = voiculescu_check(fam)
        assert (res.lhs, res.rhs, res.margin) == (0.0, 0.0, 0.0)

    def test_semicircular_sum_norm(self):
        dim, n = 256, 8
        base = semicircle_diag(dim)
        fam = free_family([base] * n, dim, seed=9)
        res = voiculescu_check(fam)
        assert res.lhs == pytest.approx(2 * math.sqrt(n), rel=0.05)
        assert res.rhs == pytest.approx(res.max_member_norm + 2 * math.sqrt(n), rel=0.05)
        assert res.margin > 0

    def test_margin_never_materially_negative(self):
        dim = 128
        for seed in range(5):
            bases = [gue(dim, np.random.default_rng(100 + seed))] * 6
            fam = free_family(bases, dim, seed=seed)
            res = voiculescu_check(fam)
            assert res.margin >= -0.01 * res.rhs


class TestConverse:
    def test_single_member_cauchy_schwarz(self):
        rng = np.random.default_rng(10)
        fam = free_family([gue(48, rng)], 48, seed=11)
        a = fam.members[0]
        assert trace_norm(a) <= math.sqrt(np.vdot(a, a).real / 48) + 1e-12

    def test_zero_family(self):
        fam = FreeFamily(members=(np.zeros((6, 6), dtype=complex),) * 2)
        c = voiculescu_converse_check(fam)
        assert c.triangle == c.column == c.row == 0.0

    def test_rotated_gue_margins(self):
        dim, n = 256, 8
        rng = np.random.default_rng(12)
        fam = free_family([gue(dim, rng) for _ in range(n)], dim, seed=13)
        c = voiculescu_converse_check(fam)
        assert c.triangle >= 0.0  # exact triangle inequality
        assert c.column >= -0.02 * c.column_rhs
        assert c.row >= -0.02 * c.row_rhs


class TestFock:
    def test_moments_match_catalan(self):
        moments = fock_semicircular_moments(8, 5)
        for m, c in zip(moments, catalan_numbers(5)):
            assert abs(m - c) < 1e-10

    def test_small_moments(self):
        assert fock_semicircular_moments(4, 3) == pytest.approx([1.0, 2.0, 5.0])

    def test_catalan_recurrence_values(self):
        assert catalan_numbers(6) == [1, 2, 5, 14, 42, 132]

    def test_odd_moments_vanish(self):
        fock = TruncatedFock(letter_dim=1, cutoff=7)
        s = fock.semicircular()
        omega = fock.vacuum()
        for k in (1, 3, 5):
            assert abs(omega @ np.linalg.matrix_power(s, k) @ omega) == 0.0

    def test_truncation_stability(self):
        assert fock_semicircular_moments(5, 5) == fock_semicircular_moments(9, 5)

    def test_cutoff_too_small(self):
        with pytest.raises(ValueError, match="cutoff"):
            fock_semicircular_moments(3, 4)

    def test_creation_relations(self):
        fock = TruncatedFock(letter_dim=2, cutoff=4)
        l0, l1 = fock.creation(0), fock.creation(1)
        eye = np.eye(fock.dim)
        top = fock.top_level_projection()
        assert np.max(np.abs(l0.T @ l0 - (eye - top))) == 0.0
        assert np.max(np.abs(l0.T @ l1)) == 0.0

    def test_compression_identity(self):
        # off-diagonal compression of a mean-zero letter vanishes exactly
        fock = TruncatedFock(letter_dim=2, cutoff=5)
        a = fock.semicircular(letter=0)
        p1 = fock.letter_start_projection(0)
        comp = (np.eye(fock.dim) - p1) @ a @ (np.eye(fock.dim) - p1)
        assert np.max(np.abs(comp)) <= 1e-12

    def test_vacuum_mean_zero(self):
        fock = TruncatedFock(letter_dim=2, cutoff=4)
        a = fock.semicircular(letter=1)
        omega = fock.vacuum()
        assert omega @ a @ omega == 0.0


class TestCLT:
    def test_single_summand_variance(self):
        res = free_clt_check(1, 128, trials=3, seed=0)
        assert res.moments[1] == pytest.approx(1.0, rel=0.02)

    def test_semicircular_moments(self):
        res = free_clt_check(8, 256, trials=5, seed=1)
        assert res.moments[1] == pytest.approx(1.0, rel=0.02)
        assert res.moments[3] == pytest.approx(2.0, rel=0.05)
        assert abs(res.moments[0]) < 0.02 and abs(res.moments[2]) < 0.05

    def test_non_semicircular_base_converges(self):
        dim = 128
        signs = np.diag(np.where(np.arange(dim) < dim // 2, 1.0, -1.0)).astype(complex)
        res = free_clt_check(16, dim, trials=5, seed=2, base=signs)
        # free convolution of +-1 masses: fourth moment 2 - 1/n
        assert res.moments[3] == pytest.approx(2.0 - 1.0 / 16.0, abs=0.08)

    def test_determinism(self):
        a = free_clt_check(4, 64, trials=2, seed=3)
        b = free_clt_check(4, 64, trials=2, seed=3)
        assert a.moments == b.moments
