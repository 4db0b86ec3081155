import math

import numpy as np
import pytest

from ohlab.ohspace import OHTuple, fn_scalar_norm, oh_norm_direct, oh_norm_variational
from ohlab.quad import arcsine_rule

RULE = arcsine_rule(4096)


def random_tuple(rng, n, m):
    return rng.standard_normal((n, m, m)) + 1j * rng.standard_normal((n, m, m))


class TestDirect:
    def test_single_identity(self):
        for m in (1, 2, 5):
            assert oh_norm_direct(np.eye(m)[None]) == pytest.approx(1.0, rel=1e-13)

    def test_scalar_tuple_is_euclidean(self):
        xs = np.array([[[1.0 + 2.0j]], [[3.0]], [[-1.0j]]])
        assert oh_norm_direct(xs) == pytest.approx(np.sqrt(1 + 4 + 9 + 1), rel=1e-13)

    def test_orthogonal_projections(self):
        e11 = np.diag([1.0, 0.0]).astype(complex)
        e22 = np.diag([0.0, 1.0]).astype(complex)
        assert oh_norm_direct(np.array([e11, e22])) == pytest.approx(1.0, rel=1e-13)

    def test_unitary_invariance(self):
        rng = np.random.default_rng(0)
        xs = random_tuple(rng, 3, 4)
        u = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))[0]
        v = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))[0]
        rotated = np.array([u @ x @ v for x in xs])
        assert oh_norm_direct(rotated) == pytest.approx(oh_norm_direct(xs), rel=1e-10)

    def test_homogeneity(self):
        rng = np.random.default_rng(1)
        xs = random_tuple(rng, 2, 3)
        lam = 0.7 - 1.9j
        assert oh_norm_direct(lam * xs) == pytest.approx(abs(lam) * oh_norm_direct(xs), rel=1e-12)
        base = oh_norm_variational(xs, seed=0).value
        scaled = oh_norm_variational(lam * xs, seed=0).value
        assert scaled == pytest.approx(abs(lam) * base, rel=1e-9)

    def test_tuple_type_validation(self):
        with pytest.raises(ValueError):
            OHTuple(np.zeros((2, 3, 4)))


class TestVariational:
    def test_single_identity(self):
        res = oh_norm_variational(np.eye(3, dtype=complex)[None])
        assert res.value == pytest.approx(1.0, rel=1e-12)
        assert res.converged

    def test_offdiagonal_units(self):
        e12 = np.zeros((2, 2), dtype=complex); e12[0, 1] = 1.0
        e21 = np.zeros((2, 2), dtype=complex); e21[1, 0] = 1.0
        xs = np.array([e12, e21])
        res = oh_norm_variational(xs)
        assert res.value == pytest.approx(oh_norm_direct(xs), rel=1e-10)

    def test_agrees_with_direct(self):
        rng = np.random.default_rng(2)
        for trial in range(30):
            n = int(rng.integers(1, 7))
            m = int(rng.integers(1, 7))
            xs = random_tuple(rng, n, m)
            d = oh_norm_direct(xs)
            res = oh_norm_variational(xs, seed=trial)
            assert abs(res.value - d) / d <= 1e-6

    def test_never_exceeds_direct(self):
        rng = np.random.default_rng(3)
        for trial in range(20):
            xs = random_tuple(rng, 3, 4)
            res = oh_norm_variational(xs, seed=trial)
            assert res.value <= oh_norm_direct(xs) * (1.0 + 1e-9) + 1e-12

    def test_halfstep_monotonicity(self):
        rng = np.random.default_rng(4)
        xs = random_tuple(rng, 4, 5)
        res = oh_norm_variational(xs, restarts=1)
        trace = res.objective_trace
        assert np.all(np.diff(trace) >= -1e-12 * np.maximum(trace[1:], 1.0))

    def test_argmax_feasible(self):
        rng = np.random.default_rng(5)
        xs = random_tuple(rng, 2, 4)
        res = oh_norm_variational(xs)
        for mat in (res.argmax.a_pos, res.argmax.b_pos):
            assert np.linalg.norm(mat, "fro") <= 1.0 + 1e-12
            assert np.min(np.linalg.eigvalsh(mat)) >= -1e-10
        # maximiser interior positivity is reported, never asserted
        assert isinstance(res.min_eig_a, float)

    def test_zero_tuple(self):
        res = oh_norm_variational(np.zeros((2, 3, 3), dtype=complex))
        assert res.value == 0.0

    def test_invalid_parameters(self):
        xs = np.eye(2, dtype=complex)[None]
        with pytest.raises(ValueError):
            oh_norm_variational(xs, restarts=0)
        with pytest.raises(ValueError):
            oh_norm_variational(xs, tol=0.0)


class TestScalarBasisNorm:
    def test_zero_vector(self):
        assert fn_scalar_norm(np.zeros(3), RULE) == 0.0

    def test_single_basis_vector_range(self):
        val = fn_scalar_norm([1.0], RULE)
        assert 1.0 - 1e-9 <= val <= math.sqrt(2.0) + 1e-9

    def test_brute_force_ratio_grid(self):
        # oracle: dense scan over the profile ratio with its own closed form
        t = RULE.nodes
        w = RULE.weights
        thetas = np.linspace(1e-4, 1 - 1e-4, 4001)
        vals = [
            math.sqrt(np.sum(w / (th * t + (1 - th) * (1 - t)))) for th in thetas
        ]
        oracle = min(vals)
        assert fn_scalar_norm([1.0], RULE) == pytest.approx(oracle, abs=1e-6)

    def test_isomorphism_window(self):
        rng = np.random.default_rng(6)
        for n in (1, 2, 4, 8, 16):
            for _ in range(5):
                a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
                ratio = fn_scalar_norm(a, RULE) / np.linalg.norm(a)
                assert 1 / math.sqrt(2) - 1e-3 <= ratio <= math.sqrt(2) + 1e-3

    def test_ratio_constant_across_vectors(self):
        rng = np.random.default_rng(7)
        ratios = []
        for _ in range(20):
            a = rng.standard_normal(6) + 1j * rng.standard_normal(6)
            ratios.append(fn_scalar_norm(a, RULE) / np.linalg.norm(a))
        assert max(ratios) - min(ratios) < 1e-6
