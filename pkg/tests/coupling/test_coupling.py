import warnings

import numpy as np
import pytest

from dendrifield.coupling import (
    UnderResolvedDeltaWarning, build_plan, lipschitz_constant,
    direct_quadrature_matrix, eval_N_direct, eval_N_fft, eval_N_compact, get_evaluator
)
from dendrifield.counters import StepCounters
from dendrifield.errors import DimensionMismatchError, ValidationError
from dendrifield.grid import build_grid, build_weights
from dendrifield.model import ExpDecay, MexicanHat, ZeroKernel, Gaussian, TruncatedGaussian, ShiftedSigmoid, Sigmoid


def make_plan(n_x, n_xi, L_x=2.0, L_xi=1.0, kernel=None, delta=None, xi_0=0.3):
    grid = build_grid(n_x, n_xi, L_x, L_xi)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UnderResolvedDeltaWarning)
        return build_plan(grid, build_weights(grid), kernel or ExpDecay(kappa=3.0),
                          delta or Gaussian(eps=0.5), xi_0)


class TestBuildPlan:

    def test_wrapped_kernel_samples(self):
        plan = make_plan(4, 3)
        expected = 1.5 * np.exp(-np.array([0.0, 1.0, 2.0, 1.0]) / 2)
        np.testing.assert_allclose(plan.w_samples, expected)

    def test_samples_are_periodically_even(self):
        plan = make_plan(16, 5, L_x=3.0)
        w = plan.w_samples
        np.testing.assert_allclose(w[1:], w[1:][::-1])

    def test_same_profile_at_the_soma(self):
        plan = make_plan(8, 9, xi_0=0.0)
        np.testing.assert_array_equal(plan.alpha, plan.alpha_prime)

    def test_empty_support(self):
        """Test a truncated delta missing every dendritic node gives a trivial plan"""
        plan = make_plan(8, 3, L_xi=1.0, delta=TruncatedGaussian(eps=0.1), xi_0=0.5)
        assert len(plan.support_in) == 0
        assert plan.is_trivial

    def test_compact_support_is_small(self):
        plan = make_plan(8, 201, L_xi=2.0, delta=TruncatedGaussian(eps=0.1), xi_0=1.0)
        assert plan.compact
        assert 0 < len(plan.support_in) <= 11
        assert 0 < len(plan.support_out) <= 11

    def test_under_resolved_warning(self):
        grid = build_grid(8, 3, 1.0, 1.0)
        with pytest.warns(UnderResolvedDeltaWarning, match="under-resolved"):
            build_plan(grid, build_weights(grid), ExpDecay(kappa=1.0), Gaussian(eps=0.1), 0.0)

    def test_arrays_are_frozen(self):
        plan = make_plan(8, 5)
        with pytest.raises(ValueError):
            plan.w_hat[0] = 0.0

    def test_lipschitz_constant(self):
        plan = make_plan(8, 5)
        S = Sigmoid(beta=4.0, theta=0.0)
        expected = 8 * plan.grid.measure * plan.max_abs_W() * 1.0
        assert lipschitz_constant(plan, S) == pytest.approx(expected)


class TestEvaluators:

    def test_zero_rate_gives_zero(self):
        plan = make_plan(8, 9)
        V = np.zeros(plan.grid.shape)
        S = ShiftedSigmoid(beta=5.0)
        np.testing.assert_array_equal(eval_N_direct(plan, S, V), 0.0)
        np.testing.assert_allclose(eval_N_fft(plan, S, V), 0.0, atol=1e-15)

    def test_zero_kernel_gives_zero(self):
        plan = make_plan(8, 9, kernel=ZeroKernel())
        V = np.random.default_rng(0).normal(size=plan.grid.shape)
        S = Sigmoid(beta=2.0, theta=0.0)
        np.testing.assert_array_equal(eval_N_direct(plan, S, V), 0.0)
        np.testing.assert_array_equal(eval_N_fft(plan, S, V), 0.0)

    def test_constant_field_factorises(self):
        """Test N_ij = alpha_i (sum alpha' sigma) S(c) (sum_j' w h_x) for constant V"""
        plan = make_plan(4, 5)
        S = Sigmoid(beta=1.0, theta=0.0)
        c = 0.25
        V = np.full(plan.grid.shape, c)
        row_sum = plan.w_samples.sum() * plan.h_x
        expected = np.outer(plan.alpha, np.full(4, row_sum)) * float(plan.out_weights.sum()) * float(S(c))
        np.testing.assert_allclose(eval_N_direct(plan, S, V), expected, rtol=1e-13)
        np.testing.assert_allclose(eval_N_fft(plan, S, V), expected, rtol=1e-12)

    def test_impulse_rotates_kernel(self):
        """Test a single active source reproduces a rotated copy of w"""
        plan = make_plan(16, 5, L_x=4.0, xi_0=0.0)
        S = ShiftedSigmoid(beta=1.0)
        V = np.zeros(plan.grid.shape)
        V[:, 3] = 1.0
        N = eval_N_fft(plan, S, V)
        r3 = float(plan.out_weights.sum() * S(1.0))
        expected = plan.alpha[:, None] * plan.h_x * r3 * np.roll(plan.w_samples, 3)[None, :]
        np.testing.assert_allclose(N, expected, atol=1e-13)

    @pytest.mark.parametrize("n_x", [4, 8, 16])
    @pytest.mark.parametrize("n_xi", [5, 9, 17])
    def test_fft_matches_direct(self, n_x, n_xi):
        rng = np.random.default_rng(n_x * n_xi)
        plan = make_plan(n_x, n_xi, L_x=3.0, L_xi=2.0, kernel=MexicanHat(1, 1, 0.25, 0.5), xi_0=1.0)
        S = Sigmoid(beta=3.0, theta=0.1)
        for _ in range(10):
            V = rng.normal(size=plan.grid.shape)
            direct = eval_N_direct(plan, S, V)
            fast = eval_N_fft(plan, S, V)
            assert np.max(np.abs(fast - direct)) <= 1e-10 * (1 + np.max(np.abs(direct)))

    @pytest.mark.parametrize("n_x", [8, 16])
    @pytest.mark.parametrize("n_xi", [9, 17])
    def test_compact_matches_direct(self, n_x, n_xi):
        rng = np.random.default_rng(n_x + n_xi)
        plan = make_plan(n_x, n_xi, L_x=3.0, L_xi=2.0, delta=TruncatedGaussian(eps=0.6), xi_0=1.0)
        S = Sigmoid(beta=3.0, theta=0.1)
        for _ in range(10):
            V = rng.normal(size=plan.grid.shape)
            direct = eval_N_direct(plan, S, V)
            compact = eval_N_compact(plan, S, V)
            assert np.max(np.abs(compact - direct)) <= 1e-10 * (1 + np.max(np.abs(direct)))

    def test_compact_matches_fft(self):
        rng = np.random.default_rng(5)
        plan = make_plan(32, 81, L_x=5.0, L_xi=2.0, delta=TruncatedGaussian(eps=0.3), xi_0=1.0)
        S = Sigmoid(beta=5.0, theta=0.0)
        V = rng.normal(size=plan.grid.shape)
        compact = eval_N_compact(plan, S, V)
        np.testing.assert_allclose(compact, eval_N_fft(plan, S, V), atol=1e-12)
        outside = np.setdiff1d(np.arange(81), plan.support_in)
        assert np.all(compact[outside] == 0.0)

    def test_compact_trivial(self):
        plan = make_plan(8, 3, delta=TruncatedGaussian(eps=0.1), xi_0=0.5)
        N = eval_N_compact(plan, Sigmoid(beta=1.0, theta=0.0), np.ones(plan.grid.shape))
        np.testing.assert_array_equal(N, 0.0)

    def test_compact_rejects_gaussian(self):
        plan = make_plan(8, 9)
        with pytest.raises(ValidationError, match="compactly supported"):
            eval_N_compact(plan, Sigmoid(beta=1.0, theta=0.0), np.zeros(plan.grid.shape))

    def test_shape_mismatch(self):
        plan = make_plan(8, 9)
        with pytest.raises(DimensionMismatchError):
            eval_N_fft(plan, Sigmoid(beta=1.0, theta=0.0), np.zeros((8, 9)))

    def test_quadrature_matrix_ordering(self):
        """Test the dense matrix acts on the column-major flattening"""
        plan = make_plan(4, 5)
        S = Sigmoid(beta=2.0, theta=0.0)
        V = np.random.default_rng(2).normal(size=plan.grid.shape)
        M = direct_quadrature_matrix(plan)
        flat = M @ S(V).ravel(order='F')
        np.testing.assert_allclose(flat.reshape(plan.grid.shape, order='F'), eval_N_fft(plan, S, V),
                                   atol=1e-13)

    def test_counters(self):
        plan = make_plan(8, 9)
        counters = StepCounters()
        eval_N_fft(plan, Sigmoid(beta=1.0, theta=0.0), np.zeros(plan.grid.shape), counters=counters)
        counters.end_step()
        assert counters.fft_count == 2
        assert counters.flops_per_step > 4 * 9 * 8

    def test_registry(self):
        assert get_evaluator('fft') is eval_N_fft
        with pytest.raises(ValidationError, match="Unknown evaluator"):
            get_evaluator('spectral')

    def test_quadrature_matrix_built_once(self):
        plan = make_plan(4, 5)
        S = Sigmoid(beta=2.0, theta=0.0)
        eval_N_direct(plan, S, np.zeros(plan.grid.shape))
        first = plan.quadrature_matrix
        eval_N_direct(plan, S, np.ones(plan.grid.shape))
        assert plan.quadrature_matrix is first
        assert direct_quadrature_matrix(plan) is first
        with pytest.raises(ValueError):
            first[0, 0] = 1.0


class TestOperatorProperties:

    def setup_method(self):
        self.rng = np.random.default_rng(17)
        self.plan = make_plan(16, 9, L_x=3.0, L_xi=2.0, kernel=MexicanHat(1, 1, 0.25, 0.5), xi_0=1.0)
        self.S = Sigmoid(beta=3.0, theta=0.1)

    @pytest.mark.parametrize("evaluator", [eval_N_fft, eval_N_direct])
    def test_shift_equivariance(self, evaluator):
        """Test a cyclic shift of V in x shifts N by the same number of nodes"""
        V = self.rng.normal(size=self.plan.grid.shape)
        N = evaluator(self.plan, self.S, V)
        for shift in [1, 5, 15]:
            shifted = evaluator(self.plan, self.S, np.roll(V, shift, axis=1))
            np.testing.assert_allclose(shifted, np.roll(N, shift, axis=1), atol=1e-13)

    def test_bounded_by_kernel_mass(self):
        """Test |N| <= max|alpha| ||w||_1 sum|alpha' sigma| sup|S| for arbitrary fields"""
        plan, S = self.plan, self.S
        w_mass = plan.h_x * np.sum(np.abs(plan.w_samples))
        bound = np.max(np.abs(plan.alpha)) * w_mass * np.sum(np.abs(plan.out_weights)) * S.sup_abs()
        for scale in [0.1, 1.0, 100.0]:
            V = scale * self.rng.normal(size=plan.grid.shape)
            assert np.max(np.abs(eval_N_fft(plan, S, V))) <= bound * (1 + 1e-12)
        saturated = eval_N_fft(plan, S, np.full(plan.grid.shape, 1e3))
        assert np.max(np.abs(saturated)) <= bound * (1 + 1e-12)

    def test_bounded_by_domain_estimate(self):
        """Test |N| <= mu(Omega) C_W sup|S|"""
        plan, S = self.plan, self.S
        bound = plan.grid.measure * plan.max_abs_W() * S.sup_abs()
        V = 10.0 * self.rng.normal(size=plan.grid.shape)
        assert np.max(np.abs(eval_N_fft(plan, S, V))) <= bound

    def test_lipschitz_spot_check(self):
        """Test |N(U) - N(V)| <= zeta |U - V| on random pairs"""
        zeta = lipschitz_constant(self.plan, self.S)
        for _ in range(20):
            U = self.rng.normal(size=self.plan.grid.shape)
            V = U + self.rng.uniform(1e-3, 1.0) * self.rng.normal(size=self.plan.grid.shape)
            gap = np.max(np.abs(eval_N_fft(self.plan, self.S, U) - eval_N_fft(self.plan, self.S, V)))
            assert gap <= zeta * np.max(np.abs(U - V))
