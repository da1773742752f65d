import numpy as np
import pytest
from scipy.integrate import quad

from dendrifield.errors import DomainError, ValidationError
from dendrifield.model import (
    PhysicalParams, Sigmoid, ShiftedSigmoid, Heaviside, ExpDecay, MexicanHat, ZeroKernel,
    Gaussian, TruncatedGaussian, eval_firing_rate, firing_rate_slope_at_zero, create_firing_rate,
    eval_kernel, kernel_fourier, create_kernel, eval_delta, create_delta
)


class TestPhysicalParams:

    def test_valid(self):
        params = PhysicalParams(gamma=1.0, nu=0.4, xi_0=1.0, eps=0.005)
        assert params.to_dict() == {'gamma': 1.0, 'nu': 0.4, 'xi_0': 1.0, 'eps': 0.005}

    @pytest.mark.parametrize("key", ['gamma', 'nu', 'eps'])
    def test_non_positive_rejected(self, key):
        values = {'gamma': 1.0, 'nu': 0.4, 'xi_0': 1.0, 'eps': 0.005}
        values[key] = 0.0
        with pytest.raises(ValidationError, match=key):
            PhysicalParams(**values)


class TestFiringRates:

    def test_sigmoid_at_threshold(self):
        assert eval_firing_rate(Sigmoid(beta=1000, theta=0.01), 0.01) == 0.5

    def test_sigmoid_saturates(self):
        assert eval_firing_rate(Sigmoid(beta=1000, theta=0.01), 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_sigmoid_range(self):
        S = Sigmoid(beta=5.0, theta=0.2)
        values = S(np.linspace(-10, 10, 101))
        assert np.all(values >= 0.0) and np.all(values <= 1.0)

    def test_sigmoid_large_argument_is_finite(self):
        S = Sigmoid(beta=1000.0, theta=0.0)
        assert np.all(np.isfinite(S(np.array([-1e6, 1e6]))))

    def test_shifted_sigmoid_zero(self):
        assert eval_firing_rate(ShiftedSigmoid(beta=30), 0.0) == 0.0

    def test_shifted_sigmoid_is_odd(self):
        S = ShiftedSigmoid(beta=3.0)
        v = np.linspace(-2, 2, 9)
        np.testing.assert_allclose(S(v), -S(-v), atol=1e-15)

    def test_heaviside(self):
        H = Heaviside(theta=0.1)
        np.testing.assert_array_equal(H(np.array([0.0, 0.1, 0.2])), [0.0, 0.5, 1.0])

    @pytest.mark.parametrize("S, slope", [
        (ShiftedSigmoid(beta=28), 7.0),
        (ShiftedSigmoid(beta=4), 1.0),
        (Sigmoid(beta=2, theta=0), 0.5),
    ])
    def test_slope_at_zero(self, S, slope):
        assert firing_rate_slope_at_zero(S) == pytest.approx(slope)

    def test_heaviside_slope_undefined(self):
        with pytest.raises(DomainError, match="slope undefined at threshold"):
            firing_rate_slope_at_zero(Heaviside(theta=0.0))

    def test_derivative_matches_finite_difference(self):
        S = Sigmoid(beta=7.0, theta=0.3)
        v = np.linspace(-1, 1, 11)
        h = 1e-6
        np.testing.assert_allclose(S.derivative(v), (S(v + h) - S(v - h)) / (2 * h), rtol=1e-6)

    def test_bounds(self):
        assert ShiftedSigmoid(beta=8.0).sup_abs() == 0.5
        assert ShiftedSigmoid(beta=8.0).sup_abs_derivative() == 2.0
        assert Heaviside(theta=0.0).sup_abs_derivative() == float('inf')

    def test_non_positive_beta(self):
        with pytest.raises(ValidationError, match="beta"):
            Sigmoid(beta=0.0, theta=0.0)

    def test_factory(self):
        S = create_firing_rate({'type': 'sigmoid', 'beta': 10.0, 'theta': 0.1})
        assert S == Sigmoid(beta=10.0, theta=0.1)
        assert create_firing_rate(S.to_dict()) == S

    def test_factory_unknown(self):
        with pytest.raises(ValidationError, match="Unknown firing rate 'tanh'"):
            create_firing_rate({'type': 'tanh'})

    def test_factory_bad_parameters(self):
        with pytest.raises(ValidationError, match="Bad parameters"):
            create_firing_rate({'type': 'shifted_sigmoid', 'beta': 1.0, 'theta': 0.0})


class TestKernels:

    def test_mexican_hat_at_zero(self):
        assert eval_kernel(MexicanHat(1, 1, 0.25, 0.5), 0.0) == pytest.approx(0.75)

    def test_exp_decay_values(self):
        w = ExpDecay(kappa=3.0)
        assert eval_kernel(w, 0.0) == 1.5
        assert eval_kernel(w, 2.0) == pytest.approx(0.551819, abs=1e-6)

    def test_even_and_decreasing(self):
        w = ExpDecay(kappa=2.0)
        d = np.linspace(0, 10, 50)
        np.testing.assert_array_equal(w(d), w(-d))
        assert np.all(np.diff(w(d)) < 0)

    def test_fourier_at_zero(self):
        assert kernel_fourier(MexicanHat(1, 1, 0.25, 0.5), 0.0) == pytest.approx(1.0)
        assert kernel_fourier(ExpDecay(kappa=3.0), 0.0) == pytest.approx(6.0)

    def test_fourier_matches_quadrature(self):
        """Test closed-form w_hat against integrating w(x) cos(px)"""
        w = MexicanHat(1, 1, 0.25, 0.5)
        for p in (0.0, 0.4, 1.3):
            numeric, _ = quad(lambda x: 2 * float(w(x)) * np.cos(p * x), 0, np.inf, limit=200)
            assert kernel_fourier(w, p) == pytest.approx(numeric, rel=1e-6)

    def test_mexican_hat_peak(self):
        w = MexicanHat(1, 1, 0.25, 0.5)
        assert kernel_fourier(w, 0.4002) == pytest.approx(1.1143, abs=2e-4)
        h = 1e-5
        slope = (kernel_fourier(w, 0.40023 + h) - kernel_fourier(w, 0.40023 - h)) / (2 * h)
        assert abs(slope) < 1e-3

    def test_fourier_derivative(self):
        w = MexicanHat(1, 1, 0.25, 0.5)
        p = np.linspace(0.1, 3, 7)
        h = 1e-6
        np.testing.assert_allclose(w.fourier_derivative(p), (w.fourier(p + h) - w.fourier(p - h)) / (2 * h),
                                   rtol=1e-5, atol=1e-9)

    def test_zero_kernel(self):
        w = ZeroKernel()
        assert eval_kernel(w, 1.0) == 0.0
        assert kernel_fourier(w, 1.0) == 0.0

    def test_factory(self):
        assert create_kernel({'type': 'exp_decay', 'kappa': 3.0}) == ExpDecay(kappa=3.0)
        w = MexicanHat(1, 1, 0.25, 0.5)
        assert create_kernel(w.to_dict()) == w

    def test_factory_unknown(self):
        with pytest.raises(ValidationError, match="Unknown kernel"):
            create_kernel({'type': 'gabor'})


class TestDeltas:

    def test_gaussian_peak(self):
        assert eval_delta(Gaussian(eps=0.005), 0.0) == pytest.approx(112.8379, abs=1e-4)

    def test_gaussian_even(self):
        d = Gaussian(eps=0.3)
        assert eval_delta(d, 0.17) == eval_delta(d, -0.17)

    def test_gaussian_unit_mass(self):
        mass, _ = quad(lambda xi: float(Gaussian(eps=0.2)(xi)), -np.inf, np.inf)
        assert mass == pytest.approx(1.0, rel=1e-10)

    def test_truncated_outside_support(self):
        assert eval_delta(TruncatedGaussian(eps=0.005, kappa_d=1.0), 0.01) == 0.0

    def test_truncated_inside_support(self):
        d = TruncatedGaussian(eps=0.5, kappa_d=2.0)
        assert eval_delta(d, 0.0) == 2.0
        assert d.compact_support
        assert not Gaussian(eps=0.5).compact_support

    def test_resolution(self):
        assert Gaussian(eps=0.1).is_resolved_by(0.05)
        assert not Gaussian(eps=0.1).is_resolved_by(0.2)

    def test_factory_default(self):
        assert create_delta(None, 0.05) == Gaussian(eps=0.05)

    def test_factory_truncated(self):
        d = create_delta({'type': 'truncated_gaussian', 'kappa_d': 3.0}, 0.05)
        assert d == TruncatedGaussian(eps=0.05, kappa_d=3.0)

    def test_factory_width_disagrees(self):
        with pytest.raises(ValidationError, match="disagrees"):
            create_delta({'type': 'gaussian', 'eps': 0.1}, 0.05)
