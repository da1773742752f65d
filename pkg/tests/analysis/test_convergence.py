import numpy as np
import pytest

from dendrifield.analysis import (
    ConvergenceStudy, convergence_study, parameter_convergence, restrict, space_convergence,
    tau_convergence
)
from dendrifield.config import parse_config
from dendrifield.errors import ValidationError
from dendrifield.grid import build_grid
from dendrifield.model import MexicanHat, ShiftedSigmoid
from tests.helpers import toy_setup


class TestConvergenceStudy:

    def test_orders_from_differences(self):
        study = ConvergenceStudy(axis='tau', levels=[0.4, 0.2, 0.1, 0.05],
                                 errors=np.array([7.0, 3.0, 1.0, 0.0]),
                                 differences=np.array([4.0, 2.0, 1.0]))
        np.testing.assert_allclose(study.orders, [1.0, 1.0])
        assert study.observed_order == pytest.approx(1.0)
        np.testing.assert_allclose(study.error_orders, np.log2([7.0 / 3.0, 3.0]))
        assert study.monotone_decay

    def test_rows_are_padded(self):
        study = ConvergenceStudy(axis='h', levels=[1.0, 0.5, 0.25],
                                 errors=np.array([5.0, 1.0, 0.0]),
                                 differences=np.array([4.0, 1.0]))
        table = study.rows()
        assert table.shape == (3, 4)
        np.testing.assert_allclose(table[:, 0], [1.0, 0.5, 0.25])
        assert np.isnan(table[2, 2])
        assert np.isnan(table[0, 3])
        assert table[1, 3] == pytest.approx(2.0)

    def test_speed_errors(self):
        study = ConvergenceStudy(axis='eps', levels=[0.08, 0.04, 0.02],
                                 errors=np.array([0.3, 0.2, 0.25]))
        assert not study.monotone_decay
        assert np.isnan(study.observed_order)
        assert len(study.error_orders) == 2


class TestRestriction:

    def test_coarse_nodes_recovered(self):
        coarse = build_grid(8, 5, 2.0, 1.0)
        fine = build_grid(32, 17, 2.0, 1.0)

        def f(grid):
            return np.cos(grid.xi_nodes)[:, None] * np.sin(grid.x_nodes)[None, :]

        np.testing.assert_allclose(restrict(f(fine), 4), f(coarse), atol=1e-14)

    def test_ratio_one(self):
        field = np.arange(12.0).reshape(3, 4)
        np.testing.assert_array_equal(restrict(field, 1), field)


class TestTauConvergence:

    def test_errors_decrease(self, quiet_resolution):
        study = tau_convergence(toy_setup(n_x=16, n_xi=9, tau=0.1, n_t=4), levels=3)
        assert study.levels == pytest.approx([0.1, 0.05, 0.025])
        assert len(study.differences) == 2
        assert study.errors[-1] == 0.0
        assert study.differences[1] < study.differences[0]

    def test_needs_three_levels(self):
        with pytest.raises(ValidationError, match="at least 3 levels"):
            tau_convergence(toy_setup(), levels=2)
        with pytest.raises(ValidationError, match="at least 3 levels"):
            space_convergence(toy_setup(), levels=2)


class TestDispatch:

    def test_unknown_axis(self):
        with pytest.raises(ValidationError, match="Unknown refinement axis"):
            convergence_study(toy_setup(), 'dt')

    def test_speed_axis_needs_window(self):
        with pytest.raises(ValidationError, match="fit window"):
            convergence_study(toy_setup(), 'eps', levels=[0.1, 0.05])

    def test_speed_axis_needs_front_model(self):
        with pytest.raises(ValidationError, match="sigmoid"):
            parameter_convergence(toy_setup(firing_rate=ShiftedSigmoid(beta=5.0)), 'beta',
                                  [10.0, 20.0], (1.0, 2.0))
        with pytest.raises(ValidationError, match="exponential-decay"):
            parameter_convergence(toy_setup(kernel=MexicanHat(1.0, 1.0, 0.25, 0.5)), 'beta',
                                  [10.0, 20.0], (1.0, 2.0))


@pytest.mark.slow
class TestObservedOrders:

    def test_first_order_in_time(self):
        setup = parse_config('converge_tau').to_setup()
        study = convergence_study(setup, 'tau', 4)
        assert study.observed_order == pytest.approx(1.0, abs=0.15)
        assert study.monotone_decay

    def test_second_order_in_space(self):
        """Test second order in h with tau small enough that halving it moves the differences < 5%"""
        config = parse_config('converge_space')
        assert config.converge.verify_tau
        study = space_convergence(config.to_setup(), config.converge.levels, verify_tau=True)
        assert study.observed_order == pytest.approx(2.0, abs=0.2)
        assert study.monotone_decay
        assert study.tau_check is not None
        assert study.tau_check < 0.05
