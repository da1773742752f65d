"""
Convergence studies: self-convergence in tau and in the grid spacings, and
wave-speed error against the Heaviside/Dirac theory as eps or beta vary.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ValidationError
from ..grid import build_grid
from ..model import ExpDecay, Gaussian, Sigmoid
from ..stepper import SimulationSetup, run
from .waves import WaveSpeedConfig, measure_wave_speed, theoretical_wave_speed

logger = logging.getLogger(__name__)

AXES = ('tau', 'h', 'eps', 'beta')


@dataclass
class ConvergenceStudy:
    """Result of one refinement study.

    For self-convergence axes, ``differences[k]`` is the sup-norm of the
    difference between levels k and k+1 and ``errors[k]`` the distance of
    level k to the finest run. For the eps/beta axes ``errors`` holds the
    absolute wave-speed error of each level.
    """
    axis: str
    levels: List[float]
    errors: np.ndarray
    differences: np.ndarray = field(default_factory=lambda: np.empty(0))
    measured: np.ndarray = field(default_factory=lambda: np.empty(0))
    reference: Optional[float] = None
    tau_check: Optional[float] = None

    @property
    def orders(self) -> np.ndarray:
        """log2 of successive difference ratios"""
        d = self.differences
        if len(d) < 2:
            return np.empty(0)
        return np.log2(d[:-1] / d[1:])

    @property
    def error_orders(self) -> np.ndarray:
        """log2 ratios of errors against the finest level (its own zero dropped)"""
        e = self.errors[:-1] if len(self.differences) else self.errors
        if len(e) < 2:
            return np.empty(0)
        return np.log2(e[:-1] / e[1:])

    @property
    def observed_order(self) -> float:
        orders = self.orders
        return float(orders[-1]) if len(orders) else float('nan')

    @property
    def monotone_decay(self) -> bool:
        return bool(np.all(np.diff(self.errors) < 0))

    def rows(self) -> np.ndarray:
        """Table rows: level, error, difference, order (NaN-padded)"""
        n = len(self.levels)
        table = np.full((n, 4), np.nan)
        table[:, 0] = self.levels
        table[:, 1] = self.errors
        table[:len(self.differences), 2] = self.differences
        table[1:1 + len(self.orders), 3] = self.orders
        return table


def _sup_norm(a: np.ndarray) -> float:
    return float(np.max(np.abs(a)))


def _final_field(setup: SimulationSetup) -> np.ndarray:
    setup = setup.replace(snapshot_stride=max(1, setup.n_t), check_bounds=False)
    return run(setup).final.values


def tau_convergence(setup: SimulationSetup, levels: int = 4) -> ConvergenceStudy:
    """Halve tau ``levels - 1`` times at fixed final time and grid"""
    if levels < 3:
        raise ValidationError(f"Time study needs at least 3 levels, got {levels}")
    t_final = setup.tau * setup.n_t
    taus, fields = [], []
    for k in range(levels):
        n_t = setup.n_t * 2 ** k
        tau = t_final / n_t
        taus.append(tau)
        fields.append(_final_field(setup.replace(tau=tau, n_t=n_t)))
        logger.info("tau level %d: tau = %g", k, tau)
    differences = np.array([_sup_norm(fields[k] - fields[k + 1]) for k in range(levels - 1)])
    errors = np.array([_sup_norm(f - fields[-1]) for f in fields])
    return ConvergenceStudy(axis='tau', levels=taus, errors=errors, differences=differences)


def restrict(fine: np.ndarray, ratio: int) -> np.ndarray:
    """Sample a fine field on the nodes of a grid ``ratio`` times coarser in each direction"""
    return fine[::ratio, ratio - 1::ratio]


def _space_fields(setup: SimulationSetup, levels: int) -> Tuple[List[float], List[np.ndarray]]:
    grid = setup.grid
    spacings, fields = [], []
    for k in range(levels):
        refined = build_grid(grid.n_x * 2 ** k, (grid.n_xi - 1) * 2 ** k + 1, grid.L_x, grid.L_xi)
        values = _final_field(setup.replace(grid=refined))
        spacings.append(refined.h_x)
        fields.append(restrict(values, 2 ** k))
        logger.info("space level %d: %d x %d", k, refined.n_xi, refined.n_x)
    return spacings, fields


def space_convergence(setup: SimulationSetup, levels: int = 4,
                      verify_tau: bool = False) -> ConvergenceStudy:
    """Paired refinement n_x -> 2 n_x, n_xi - 1 -> 2 (n_xi - 1), compared on the coarse nodes.

    With ``verify_tau`` the study is repeated at tau/2 and ``tau_check``
    holds the largest relative change of the successive differences.
    """
    if levels < 3:
        raise ValidationError(f"Space study needs at least 3 levels, got {levels}")
    spacings, fields = _space_fields(setup, levels)
    differences = np.array([_sup_norm(fields[k] - fields[k + 1]) for k in range(levels - 1)])
    errors = np.array([_sup_norm(f - fields[-1]) for f in fields])
    study = ConvergenceStudy(axis='h', levels=spacings, errors=errors, differences=differences)
    if verify_tau:
        _, halved = _space_fields(setup.replace(tau=setup.tau / 2, n_t=setup.n_t * 2), levels)
        halved_diff = np.array([_sup_norm(halved[k] - halved[k + 1]) for k in range(levels - 1)])
        study.tau_check = float(np.max(np.abs(halved_diff - differences) / differences))
    return study


def _speed_setup(setup: SimulationSetup, axis: str, level: float) -> SimulationSetup:
    if axis == 'eps':
        params = replace(setup.params, eps=level)
        return setup.replace(params=params, delta=Gaussian(eps=level))
    return setup.replace(firing_rate=Sigmoid(beta=level, theta=setup.firing_rate.theta))


def parameter_convergence(setup: SimulationSetup, axis: str, levels: Sequence[float],
                          fit_window: Tuple[float, float],
                          relation: str = WaveSpeedConfig.COMPARISON_RELATION) -> ConvergenceStudy:
    """Wave-speed error against the Heaviside/Dirac speed for each eps or beta level"""
    if axis not in ('eps', 'beta'):
        raise ValidationError(f"axis must be 'eps' or 'beta', got '{axis}'")
    if not isinstance(setup.firing_rate, Sigmoid):
        raise ValidationError("Speed studies need a sigmoid firing rate")
    if not isinstance(setup.kernel, ExpDecay):
        raise ValidationError("Speed studies need the exponential-decay kernel")
    theta = setup.firing_rate.theta
    params = setup.params
    v_theory = theoretical_wave_speed(theta, setup.kernel.kappa, params.xi_0, params.gamma, params.nu,
                                      relation=relation)
    measured = []
    for level in levels:
        record = run(_speed_setup(setup, axis, level))
        speed = measure_wave_speed(record, theta, fit_window).speed
        measured.append(speed)
        logger.info("%s = %g: measured speed %.6g (theory %.6g)", axis, level, speed, v_theory)
    measured = np.array(measured)
    return ConvergenceStudy(axis=axis, levels=[float(v) for v in levels],
                            errors=np.abs(measured - v_theory), measured=measured,
                            reference=v_theory)


def convergence_study(setup: SimulationSetup, axis: str, levels=None,
                      fit_window: Optional[Tuple[float, float]] = None,
                      relation: str = WaveSpeedConfig.COMPARISON_RELATION) -> ConvergenceStudy:
    """Dispatch on the refinement axis; ``levels`` is a count for tau/h and a list for eps/beta"""
    if axis not in AXES:
        raise ValidationError(f"Unknown refinement axis '{axis}'. Available: {list(AXES)}")
    if axis == 'tau':
        return tau_convergence(setup, levels or 4)
    if axis == 'h':
        return space_convergence(setup, levels or 4)
    if not levels or fit_window is None:
        raise ValidationError(f"The {axis} axis needs explicit levels and a fit window")
    return parameter_convergence(setup, axis, levels, fit_window, relation)
