"""
Travelling-front validation: the implicit speed equation for a Heaviside
rate with a Dirac contact, and level-set tracking of simulated fronts.
"""

import logging
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

from ..errors import DomainError, NoCrossingError, NoRootError, ValidationError
from ..stepper import RunRecord

logger = logging.getLogger(__name__)


# Wave-speed constants
class WaveSpeedConfig:
    """Root finding and fit settings"""
    BISECTION_TOLERANCE = 1e-10
    BRACKET_START = 1.0
    BRACKET_GROWTH = 2.0
    BRACKET_CAP = 1e6
    FIT_RESIDUAL_WARNING = 0.5  # in units of h_x
    # Factor applied to v inside psi. Simulated fronts follow 'comoving'.
    SPEED_RELATIONS = {'literal': 1.0, 'comoving': 0.5}
    COMPARISON_RELATION = 'comoving'


class SpeedFitWarning(UserWarning):
    """Front position is not well described by a constant speed"""


def _velocity_scale(relation: str) -> float:
    try:
        return WaveSpeedConfig.SPEED_RELATIONS[relation]
    except KeyError:
        raise ValidationError(
            f"Unknown speed relation '{relation}'. Available: {list(WaveSpeedConfig.SPEED_RELATIONS)}"
        ) from None


def psi(v_or_lambda, nu: float, gamma: float):
    """sqrt((gamma + v) / nu); principal branch for complex input"""
    if np.iscomplexobj(v_or_lambda):
        return np.sqrt((gamma + np.asarray(v_or_lambda)) / nu)
    v = np.asarray(v_or_lambda, dtype=float)
    if np.any(v <= -gamma):
        raise DomainError(f"psi is defined for v > -gamma = {-gamma}, got {v_or_lambda}")
    out = np.sqrt((gamma + v) / nu)
    return float(out) if out.ndim == 0 else out


def speed_residual(v, theta: float, kappa: float, xi_0: float, gamma: float, nu: float,
                   relation: str = 'literal'):
    """kappa exp(-psi xi_0) / (2 psi nu) - theta, with psi taken at s v for the relation's factor s"""
    p = psi(_velocity_scale(relation) * np.asarray(v, dtype=float), nu, gamma)
    return kappa * np.exp(-p * xi_0) / (2.0 * p * nu) - theta


def theoretical_wave_speed(theta: float, kappa: float, xi_0: float, gamma: float, nu: float,
                           tol: float = WaveSpeedConfig.BISECTION_TOLERANCE,
                           relation: str = 'literal') -> float:
    """Root v_* of the speed equation by bisection.

    The residual decreases monotonically from +inf at the lower end of its
    domain, so the upper end of the bracket grows geometrically until the
    residual turns negative.
    """
    scale = _velocity_scale(relation)

    def f(v):
        return float(speed_residual(v, theta, kappa, xi_0, gamma, nu, relation=relation))

    lower = -gamma / scale + tol
    if f(lower) <= 0:
        raise NoRootError("Residual already non-positive at the lower end", (lower, lower))
    upper = WaveSpeedConfig.BRACKET_START
    while f(upper) > 0:
        if upper >= WaveSpeedConfig.BRACKET_CAP:
            raise NoRootError(f"No sign change for theta = {theta}", (lower, upper))
        upper = min(upper * WaveSpeedConfig.BRACKET_GROWTH, WaveSpeedConfig.BRACKET_CAP)
    return float(bisect(f, lower, upper, xtol=tol, maxiter=500))


def theoretical_speed_curve(thetas: Sequence[float], kappa: float, xi_0: float,
                            gamma: float, nu: float, relation: str = 'literal') -> np.ndarray:
    return np.array([theoretical_wave_speed(t, kappa, xi_0, gamma, nu, relation=relation)
                     for t in thetas])


@dataclass
class LevelSetTrace:
    """theta-level set x_*(t) of V(x, 0, t) on [0, L_x]; NaN marks a gap"""
    times: np.ndarray
    positions: np.ndarray

    @property
    def valid(self) -> np.ndarray:
        return np.isfinite(self.positions)


@dataclass
class SpeedMeasurement:
    speed: float
    fit_residual: float
    trace: LevelSetTrace
    pointwise_speeds: np.ndarray = field(default_factory=lambda: np.empty(0))


def rightmost_crossing(x: np.ndarray, row: np.ndarray, theta: float) -> Optional[float]:
    """Largest x where the piecewise-linear interpolant of row equals theta"""
    shifted = row - theta
    exact = np.flatnonzero(shifted == 0.0)
    sign_change = np.flatnonzero(shifted[:-1] * shifted[1:] < 0)
    best = None
    if len(sign_change):
        k = sign_change[-1]
        best = x[k] + (theta - row[k]) * (x[k + 1] - x[k]) / (row[k + 1] - row[k])
    if len(exact):
        best = x[exact[-1]] if best is None else max(best, x[exact[-1]])
    return None if best is None else float(best)


def track_level_set(times: np.ndarray, rows: np.ndarray, x_nodes: np.ndarray,
                    theta: float) -> LevelSetTrace:
    """Rightmost theta-crossing on x >= 0 for each somatic row"""
    mask = x_nodes >= -1e-12 * max(1.0, float(np.max(np.abs(x_nodes))))
    x = x_nodes[mask]
    positions = np.full(len(times), np.nan)
    for k, row in enumerate(rows):
        crossing = rightmost_crossing(x, np.asarray(row)[mask], theta)
        if crossing is not None:
            positions[k] = crossing
    return LevelSetTrace(times=np.asarray(times, dtype=float), positions=positions)


def measure_wave_speed(record: RunRecord, theta: float,
                       fit_window: Tuple[float, float]) -> SpeedMeasurement:
    """Least-squares slope of x_*(t) over the fit window"""
    if record.x_nodes is None:
        raise ValidationError("Run record carries no somatic nodes")
    t0, t1 = fit_window
    if not t1 > t0:
        raise ValidationError(f"Empty fit window {fit_window}")
    trace = track_level_set(record.snapshot_times, record.somatic_rows, record.x_nodes, theta)
    in_window = (trace.times >= t0) & (trace.times <= t1)
    if not np.any(in_window):
        raise NoCrossingError(f"No snapshots inside the fit window {fit_window}")
    missing = in_window & ~trace.valid
    if np.any(missing):
        first = trace.times[np.flatnonzero(missing)[0]]
        raise NoCrossingError(f"No theta = {theta} crossing on [0, L_x] at t = {first:.6g}")
    t = trace.times[in_window]
    x = trace.positions[in_window]
    if len(t) < 2:
        raise ValidationError("Fit window must contain at least two snapshots")

    slope, intercept = np.polyfit(t, x, 1)
    fit_residual = float(np.sqrt(np.mean((x - (slope * t + intercept)) ** 2)))
    h_x = float(np.min(np.diff(record.x_nodes)))
    if fit_residual > WaveSpeedConfig.FIT_RESIDUAL_WARNING * h_x:
        message = (f"Front position deviates from a straight line (rms {fit_residual:.3g}); "
                   f"the fit window may include the transient")
        logger.warning(message)
        warnings.warn(message, SpeedFitWarning, stacklevel=2)
    pointwise = np.diff(x) / np.diff(t)
    logger.info("Measured front speed %.6g over t in [%g, %g]", slope, t0, t1)
    return SpeedMeasurement(speed=float(slope), fit_residual=fit_residual, trace=trace,
                            pointwise_speeds=pointwise)
