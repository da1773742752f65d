"""
Linear stability of the trivial state: the dispersion function E(lambda, p),
the static Turing threshold, and direct simulations around it.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from ..errors import DomainError, NoRootError, ValidationError
from ..grid import build_grid
from ..model import DendriticDelta, PhysicalParams, ShiftedSigmoid, SomaticKernel
from ..stepper import CosineInX, SimulationSetup, run
from .waves import psi

logger = logging.getLogger(__name__)


# Turing analysis constants
class TuringConfig:
    """Wavenumber scan and root-finding settings"""
    P_MAX = 50.0
    P_MIN = 1e-4
    SCAN_POINTS = 600
    GOLDEN_TOLERANCE = 1e-10
    ROOT_TOLERANCE = 1e-10
    LAMBDA_CAP = 1e6
    REFERENCE_BRACKET = (28.0, 30.0)


@dataclass(frozen=True)
class DispersionContext:
    params: PhysicalParams
    kernel: SomaticKernel
    slope0: float

    def __post_init__(self):
        if not self.slope0 >= 0:
            raise ValidationError(f"slope0 must be non-negative, got {self.slope0}")


def _green_factor(lam, params: PhysicalParams):
    """exp(-psi xi_0) / (2 psi nu) on the principal branch"""
    if np.iscomplexobj(lam):
        lam = complex(lam)
        if lam.real <= -params.gamma:
            raise DomainError(f"Re(lambda) must exceed -gamma = {-params.gamma}, got {lam}")
        p = complex(np.sqrt((params.gamma + lam) / params.nu))
        return np.exp(-p * params.xi_0) / (2.0 * p * params.nu)
    p = psi(float(lam), params.nu, params.gamma)
    return float(np.exp(-p * params.xi_0) / (2.0 * p * params.nu))


def dispersion_value(ctx: DispersionContext, lam, p: float):
    """E(lambda, p) = 1 - S'(0) exp(-psi xi_0) / (2 psi nu) w_hat(p)"""
    w_hat = float(ctx.kernel.fourier(p))
    return 1.0 - ctx.slope0 * _green_factor(lam, ctx.params) * w_hat


def w_star_times_slope(params: PhysicalParams) -> float:
    """2 psi(0) nu exp(psi(0) xi_0), the slope-independent part of w_*"""
    p0 = psi(0.0, params.nu, params.gamma)
    return float(2.0 * p0 * params.nu * np.exp(p0 * params.xi_0))


def w_hat_minus_threshold(kernel: SomaticKernel, params: PhysicalParams, slope0: float, p):
    """w_hat(p) - w_*; a positive value marks a statically unstable mode"""
    if not slope0 > 0:
        raise ValidationError(f"slope0 must be positive, got {slope0}")
    return kernel.fourier(p) - w_star_times_slope(params) / slope0


@dataclass
class TuringThreshold:
    """Static instability point of a kernel for given cable parameters"""
    w_star_slope: float
    p_star: float
    w_hat_max: float

    @property
    def slope_crit(self) -> float:
        if self.w_hat_max <= 0:
            return float('inf')
        return self.w_star_slope / self.w_hat_max

    @property
    def beta_crit(self) -> float:
        """Critical gain of the shifted sigmoid, whose slope at zero is beta / 4"""
        return 4.0 * self.slope_crit

    @property
    def has_turing_mode(self) -> bool:
        return self.p_star > 0

    def to_dict(self):
        return {
            'w_star_slope': self.w_star_slope,
            'p_star': self.p_star,
            'w_hat_max': self.w_hat_max,
            'slope_crit': self.slope_crit,
            'beta_crit': self.beta_crit,
        }


def maximise_w_hat(kernel: SomaticKernel) -> float:
    """argmax of w_hat over [0, P_MAX]; 0 when no interior maximum beats w_hat(0)"""
    grid = np.concatenate(([0.0], np.geomspace(TuringConfig.P_MIN, TuringConfig.P_MAX,
                                               TuringConfig.SCAN_POINTS)))
    values = kernel.fourier(grid)
    k = int(np.argmax(values))
    if k == 0:
        return 0.0
    if k == len(grid) - 1:
        logger.warning("w_hat still increasing at p = %g", TuringConfig.P_MAX)
        return float(grid[-1])
    lo, mid, hi = grid[k - 1], grid[k], grid[k + 1]
    result = minimize_scalar(lambda p: -float(kernel.fourier(p)), bracket=(lo, mid, hi),
                             method='golden', tol=TuringConfig.GOLDEN_TOLERANCE)
    p_star = float(result.x)

    # polish on the sign change of w_hat'
    d_lo, d_hi = kernel.fourier_derivative(lo), kernel.fourier_derivative(hi)
    if d_lo > 0 > d_hi:
        p_star = float(bisect(lambda p: float(kernel.fourier_derivative(p)), lo, hi,
                              xtol=TuringConfig.ROOT_TOLERANCE))
    if kernel.fourier(p_star) <= values[0]:
        return 0.0
    return p_star


def static_turing_threshold(params: PhysicalParams, kernel: SomaticKernel) -> TuringThreshold:
    p_star = maximise_w_hat(kernel)
    threshold = TuringThreshold(w_star_slope=w_star_times_slope(params), p_star=p_star,
                                w_hat_max=float(kernel.fourier(p_star)))
    logger.info("Static threshold: p_* = %.6g, w_hat(p_*) = %.6g, S'(0)_crit = %.6g",
                threshold.p_star, threshold.w_hat_max, threshold.slope_crit)
    return threshold


def real_growth_rate(ctx: DispersionContext, p: float) -> Optional[float]:
    """Real root lambda of E(lambda, p) = 0, or None when none exists.

    For w_hat(p) > 0, E runs monotonically from -inf at lambda = -gamma to 1,
    so a single real root exists; otherwise E > 0 on the whole real branch.
    """
    if ctx.slope0 * float(ctx.kernel.fourier(p)) <= 0:
        return None
    gamma = ctx.params.gamma

    def f(lam):
        return dispersion_value(ctx, lam, p)

    lower = -gamma + TuringConfig.ROOT_TOLERANCE
    if f(lower) >= 0:
        return None
    upper = 1.0
    while f(upper) < 0:
        if upper >= TuringConfig.LAMBDA_CAP:
            raise NoRootError(f"No real growth rate for p = {p}", (lower, upper))
        upper *= 2.0
    return float(bisect(f, lower, upper, xtol=TuringConfig.ROOT_TOLERANCE))


def dispersion_curve(ctx: DispersionContext, p_values: Sequence[float]) -> np.ndarray:
    """Real growth rate lambda(p) per wavenumber; NaN where no real root exists"""
    out = np.full(len(p_values), np.nan)
    for k, p in enumerate(p_values):
        lam = real_growth_rate(ctx, float(p))
        if lam is not None:
            out[k] = lam
    return out


@dataclass
class TuringRunSettings:
    """Grid and run settings for the static Turing simulations"""
    n_x: int = 256
    n_xi: int = 161
    tau: float = 0.05
    t_final: float = 40.0
    amplitude: float = 0.01
    evaluator: str = 'fft'
    delta: Optional[DendriticDelta] = None  # Gaussian of width eps when unset

    @property
    def n_t(self) -> int:
        return int(round(self.t_final / self.tau))


@dataclass
class TuringResult:
    beta: float
    growth_factor: float
    predicted_unstable: bool
    somatic_max_trace: np.ndarray = field(repr=False, default_factory=lambda: np.empty(0))
    times: np.ndarray = field(repr=False, default_factory=lambda: np.empty(0))

    @property
    def grows(self) -> bool:
        return self.growth_factor > 1.0

    @property
    def agrees(self) -> bool:
        return self.grows == self.predicted_unstable


def growth_factor(trace: np.ndarray) -> float:
    """max over the last quarter of a trace divided by max over the first quarter"""
    trace = np.asarray(trace, dtype=float)
    if trace.size == 0:
        raise DomainError("Growth factor of an empty trace is undefined")
    quarter = max(1, len(trace) // 4)
    initial = float(np.max(trace[:quarter]))
    if not (np.isfinite(initial) and initial > 0):
        raise DomainError(f"Growth factor is undefined: first-quarter maximum is {initial:.3g}")
    return float(np.max(trace[-quarter:]) / initial)


def turing_setup(params: PhysicalParams, kernel: SomaticKernel, beta: float,
                 threshold: TuringThreshold, settings: TuringRunSettings) -> SimulationSetup:
    """Run on [-4 pi/p_*, 4 pi/p_*] x [-pi/p_*, pi/p_*] from V0 = a cos(p_* x)"""
    if not threshold.has_turing_mode:
        raise ValidationError("Kernel has no static Turing mode (w_hat is maximal at p = 0)")
    p_star = threshold.p_star
    grid = build_grid(settings.n_x, settings.n_xi, 4.0 * np.pi / p_star, np.pi / p_star)
    return SimulationSetup(
        grid=grid, params=params, firing_rate=ShiftedSigmoid(beta=beta), kernel=kernel,
        tau=settings.tau, n_t=settings.n_t,
        initial=CosineInX(amplitude=settings.amplitude, wavenumber=p_star),
        snapshot_stride=max(1, settings.n_t), evaluator=settings.evaluator, delta=settings.delta,
    )


def turing_experiment(params: PhysicalParams, kernel: SomaticKernel, beta_values: Sequence[float],
                      settings: Optional[TuringRunSettings] = None) -> List[TuringResult]:
    """Simulate perturbations of the trivial state for each gain in ``beta_values``"""
    settings = settings or TuringRunSettings()
    threshold = static_turing_threshold(params, kernel)
    results = []
    for beta in beta_values:
        record = run(turing_setup(params, kernel, beta, threshold, settings))
        factor = growth_factor(record.somatic_max_trace)
        result = TuringResult(beta=float(beta), growth_factor=factor,
                              predicted_unstable=beta > threshold.beta_crit,
                              somatic_max_trace=record.somatic_max_trace, times=record.times)
        logger.info("beta = %g: growth factor %.4g (%s predicted)", beta, factor,
                    "growth" if result.predicted_unstable else "decay")
        results.append(result)
    return results


def bracket_report(threshold: TuringThreshold, bracket=TuringConfig.REFERENCE_BRACKET) -> dict:
    """Whether beta_crit falls inside the reference bracket; informational only"""
    lo, hi = bracket
    inside = lo <= threshold.beta_crit <= hi
    if not inside:
        logger.info("beta_crit = %.4g lies outside the reference bracket [%g, %g]",
                    threshold.beta_crit, lo, hi)
    return {'beta_crit': threshold.beta_crit, 'bracket_low': lo, 'bracket_high': hi,
            'inside': inside}
