"""
Analysis module: semi-analytic validation of the simulations.

Wave-speed theory and level-set tracking of fronts, the Turing dispersion
function and static threshold, convergence studies and the cost benchmark.
"""

from .waves import (
    WaveSpeedConfig, SpeedFitWarning, LevelSetTrace, SpeedMeasurement,
    psi, speed_residual, theoretical_wave_speed, theoretical_speed_curve,
    rightmost_crossing, track_level_set, measure_wave_speed
)
from .turing import (
    TuringConfig, DispersionContext, TuringThreshold, TuringRunSettings, TuringResult,
    dispersion_value, w_star_times_slope, w_hat_minus_threshold, maximise_w_hat,
    static_turing_threshold, real_growth_rate, dispersion_curve, growth_factor,
    turing_setup, turing_experiment, bracket_report
)
from .convergence import (
    AXES, ConvergenceStudy, tau_convergence, space_convergence, parameter_convergence,
    convergence_study, restrict
)
from .scaling import ALGORITHMS, BenchRow, BenchReport, working_set_values, bench_rung, bench_ladder

__all__ = [
    'WaveSpeedConfig',
    'SpeedFitWarning',
    'LevelSetTrace',
    'SpeedMeasurement',
    'psi',
    'speed_residual',
    'theoretical_wave_speed',
    'theoretical_speed_curve',
    'rightmost_crossing',
    'track_level_set',
    'measure_wave_speed',
    'TuringConfig',
    'DispersionContext',
    'TuringThreshold',
    'TuringRunSettings',
    'TuringResult',
    'dispersion_value',
    'w_star_times_slope',
    'w_hat_minus_threshold',
    'maximise_w_hat',
    'static_turing_threshold',
    'real_growth_rate',
    'dispersion_curve',
    'growth_factor',
    'turing_setup',
    'turing_experiment',
    'bracket_report',
    'AXES',
    'ConvergenceStudy',
    'tau_convergence',
    'space_convergence',
    'parameter_convergence',
    'convergence_study',
    'restrict',
    'ALGORITHMS',
    'BenchRow',
    'BenchReport',
    'working_set_values',
    'bench_rung',
    'bench_ladder'
]
