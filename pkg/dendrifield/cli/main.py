"""
Command-line front end.

    dendrifield {simulate,wave-speed,turing,converge,bench} CONFIG [--output-dir DIR]

CONFIG is a YAML file or the name of a built-in config. Exit codes: 0 on
success, 1 for invalid input, 2 for runtime or numerical failures.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from ..analysis import (
    ConvergenceStudy, DispersionContext, TuringRunSettings,
    bench_ladder, bracket_report, convergence_study, dispersion_curve, measure_wave_speed,
    space_convergence, static_turing_threshold, theoretical_speed_curve, turing_experiment,
    w_hat_minus_threshold, working_set_values
)
from ..config import RunConfig, StepperSection, dump_config, parse_config, rung_pairs
from ..errors import DendrifieldError, ValidationError
from ..model import ExpDecay, Sigmoid
from ..stepper import run
from .writers import write_csv, write_snapshots, write_yaml

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


def _output_dir(config: RunConfig, override: Optional[str]) -> Path:
    directory = Path(override if override else config.output.directory)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def _write_provenance(directory: Path, config: RunConfig) -> Path:
    return write_yaml(directory / f"{config.output.stem}_config.yaml", dump_config(config))


def cmd_simulate(config: RunConfig, directory: Path) -> Dict[str, Any]:
    """Run the stepper; write snapshots, the max-|V| trace and the resolved config"""
    setup = config.to_setup()
    record = run(setup)
    stem = config.output.stem
    write_snapshots(directory, stem, record, setup)
    write_csv(directory / f"{stem}_trace.csv", {
        't': record.times,
        'max_abs_V': record.max_abs_trace,
        'max_abs_V_somatic': record.somatic_max_trace,
    })
    if record.history is not None:
        np.save(directory / f"{stem}_history.npy", record.history)
    _write_provenance(directory, config)
    summary = {
        'running_max': record.running_max,
        'bound': record.bound,
        'final_time': float(record.final.time),
        'counters': record.counters.to_dict(),
    }
    write_yaml(directory / f"{stem}_summary.yaml", summary)
    return summary


def _front_setup_checks(config: RunConfig):
    setup = config.to_setup()
    if not isinstance(setup.firing_rate, Sigmoid):
        raise config.error('model.firing_rate', "wave-speed runs need a sigmoid firing rate")
    if not isinstance(setup.kernel, ExpDecay):
        raise config.error('model.kernel', "wave-speed runs need the exp_decay kernel")
    return setup


def cmd_wave_speed(config: RunConfig, directory: Path) -> Dict[str, Any]:
    """Measured against theoretical front speed for each threshold"""
    setup = _front_setup_checks(config)
    params, kappa = setup.params, setup.kernel.kappa
    thetas = config.analysis.theta_values or [setup.firing_rate.theta]
    window = tuple(config.analysis.fit_window)
    relation = config.analysis.speed_relation
    stem = config.output.stem

    theory = theoretical_speed_curve(thetas, kappa, params.xi_0, params.gamma, params.nu,
                                     relation=relation)
    literal = theoretical_speed_curve(thetas, kappa, params.xi_0, params.gamma, params.nu,
                                      relation='literal')
    measured, residuals = [], []
    for k, theta in enumerate(thetas):
        record = run(setup.replace(firing_rate=Sigmoid(beta=setup.firing_rate.beta, theta=theta)))
        measurement = measure_wave_speed(record, theta, window)
        measured.append(measurement.speed)
        residuals.append(measurement.fit_residual)
        write_csv(directory / f"{stem}_front_{k}.csv",
                  {'t': measurement.trace.times, 'x_star': measurement.trace.positions})
        logger.info("theta = %g: measured %.6g, theory %.6g (%s), literal %.6g",
                    theta, measurement.speed, theory[k], relation, literal[k])

    write_csv(directory / f"{stem}_speeds.csv", {
        'theta': thetas, 'v_theory': theory, 'v_literal': literal, 'v_measured': measured,
        'fit_residual': residuals,
    })
    _write_provenance(directory, config)
    summary = {
        'speed_relation': relation,
        'theta': [float(t) for t in thetas],
        'v_theory': [float(v) for v in theory],
        'v_literal': [float(v) for v in literal],
        'v_measured': [float(v) for v in measured],
        'relative_error': [float(abs(m - t) / abs(t)) if t else None for m, t in zip(measured, theory)],
        'theory_decreasing': bool(np.all(np.diff(theory) < 0)),
        'measured_decreasing': bool(np.all(np.diff(measured) < 0)),
    }
    write_yaml(directory / f"{stem}_summary.yaml", summary)
    return summary


def cmd_turing(config: RunConfig, directory: Path) -> Dict[str, Any]:
    """Static threshold, dispersion curves and simulations around beta_crit"""
    setup = config.to_setup()
    defaults = StepperSection()
    if config.stepper.initial != defaults.initial:
        raise config.error('stepper.initial', "turing runs start from analysis.turing_amplitude * cos(p_* x); "
                                              "stepper.initial cannot be set")
    if config.stepper.forcing != defaults.forcing:
        raise config.error('stepper.forcing', "turing runs perturb the unforced trivial state")
    params, kernel = setup.params, setup.kernel
    threshold = static_turing_threshold(params, kernel)
    if not threshold.has_turing_mode:
        raise config.error('model.kernel', "kernel has no static Turing mode (w_hat peaks at p = 0)")
    analysis = config.analysis
    betas = analysis.beta_values or [f * threshold.beta_crit for f in analysis.beta_factors]
    settings = TuringRunSettings(n_x=setup.grid.n_x, n_xi=setup.grid.n_xi, tau=setup.tau,
                                 t_final=setup.tau * setup.n_t, amplitude=analysis.turing_amplitude,
                                 evaluator=setup.evaluator, delta=setup.delta)
    results = turing_experiment(params, kernel, betas, settings)
    stem = config.output.stem

    write_csv(directory / f"{stem}_growth.csv", {
        'beta': [r.beta for r in results],
        'growth_factor': [r.growth_factor for r in results],
        'predicted_unstable': [float(r.predicted_unstable) for r in results],
    })
    p = np.linspace(0.0, analysis.p_max, analysis.p_points)
    curves = {'p': p, 'w_hat': kernel.fourier(p)}
    for k, beta in enumerate(betas):
        slope0 = beta / 4.0
        curves[f'w_hat_minus_w_star_{k}'] = w_hat_minus_threshold(kernel, params, slope0, p)
        curves[f'lambda_{k}'] = dispersion_curve(DispersionContext(params, kernel, slope0), p)
    write_csv(directory / f"{stem}_dispersion.csv", curves)
    _write_provenance(directory, config)

    summary = {
        'threshold': threshold.to_dict(),
        'reference_bracket': bracket_report(threshold),
        'runs': [{'beta': r.beta, 'growth_factor': r.growth_factor,
                  'predicted_unstable': r.predicted_unstable, 'agrees': r.agrees} for r in results],
    }
    write_yaml(directory / f"{stem}_summary.yaml", summary)
    return summary


def _study_summary(study: ConvergenceStudy) -> Dict[str, Any]:
    summary = {
        'axis': study.axis,
        'levels': [float(v) for v in study.levels],
        'errors': [float(e) for e in study.errors],
        'monotone_decay': study.monotone_decay,
    }
    if len(study.differences):
        summary['differences'] = [float(d) for d in study.differences]
        summary['orders'] = [float(o) for o in study.orders]
        summary['observed_order'] = study.observed_order
    if study.reference is not None:
        summary['v_theory'] = study.reference
        summary['v_measured'] = [float(v) for v in study.measured]
    if study.tau_check is not None:
        summary['tau_check'] = study.tau_check
    return summary


def cmd_converge(config: RunConfig, directory: Path) -> Dict[str, Any]:
    """Refinement study along the configured axis"""
    setup = config.to_setup()
    converge = config.converge
    if converge.axis in ('eps', 'beta'):
        _front_setup_checks(config)
        study = convergence_study(setup, converge.axis, converge.values,
                                  tuple(config.analysis.fit_window), config.analysis.speed_relation)
    elif converge.axis == 'h' and converge.verify_tau:
        study = space_convergence(setup, converge.levels, verify_tau=True)
    else:
        study = convergence_study(setup, converge.axis, converge.levels)
    table = study.rows()
    write_csv(directory / f"{config.output.stem}_converge.csv", {
        'level': table[:, 0], 'error': table[:, 1], 'difference': table[:, 2], 'order': table[:, 3],
    })
    _write_provenance(directory, config)
    summary = _study_summary(study)
    write_yaml(directory / f"{config.output.stem}_summary.yaml", summary)
    return summary


def cmd_bench(config: RunConfig, directory: Path) -> Dict[str, Any]:
    """Counters and wall times over the grid ladders"""
    setup = config.to_setup()
    bench = config.bench
    matrix_forms = [a for a in bench.algorithms if a != 'vector']
    reports = []
    if matrix_forms:
        reports.append(bench_ladder(setup, rung_pairs(bench.rungs), matrix_forms,
                                    steps=bench.steps, vector_cap=bench.vector_cap))
    if 'vector' in bench.algorithms:
        reports.append(bench_ladder(setup, rung_pairs(bench.vector_rungs), ['vector'],
                                    steps=bench.steps, vector_cap=bench.vector_cap))
    rows = [row for report in reports for row in report.rows]
    columns = ['n_x', 'n_xi', 'flops_init', 'flops_per_step', 'linear_solves', 'ffts',
               'wall_time_per_step', 'working_set']
    for algorithm in bench.algorithms:
        selected = [row for row in rows if row.algorithm == algorithm]
        write_csv(directory / f"{config.output.stem}_bench_{algorithm}.csv",
                  {name: [getattr(row, name) for row in selected] for name in columns})
    _write_provenance(directory, config)

    summary: Dict[str, Any] = {'algorithms': {}}
    for report in reports:
        for algorithm in sorted({row.algorithm for row in report.rows}):
            axis = 'n_x n_xi' if algorithm == 'vector' else 'n_x'
            summary['algorithms'][algorithm] = {
                'doubling_ratios': [float(r) for r in report.doubling_ratios(algorithm)],
                'scaling_exponent': report.scaling_exponent(algorithm, axis),
                'exponent_axis': axis,
            }
    largest = max(rows, key=lambda row: row.n_x * row.n_xi)
    summary['memory_ratio'] = (working_set_values('vector', largest.n_x, largest.n_xi)
                               / working_set_values('fft', largest.n_x, largest.n_xi))
    write_yaml(directory / f"{config.output.stem}_summary.yaml", summary)
    return summary


COMMANDS = {
    'simulate': cmd_simulate,
    'wave-speed': cmd_wave_speed,
    'turing': cmd_turing,
    'converge': cmd_converge,
    'bench': cmd_bench,
}


def _build_cli() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='dendrifield',
                                     description="Neural field with dendritic processing")
    subparsers = parser.add_subparsers(dest='command', required=True)
    for name, handler in COMMANDS.items():
        sub = subparsers.add_parser(name, help=handler.__doc__)
        sub.add_argument('config', help="YAML config file or built-in config name")
        sub.add_argument('--output-dir', default=None, help="Override output.directory")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_cli().parse_args(argv)
    try:
        config = parse_config(args.config)
        logging.basicConfig(level=config.output.log_level.upper(),
                            format="%(asctime)s %(levelname)s %(name)s: %(message)s")
        directory = _output_dir(config, args.output_dir)
        COMMANDS[args.command](config, directory)
    except (ValidationError, FileNotFoundError) as e:
        print(f"dendrifield {args.command}: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except (DendrifieldError, FloatingPointError) as e:
        print(f"dendrifield {args.command}: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK
