"""
Run configuration: one frozen dataclass per section of a config file.

Sections map one-to-one onto the keys of a YAML mapping. ``to_dict`` gives
the provenance form, which loads back to an equal ``RunConfig``.
"""

import re
from contextlib import contextmanager
from dataclasses import dataclass, field, fields
from typing import Any, Dict, List, Optional, Tuple

from ..analysis.waves import WaveSpeedConfig
from ..errors import ConfigError, DendrifieldError
from ..grid import build_grid
from ..model import PhysicalParams, create_delta, create_firing_rate, create_kernel
from ..stepper import (
    SimulationSetup, StepperConfig, UniformNoise, create_forcing, create_initial_condition
)

EXPERIMENTS = ('simulate', 'wave-speed', 'turing', 'converge', 'bench')
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')


@dataclass(frozen=True)
class GridSection:
    n_x: int = 256
    n_xi: int = 257
    L_x: float = 75.0
    L_xi: float = 3.0


@dataclass(frozen=True)
class ModelSection:
    gamma: float = 1.0
    nu: float = 0.4
    xi_0: float = 1.0
    eps: float = 0.05
    firing_rate: Dict[str, Any] = field(default_factory=lambda: {'type': 'sigmoid', 'beta': 100.0, 'theta': 0.01})
    kernel: Dict[str, Any] = field(default_factory=lambda: {'type': 'exp_decay', 'kappa': 3.0})
    delta: Optional[Dict[str, Any]] = None


@dataclass(frozen=True)
class StepperSection:
    tau: float = 0.02
    n_t: int = 500
    evaluator: str = StepperConfig.DEFAULT_EVALUATOR
    snapshot_stride: int = 10
    store_full: bool = False
    check_bounds: bool = True
    reference_cap: int = StepperConfig.REFERENCE_SIZE_CAP
    initial: Dict[str, Any] = field(default_factory=lambda: {'type': 'gaussian_bump'})
    forcing: Dict[str, Any] = field(default_factory=lambda: {'type': 'zero'})


@dataclass(frozen=True)
class AnalysisSection:
    """Wave-speed sweep and Turing settings"""
    theta_values: List[float] = field(default_factory=list)
    fit_window: List[float] = field(default_factory=lambda: [1.0, 4.0])
    speed_relation: str = WaveSpeedConfig.COMPARISON_RELATION
    beta_values: List[float] = field(default_factory=list)
    beta_factors: List[float] = field(default_factory=lambda: [0.9, 1.1])
    turing_amplitude: float = 0.01
    p_max: float = 2.0
    p_points: int = 201


@dataclass(frozen=True)
class ConvergeSection:
    axis: str = 'tau'
    levels: int = 4
    values: List[float] = field(default_factory=list)
    verify_tau: bool = False


@dataclass(frozen=True)
class BenchSection:
    rungs: List[List[int]] = field(default_factory=lambda: [[64, 33], [128, 33], [256, 33], [512, 33]])
    vector_rungs: List[List[int]] = field(default_factory=lambda: [[8, 8], [16, 16], [32, 32]])
    algorithms: List[str] = field(default_factory=lambda: ['fft', 'compact', 'vector'])
    steps: int = 5
    vector_cap: int = StepperConfig.REFERENCE_SIZE_CAP


@dataclass(frozen=True)
class OutputSection:
    directory: str = 'output'
    stem: str = 'run'
    log_level: str = 'INFO'


SECTIONS = {
    'grid': GridSection,
    'model': ModelSection,
    'stepper': StepperSection,
    'analysis': AnalysisSection,
    'converge': ConvergeSection,
    'bench': BenchSection,
    'output': OutputSection,
}


def _section_to_dict(section) -> Dict[str, Any]:
    return {f.name: getattr(section, f.name) for f in fields(section)}


@dataclass(frozen=True)
class RunConfig:
    """Everything one experiment needs, validated before any computation"""
    experiment: str = 'simulate'
    seed: int = 0
    grid: GridSection = field(default_factory=GridSection)
    model: ModelSection = field(default_factory=ModelSection)
    stepper: StepperSection = field(default_factory=StepperSection)
    analysis: AnalysisSection = field(default_factory=AnalysisSection)
    converge: ConvergeSection = field(default_factory=ConvergeSection)
    bench: BenchSection = field(default_factory=BenchSection)
    output: OutputSection = field(default_factory=OutputSection)
    lines: Dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'experiment': self.experiment, 'seed': self.seed}
        for name in SECTIONS:
            data[name] = _section_to_dict(getattr(self, name))
        return data

    def error(self, key: str, message: str) -> ConfigError:
        """ConfigError naming ``key`` and its line in the source file, when known"""
        return ConfigError(message, key=key, line=self.lines.get(key))

    def params(self) -> PhysicalParams:
        m = self.model
        with self._wrap('model'):
            return PhysicalParams(gamma=m.gamma, nu=m.nu, xi_0=m.xi_0, eps=m.eps)

    def to_setup(self) -> SimulationSetup:
        """Build the simulation objects; constructor errors become ConfigErrors"""
        with self._wrap('grid'):
            grid = build_grid(self.grid.n_x, self.grid.n_xi, self.grid.L_x, self.grid.L_xi)
        params = self.params()
        with self._wrap('model.firing_rate'):
            firing_rate = create_firing_rate(self.model.firing_rate)
        with self._wrap('model.kernel'):
            kernel = create_kernel(self.model.kernel)
        with self._wrap('model.delta'):
            delta = create_delta(self.model.delta, params.eps)
        with self._wrap('stepper.initial'):
            initial_config = dict(self.stepper.initial)
            if initial_config.get('type') == UniformNoise.name:
                initial_config.setdefault('seed', self.seed)
            initial = create_initial_condition(initial_config)
        with self._wrap('stepper.forcing'):
            forcing = create_forcing(self.stepper.forcing)
        s = self.stepper
        with self._wrap('stepper'):
            return SimulationSetup(
                grid=grid, params=params, firing_rate=firing_rate, kernel=kernel,
                tau=s.tau, n_t=s.n_t, delta=delta, forcing=forcing, initial=initial,
                snapshot_stride=s.snapshot_stride, evaluator=s.evaluator, store_full=s.store_full,
                check_bounds=s.check_bounds, reference_cap=s.reference_cap,
            )

    def validate(self) -> 'RunConfig':
        """Check enumerations and cross-section constraints, then build the setup once"""
        if self.experiment not in EXPERIMENTS:
            raise self.error('experiment', f"must be one of {list(EXPERIMENTS)}, got '{self.experiment}'")
        if self.output.log_level.upper() not in LOG_LEVELS:
            raise self.error('output.log_level', f"must be one of {list(LOG_LEVELS)}")
        if len(self.analysis.fit_window) != 2 or not self.analysis.fit_window[1] > self.analysis.fit_window[0]:
            raise self.error('analysis.fit_window', "must be [t_start, t_end] with t_end > t_start")
        if self.analysis.speed_relation not in WaveSpeedConfig.SPEED_RELATIONS:
            raise self.error('analysis.speed_relation',
                             f"must be one of {list(WaveSpeedConfig.SPEED_RELATIONS)}, got '{self.analysis.speed_relation}'")
        if self.converge.axis not in ('tau', 'h', 'eps', 'beta'):
            raise self.error('converge.axis', f"must be one of tau, h, eps, beta, got '{self.converge.axis}'")
        if self.converge.levels < 3:
            raise self.error('converge.levels', f"must be >= 3, got {self.converge.levels}")
        for key in ('rungs', 'vector_rungs'):
            for rung in getattr(self.bench, key):
                if len(rung) != 2:
                    raise self.error(f'bench.{key}', f"each rung must be [n_x, n_xi], got {rung}")
        for algorithm in self.bench.algorithms:
            if algorithm not in ('fft', 'compact', 'vector'):
                raise self.error('bench.algorithms', f"unknown algorithm '{algorithm}'")
        self.to_setup()
        return self

    @contextmanager
    def _wrap(self, key: str):
        """Re-raise constructor errors as ConfigErrors naming the most specific key"""
        try:
            yield
        except ConfigError:
            raise
        except (DendrifieldError, ValueError, TypeError) as e:
            raise self.error(_narrow_key(key, str(e)), str(e)) from e


def _narrow_key(key: str, message: str) -> str:
    """Section key refined to the field named at the start of ``message``"""
    section = SECTIONS.get(key)
    if section is None:
        return key
    for f in fields(section):
        if re.match(rf"{f.name}\b", message):
            return f"{key}.{f.name}"
    return key


def rung_pairs(rungs: List[List[int]]) -> List[Tuple[int, int]]:
    return [(int(n_x), int(n_xi)) for n_x, n_xi in rungs]
