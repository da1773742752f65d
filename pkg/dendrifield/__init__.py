"""
dendrifield: a neural field with dendritic processing.

A periodic somatic layer of cells, each with a passive dendritic cable,
coupled nonlocally from the soma to a dendritic contact point. The package
provides the IMEX time stepper (matrix and vector forms), FFT evaluation of
the nonlocal term, front-speed and Turing-threshold analysis, convergence
studies and a cost benchmark.
"""

from .errors import (
    DendrifieldError, ValidationError, ConfigError, DimensionMismatchError, DomainError,
    SingularFactorizationError, NumericalInstabilityError, BoundViolationError,
    NoRootError, NoCrossingError
)
from .grid import Grid, build_grid
from .model import PhysicalParams
from .stepper import SimulationSetup, RunRecord, run, run_reference
from .config import RunConfig, parse_config

__version__ = "0.1.0"

__all__ = [
    'DendrifieldError',
    'ValidationError',
    'ConfigError',
    'DimensionMismatchError',
    'DomainError',
    'SingularFactorizationError',
    'NumericalInstabilityError',
    'BoundViolationError',
    'NoRootError',
    'NoCrossingError',
    'Grid',
    'build_grid',
    'PhysicalParams',
    'SimulationSetup',
    'RunRecord',
    'run',
    'run_reference',
    'RunConfig',
    'parse_config'
]
