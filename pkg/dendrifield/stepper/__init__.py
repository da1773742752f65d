"""
Stepper module: the first-order IMEX scheme in matrix form (fast path) and
in flat vector form (reference), with runtime boundedness and finiteness
checks and operation counters.
"""

from ..counters import StepCounters
from .base import FieldState, RunRecord, SimulationSetup, StepperConfig
from .inputs import (
    ForcingSpec, ZeroForcing, GaussianPulse,
    InitialCondition, ZeroInitial, ConstantValue, CosineInX, GaussianBump, UniformNoise,
    create_forcing, create_initial_condition
)
from .imex import Simulator, imex_step, a_priori_bound, bound_for_setup, run
from .reference import kronecker_system, run_reference

__all__ = [
    'StepCounters',
    'FieldState',
    'RunRecord',
    'SimulationSetup',
    'StepperConfig',
    'ForcingSpec',
    'ZeroForcing',
    'GaussianPulse',
    'InitialCondition',
    'ZeroInitial',
    'ConstantValue',
    'CosineInX',
    'GaussianBump',
    'UniformNoise',
    'create_forcing',
    'create_initial_condition',
    'Simulator',
    'imex_step',
    'a_priori_bound',
    'bound_for_setup',
    'run',
    'kronecker_system',
    'run_reference'
]
