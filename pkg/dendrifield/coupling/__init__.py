"""
Nonlocal coupling module.

Precomputes the synaptic vectors once (``build_plan``) and evaluates the
discretised integral term by direct quadrature, FFT circular convolution or
the compact-support fast path.
"""

from .plan import NonlocalPlan, UnderResolvedDeltaWarning, build_plan, lipschitz_constant
from .evaluators import (
    CouplingConfig, EVALUATORS, direct_quadrature_matrix,
    eval_N_direct, eval_N_fft, eval_N_compact, get_evaluator
)

__all__ = [
    'NonlocalPlan',
    'UnderResolvedDeltaWarning',
    'build_plan',
    'lipschitz_constant',
    'CouplingConfig',
    'EVALUATORS',
    'direct_quadrature_matrix',
    'eval_N_direct',
    'eval_N_fft',
    'eval_N_compact',
    'get_evaluator'
]
