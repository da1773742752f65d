"""
Model module: physical parameters, firing rates, somatic kernels and
dendritic delta profiles, with the analytic transforms and derivatives the
stepper and the analysis layer need.
"""

from .params import PhysicalParams
from .firing import (
    FiringRate, Sigmoid, ShiftedSigmoid, Heaviside, FiringRateConfig,
    eval_firing_rate, firing_rate_slope_at_zero, create_firing_rate
)
from .kernels import SomaticKernel, ExpDecay, MexicanHat, ZeroKernel, eval_kernel, kernel_fourier, create_kernel
from .delta import DendriticDelta, Gaussian, TruncatedGaussian, eval_delta, create_delta

__all__ = [
    'PhysicalParams',
    'FiringRate',
    'Sigmoid',
    'ShiftedSigmoid',
    'Heaviside',
    'FiringRateConfig',
    'eval_firing_rate',
    'firing_rate_slope_at_zero',
    'create_firing_rate',
    'SomaticKernel',
    'ExpDecay',
    'MexicanHat',
    'ZeroKernel',
    'eval_kernel',
    'kernel_fourier',
    'create_kernel',
    'DendriticDelta',
    'Gaussian',
    'TruncatedGaussian',
    'eval_delta',
    'create_delta'
]
