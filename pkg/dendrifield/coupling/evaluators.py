"""
Three evaluations of the discretised nonlocal term N(V).

``eval_N_direct`` is the literal quadruple-sum quadrature and serves as the
oracle; ``eval_N_fft`` and ``eval_N_compact`` exploit the product structure
of W and the circulant somatic matrix.
"""

import logging
from typing import Optional

import numpy as np

from ..counters import StepCounters, fft_flops
from ..errors import DimensionMismatchError, ValidationError
from ..model import FiringRate
from .plan import NonlocalPlan

logger = logging.getLogger(__name__)


# Evaluator constants
class CouplingConfig:
    IMAG_RESIDUE_TOLERANCE = 1e-10  # relative size of the dropped imaginary part


def _check_shape(plan: NonlocalPlan, V: np.ndarray) -> np.ndarray:
    V = np.asarray(V, dtype=float)
    if V.shape != plan.grid.shape:
        raise DimensionMismatchError(f"Field has shape {V.shape}, grid expects {plan.grid.shape}")
    return V


def _circular_convolve(plan: NonlocalPlan, r: np.ndarray) -> np.ndarray:
    """(w * r)_j = sum_m w_m r_{(j - m) mod n_x}, via forward/inverse DFT"""
    product = np.fft.ifft(plan.w_hat * np.fft.fft(r))
    if __debug__:
        scale = np.max(np.abs(product.real)) + np.finfo(float).tiny
        residue = np.max(np.abs(product.imag))
        assert not residue > CouplingConfig.IMAG_RESIDUE_TOLERANCE * max(scale, 1.0), (
            f"Inverse DFT left an imaginary residue of {residue:.3g}"
        )
    return product.real


def direct_quadrature_matrix(plan: NonlocalPlan) -> np.ndarray:
    """Dense quadrature matrix of the plan, shared by every direct evaluation"""
    return plan.quadrature_matrix


def eval_N_direct(plan: NonlocalPlan, S: FiringRate, V: np.ndarray,
                  counters: Optional[StepCounters] = None) -> np.ndarray:
    """Quadruple-sum quadrature, O(n_x^2 n_xi^2)"""
    V = _check_shape(plan, V)
    M = direct_quadrature_matrix(plan)
    rates = S(V).ravel(order='F')
    N = (M @ rates).reshape(plan.grid.shape, order='F')
    if counters is not None:
        n = plan.grid.n_x * plan.grid.n_xi
        counters.charge(2 * n * n - plan.grid.n_xi ** 2 * plan.grid.n_x)
    return N


def eval_N_fft(plan: NonlocalPlan, S: FiringRate, V: np.ndarray,
               counters: Optional[StepCounters] = None) -> np.ndarray:
    """N = alpha h_x IDFT[w_hat . DFT[(alpha' sigma)^T S(V)]]"""
    V = _check_shape(plan, V)
    n_xi, n_x = plan.grid.shape
    r = plan.out_weights @ S(V)
    convolved = _circular_convolve(plan, r)
    N = np.outer(plan.alpha, plan.h_x * convolved)
    if counters is not None:
        counters.charge(3 * n_xi * n_x + n_xi - n_x + fft_flops(n_x), ffts=1)
        counters.charge(n_xi * n_x + 2 * n_x + fft_flops(n_x), ffts=1)
    return N


def eval_N_compact(plan: NonlocalPlan, S: FiringRate, V: np.ndarray,
                   counters: Optional[StepCounters] = None) -> np.ndarray:
    """Restrict the read-out sum to I' and the written rows to I"""
    if not plan.compact:
        raise ValidationError(
            f"Compact evaluation needs a compactly supported delta, plan uses '{plan.delta.name}'"
        )
    V = _check_shape(plan, V)
    n_x = plan.grid.n_x
    N = np.zeros(plan.grid.shape)
    if plan.is_trivial:
        return N
    rows_out = plan.support_out
    rows_in = plan.support_in
    r = plan.out_weights[rows_out] @ S(V[rows_out, :])
    convolved = _circular_convolve(plan, r)
    N[rows_in, :] = np.outer(plan.alpha[rows_in], plan.h_x * convolved)
    if counters is not None:
        counters.charge((2 * len(rows_in) + len(rows_out)) * n_x + 2 * fft_flops(n_x), ffts=2)
    return N


EVALUATORS = {
    'fft': eval_N_fft,
    'direct': eval_N_direct,
    'compact': eval_N_compact,
}


def get_evaluator(name: str):
    if name not in EVALUATORS:
        raise ValidationError(f"Unknown evaluator '{name}'. Available: {sorted(EVALUATORS)}")
    return EVALUATORS[name]
