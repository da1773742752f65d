import logging
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..grid import Grid, QuadratureWeights, wrapped_distance
from ..model import SomaticKernel, DendriticDelta, FiringRate

logger = logging.getLogger(__name__)


class UnderResolvedDeltaWarning(UserWarning):
    """The dendritic spacing is coarser than the delta profile width"""


@dataclass(frozen=True, eq=False)
class NonlocalPlan:
    """Precomputed vectors for evaluating the nonlocal term.

    ``w_samples[m]`` is w at the wrapped distance m h_x, the generator of the
    circulant matrix w(|x_j - x_j'|) = w_samples[(j - j') mod n_x], so that
    the somatic sum is a circular convolution diagonalised by the DFT.
    """
    grid: Grid
    weights: QuadratureWeights
    kernel: SomaticKernel
    delta: DendriticDelta
    xi_0: float
    w_samples: np.ndarray
    w_hat: np.ndarray
    alpha: np.ndarray
    alpha_prime: np.ndarray
    sigma: np.ndarray
    h_x: float
    support_in: np.ndarray
    support_out: np.ndarray

    @property
    def compact(self) -> bool:
        return self.delta.compact_support

    @property
    def is_trivial(self) -> bool:
        """N vanishes identically (no sampled support or zero kernel)"""
        return (len(self.support_in) == 0 or len(self.support_out) == 0
                or not np.any(self.w_samples))

    @property
    def out_weights(self) -> np.ndarray:
        """alpha' * sigma, the dendritic read-out weights"""
        return self.alpha_prime * self.sigma

    @cached_property
    def quadrature_matrix(self) -> np.ndarray:
        """Dense (n_xi n_x) x (n_xi n_x) quadrature matrix in flat ordering, built on first use.

        Entry (k, k') is W(x_j, xi_i, x_j', xi_i') rho_j' sigma_i' with
        k = j n_xi + i, so that N.ravel(order='F') = M @ S(V).ravel(order='F').
        """
        x = self.grid.x_nodes
        distances = wrapped_distance(self.grid, x[:, None], x[None, :])
        w_matrix = np.asarray(self.kernel(distances), dtype=float) * self.weights.rho[None, :]
        xi_block = np.outer(self.alpha, self.out_weights)
        matrix = np.kron(w_matrix, xi_block)
        matrix.flags.writeable = False
        return matrix

    def max_abs_W(self) -> float:
        """C_W: largest |alpha_i alpha'_i' w| over the grid"""
        return float(np.max(np.abs(self.alpha)) * np.max(np.abs(self.alpha_prime))
                     * np.max(np.abs(self.w_samples)))


def build_plan(grid: Grid, weights: QuadratureWeights, kernel: SomaticKernel,
               delta: DendriticDelta, xi_0: float) -> NonlocalPlan:
    """Sample w, alpha and alpha' on the grid and transform w once"""
    if not delta.is_resolved_by(grid.h_xi):
        message = (f"Dendritic spacing h_xi = {grid.h_xi:.4g} exceeds the delta width "
                   f"eps = {delta.eps:.4g}; the profile is under-resolved")
        logger.warning(message)
        warnings.warn(message, UnderResolvedDeltaWarning, stacklevel=2)

    offsets = grid.h_x * np.arange(grid.n_x)
    w_samples = np.asarray(kernel(wrapped_distance(grid, offsets, 0.0)), dtype=float)
    w_hat = np.fft.fft(w_samples)
    alpha = np.asarray(delta(grid.xi_nodes - xi_0), dtype=float)
    alpha_prime = np.asarray(delta(grid.xi_nodes), dtype=float)
    for array in (w_samples, w_hat, alpha, alpha_prime):
        array.flags.writeable = False

    support_in = np.flatnonzero(alpha)
    support_out = np.flatnonzero(alpha_prime)
    if delta.compact_support:
        logger.debug("Compact delta: |I| = %d, |I'| = %d of %d rows",
                     len(support_in), len(support_out), grid.n_xi)

    return NonlocalPlan(
        grid=grid, weights=weights, kernel=kernel, delta=delta, xi_0=float(xi_0),
        w_samples=w_samples, w_hat=w_hat, alpha=alpha, alpha_prime=alpha_prime,
        sigma=weights.sigma, h_x=grid.h_x, support_in=support_in, support_out=support_out,
    )


def lipschitz_constant(plan: NonlocalPlan, S: FiringRate) -> float:
    """zeta = n_x mu(Omega) max|W| sup|S'|"""
    return plan.grid.n_x * plan.grid.measure * plan.max_abs_W() * S.sup_abs_derivative()
