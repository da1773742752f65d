"""
Vector-form IMEX stepper on the flat n_x n_xi unknowns.

The system matrix (1 + tau gamma) I - tau nu (I_{n_x} kron D_xixi) is
factorised as one sparse matrix and the nonlocal term is the dense
quadruple-sum quadrature. Intended as a reference on small grids.
"""

import logging
from typing import Optional

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu

from ..counters import StepCounters
from ..coupling import build_plan, direct_quadrature_matrix
from ..errors import ValidationError
from ..linop import build_laplacian
from .base import FieldState, RunRecord, SimulationSetup
from .imex import _Recorder, _check_state, bound_for_setup

logger = logging.getLogger(__name__)


def kronecker_system(setup: SimulationSetup) -> sparse.csc_matrix:
    """(1 + tau gamma) I - tau nu (I_{n_x} kron D_xixi) in the ordering k = j n_xi + i"""
    grid, params, tau = setup.grid, setup.params, setup.tau
    D = build_laplacian(grid)
    D_sparse = sparse.diags([D.lower, D.main, D.upper], [-1, 0, 1], format='csc')
    n = grid.n_x * grid.n_xi
    system = ((1.0 + tau * params.gamma) * sparse.identity(n, format='csc')
              - tau * params.nu * sparse.kron(sparse.identity(grid.n_x, format='csc'), D_sparse, format='csc'))
    return system.tocsc()


def run_reference(setup: SimulationSetup, V0: Optional[np.ndarray] = None) -> RunRecord:
    """Same scheme as ``run`` through the flat formulation"""
    grid = setup.grid
    n = grid.n_x * grid.n_xi
    if n > setup.reference_cap:
        raise ValidationError(
            f"Grid {grid.n_xi} x {grid.n_x} exceeds the vector-form size cap of {setup.reference_cap} unknowns"
        )
    counters = StepCounters()
    plan = build_plan(grid, setup.weights, setup.kernel, setup.delta, setup.params.xi_0)
    lu = splu(kronecker_system(setup))
    quadrature = direct_quadrature_matrix(plan)
    counters.charge_init((grid.n_xi + grid.n_x) + grid.n_x + 2 * grid.n_xi
                         + (grid.n_xi + grid.n_x) + (2 * n - 1))

    values = setup.initial_values() if V0 is None else np.array(V0, dtype=float)
    state = FieldState(values=values, time=0.0, step=0)
    bound = bound_for_setup(setup, plan, values) if setup.check_bounds else None
    recorder = _Recorder(setup, counters)
    recorder.record(state)

    U = state.flatten().copy()
    S, tau = setup.firing_rate, setup.tau
    logger.info("Running %d vector-form steps on %d unknowns", setup.n_t, n)
    for step in range(1, setup.n_t + 1):
        G = setup.forcing.evaluate(grid, state.time)
        rhs = U + tau * (quadrature @ S(U))
        if G is not None:
            rhs += tau * G.ravel(order='F')
        U = lu.solve(rhs)
        counters.charge(2 * n)
        counters.charge(2 * n * n - grid.n_xi ** 2 * grid.n_x)
        counters.charge(5 * n - 4, solves=1)
        counters.end_step()
        state = FieldState(values=U.reshape(grid.shape, order='F'), time=state.time + tau, step=step)
        recorder.record(state)
        _check_state(state, recorder.last_max_abs, bound)
    record = recorder.finish(state, bound)
    record.metadata['algorithm'] = 'vector'
    return record
