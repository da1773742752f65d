"""
First-order IMEX stepper in matrix form.

Each step solves A V^n = V^{n-1} + tau N(V^{n-1}) + tau G^{n-1} with the LU
factors of the small n_xi x n_xi matrix A computed once at initialisation.
"""

import logging
from typing import Optional, Callable

import numpy as np

from ..counters import StepCounters
from ..coupling import NonlocalPlan, build_plan, get_evaluator, eval_N_fft
from ..errors import BoundViolationError, NumericalInstabilityError
from ..grid import Grid
from ..linop import TridiagFactorization, build_laplacian, build_A, factorize, solve_in_place
from ..model import FiringRate, PhysicalParams
from .base import FieldState, RunRecord, SimulationSetup, StepperConfig

logger = logging.getLogger(__name__)


def imex_step(F: TridiagFactorization, plan: NonlocalPlan, S: FiringRate,
              G_prev: Optional[np.ndarray], V_prev: FieldState, tau: float,
              evaluator: Callable = eval_N_fft,
              counters: Optional[StepCounters] = None) -> FieldState:
    """Advance one step; G_prev is G at t_{n-1} (None for zero input)"""
    rhs = V_prev.values + tau * evaluator(plan, S, V_prev.values, counters=counters)
    if G_prev is not None:
        rhs += tau * G_prev
    V_next = solve_in_place(F, rhs, out=rhs)
    if counters is not None:
        n_xi, n_x = V_next.shape
        counters.charge(2 * n_xi * n_x)
        counters.charge(5 * n_xi * n_x - 4 * n_x, solves=n_x)
    return FieldState(values=V_next, time=V_prev.time + tau, step=V_prev.step + 1)


def a_priori_bound(V0_norm: float, params: PhysicalParams, grid: Grid,
                 C_W: float, C_S: float, C_G: float) -> float:
    """|V^0| + n_x (mu(Omega) C_W C_S + C_G) / gamma"""
    return V0_norm + grid.n_x * (grid.measure * C_W * C_S + C_G) / params.gamma


def bound_for_setup(setup: SimulationSetup, plan: NonlocalPlan, V0: np.ndarray) -> Optional[float]:
    """Boundedness estimate for a run, or None for an unbounded firing rate"""
    C_S = setup.firing_rate.sup_abs()
    if not np.isfinite(C_S):
        return None
    return float(a_priori_bound(float(np.max(np.abs(V0))), setup.params, setup.grid,
                              plan.max_abs_W(), C_S, setup.forcing.bound()))


class Simulator:
    """Matrix-form IMEX time stepper.

    Construction performs the initialisation phase (synaptic vectors, DFT of
    w, quadrature weights, LU of A); ``run`` performs the time steps.
    """

    def __init__(self, setup: SimulationSetup):
        self.setup = setup
        self.counters = StepCounters()
        self.evaluator = get_evaluator(setup.evaluator)
        self._init_operators()

    def _init_operators(self):
        setup = self.setup
        grid = setup.grid
        params = setup.params
        self.weights = setup.weights
        self.plan = build_plan(grid, self.weights, setup.kernel, setup.delta, params.xi_0)
        self.A = build_A(build_laplacian(grid), params.gamma, params.nu, setup.tau)
        self.factorization = factorize(self.A)
        n_x, n_xi = grid.n_x, grid.n_xi
        self.counters.charge_init((n_xi + n_x) + 2 * n_x + 2 * n_xi + n_xi + (2 * n_xi - 1))
        logger.debug("Initialised %d x %d grid, tau = %g, evaluator = %s",
                     n_xi, n_x, setup.tau, setup.evaluator)

    def step(self, state: FieldState) -> FieldState:
        G = self.setup.forcing.evaluate(self.setup.grid, state.time)
        return imex_step(self.factorization, self.plan, self.setup.firing_rate, G, state,
                         self.setup.tau, evaluator=self.evaluator, counters=self.counters)

    def run(self, V0: Optional[np.ndarray] = None) -> RunRecord:
        setup = self.setup
        values = setup.initial_values() if V0 is None else np.array(V0, dtype=float)
        state = FieldState(values=values, time=0.0, step=0)
        bound = bound_for_setup(setup, self.plan, values) if setup.check_bounds else None

        recorder = _Recorder(setup, self.counters)
        recorder.record(state)
        logger.info("Running %d steps on a %d x %d grid (%s evaluator)",
                    setup.n_t, setup.grid.n_xi, setup.grid.n_x, setup.evaluator)
        for _ in range(setup.n_t):
            state = self.step(state)
            self.counters.end_step()
            recorder.record(state)
            _check_state(state, recorder.last_max_abs, bound)
        return recorder.finish(state, bound)


class _Recorder:
    """Collects snapshots and traces during a run"""

    def __init__(self, setup: SimulationSetup, counters: StepCounters):
        self.setup = setup
        self.counters = counters
        self.somatic_index = setup.grid.somatic_index()
        self.times = []
        self.max_abs = []
        self.somatic_max = []
        self.snapshot_times = []
        self.snapshots = []
        self.history = [] if setup.store_full else None
        self.last_max_abs = 0.0

    def record(self, state: FieldState):
        values = state.values
        self.last_max_abs = float(np.max(np.abs(values)))
        self.times.append(state.time)
        self.max_abs.append(self.last_max_abs)
        self.somatic_max.append(float(np.max(np.abs(values[self.somatic_index]))))
        if state.step % self.setup.snapshot_stride == 0:
            self.snapshot_times.append(state.time)
            self.snapshots.append(values.copy())
        if self.history is not None:
            self.history.append(values.copy())

    def finish(self, state: FieldState, bound: Optional[float]) -> RunRecord:
        snapshots = np.array(self.snapshots)
        return RunRecord(
            snapshot_times=np.array(self.snapshot_times),
            snapshots=snapshots,
            somatic_rows=snapshots[:, self.somatic_index, :].copy(),
            somatic_index=self.somatic_index,
            times=np.array(self.times),
            max_abs_trace=np.array(self.max_abs),
            somatic_max_trace=np.array(self.somatic_max),
            final=state,
            counters=self.counters,
            x_nodes=self.setup.grid.x_nodes,
            xi_nodes=self.setup.grid.xi_nodes,
            bound=bound,
            history=None if self.history is None else np.array(self.history),
            metadata={'evaluator': self.setup.evaluator, 'tau': self.setup.tau,
                      'n_t': self.setup.n_t, 'snapshot_stride': self.setup.snapshot_stride},
        )


def _check_state(state: FieldState, max_abs: float, bound: Optional[float]):
    if not np.isfinite(max_abs):
        raise NumericalInstabilityError(state.step, state.time)
    if bound is not None and max_abs > bound * (1.0 + StepperConfig.BOUND_RELATIVE_SLACK):
        raise BoundViolationError(
            f"|V| = {max_abs:.6g} exceeds the boundedness estimate {bound:.6g} at step {state.step}"
        )


def run(setup: SimulationSetup, V0: Optional[np.ndarray] = None) -> RunRecord:
    """Convenience function: initialise and run the matrix-form stepper"""
    return Simulator(setup).run(V0)
