from dataclasses import dataclass, field, replace
from typing import Optional, Dict, Any

import numpy as np

from ..counters import StepCounters
from ..errors import ValidationError
from ..grid import Grid, QuadratureWeights, build_weights
from ..model import PhysicalParams, FiringRate, SomaticKernel, DendriticDelta, Gaussian
from .inputs import ForcingSpec, InitialCondition, ZeroForcing, GaussianBump


# Stepper constants
class StepperConfig:
    """Defaults for runs"""
    DEFAULT_EVALUATOR = 'fft'
    REFERENCE_SIZE_CAP = 4096  # n_x * n_xi above which the vector form is refused
    BOUND_RELATIVE_SLACK = 1e-12


@dataclass
class FieldState:
    """Voltage matrix V[i, j] ~ V(x_j, xi_i, t) at one time level"""
    values: np.ndarray
    time: float = 0.0
    step: int = 0

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def flatten(self) -> np.ndarray:
        """Vector form, k = j n_xi + i"""
        return self.values.ravel(order='F')


@dataclass(frozen=True)
class SimulationSetup:
    """Everything a run needs; built from a RunConfig or by hand"""
    grid: Grid
    params: PhysicalParams
    firing_rate: FiringRate
    kernel: SomaticKernel
    tau: float
    n_t: int
    delta: Optional[DendriticDelta] = None
    forcing: ForcingSpec = field(default_factory=ZeroForcing)
    initial: InitialCondition = field(default_factory=GaussianBump)
    snapshot_stride: int = 1
    evaluator: str = StepperConfig.DEFAULT_EVALUATOR
    store_full: bool = False
    check_bounds: bool = True
    reference_cap: int = StepperConfig.REFERENCE_SIZE_CAP

    def __post_init__(self):
        if not self.tau > 0:
            raise ValidationError(f"tau must be positive, got {self.tau}")
        if int(self.n_t) != self.n_t or self.n_t < 0:
            raise ValidationError(f"n_t must be a non-negative integer, got {self.n_t}")
        if int(self.snapshot_stride) != self.snapshot_stride or self.snapshot_stride < 1:
            raise ValidationError(f"snapshot_stride must be >= 1, got {self.snapshot_stride}")
        n = self.grid.n_x * self.grid.n_xi
        if self.evaluator == 'direct' and n > self.reference_cap:
            raise ValidationError(
                f"evaluator 'direct' stores a dense {n} x {n} matrix; the grid exceeds "
                f"reference_cap = {self.reference_cap} unknowns"
            )
        if self.delta is None:
            object.__setattr__(self, 'delta', Gaussian(eps=self.params.eps))

    @property
    def weights(self) -> QuadratureWeights:
        return build_weights(self.grid)

    def initial_values(self) -> np.ndarray:
        return np.asarray(self.initial.evaluate(self.grid), dtype=float)

    def replace(self, **changes) -> 'SimulationSetup':
        return replace(self, **changes)


@dataclass
class RunRecord:
    """Output of a run.

    ``snapshots`` holds every ``snapshot_stride``-th time level (including
    t = 0); ``somatic_rows`` the xi ~ 0 row of each snapshot; the traces
    one value per time level.
    """
    snapshot_times: np.ndarray
    snapshots: np.ndarray
    somatic_rows: np.ndarray
    somatic_index: int
    times: np.ndarray
    max_abs_trace: np.ndarray
    somatic_max_trace: np.ndarray
    final: FieldState
    counters: StepCounters
    x_nodes: Optional[np.ndarray] = None
    xi_nodes: Optional[np.ndarray] = None
    bound: Optional[float] = None
    history: Optional[np.ndarray] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def running_max(self) -> float:
        return float(np.max(self.max_abs_trace))
