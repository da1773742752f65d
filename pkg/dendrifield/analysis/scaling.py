"""
Cost benchmark of the matrix-form and vector-form steppers over a ladder of
grid sizes, driven by the operation counters with wall time alongside.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ValidationError
from ..grid import build_grid
from ..model import TruncatedGaussian
from ..stepper import SimulationSetup, run, run_reference

logger = logging.getLogger(__name__)

ALGORITHMS = ('fft', 'compact', 'vector')


def working_set_values(algorithm: str, n_x: int, n_xi: int) -> int:
    """Number of stored floating-point values during a step.

    The matrix form keeps V, N and two n_xi x n_x work arrays plus the LU
    factors and synaptic vectors; the vector form keeps seven flat vectors
    of length n_x n_xi.
    """
    if algorithm in ('fft', 'compact', 'matrix'):
        return 4 * n_x * n_xi + 7 * n_xi + 3 * n_x
    if algorithm in ('vector', 'direct'):
        return 7 * n_x * n_xi + 2 * n_xi + 2 * n_x
    raise ValidationError(f"Unknown algorithm '{algorithm}'. Available: {list(ALGORITHMS)}")


@dataclass
class BenchRow:
    algorithm: str
    n_x: int
    n_xi: int
    flops_init: int
    flops_per_step: int
    linear_solves: int
    ffts: int
    wall_time_per_step: float
    working_set: int

    def to_dict(self) -> Dict[str, float]:
        return dict(self.__dict__)


@dataclass
class BenchReport:
    rows: List[BenchRow] = field(default_factory=list)

    def for_algorithm(self, algorithm: str) -> List[BenchRow]:
        return [row for row in self.rows if row.algorithm == algorithm]

    def doubling_ratios(self, algorithm: str) -> np.ndarray:
        """Per-step counter ratio between consecutive rungs"""
        flops = np.array([row.flops_per_step for row in self.for_algorithm(algorithm)], dtype=float)
        return flops[1:] / flops[:-1]

    def scaling_exponent(self, algorithm: str, axis: str = 'n_x') -> float:
        """Slope of log(flops per step) against log(n_x) or log(n_x n_xi)"""
        rows = self.for_algorithm(algorithm)
        if len(rows) < 2:
            return float('nan')
        if axis == 'n_x':
            size = np.array([row.n_x for row in rows], dtype=float)
        else:
            size = np.array([row.n_x * row.n_xi for row in rows], dtype=float)
        flops = np.array([row.flops_per_step for row in rows], dtype=float)
        slope, _ = np.polyfit(np.log(size), np.log(flops), 1)
        return float(slope)

    def memory_ratio(self) -> float:
        """Vector-form over matrix-form working set at the largest common rung"""
        vector = self.for_algorithm('vector')
        if not vector:
            largest = max(self.rows, key=lambda row: row.n_x * row.n_xi)
            n_x, n_xi = largest.n_x, largest.n_xi
        else:
            n_x, n_xi = vector[-1].n_x, vector[-1].n_xi
        return working_set_values('vector', n_x, n_xi) / working_set_values('fft', n_x, n_xi)


def _timed(fn, setup: SimulationSetup):
    start = time.perf_counter()
    record = fn(setup)
    elapsed = time.perf_counter() - start
    return record, elapsed / max(1, setup.n_t)


def bench_rung(setup: SimulationSetup, algorithm: str) -> BenchRow:
    """Run ``setup.n_t`` steps with one algorithm and read the counters"""
    if algorithm == 'vector':
        record, wall = _timed(run_reference, setup)
    elif algorithm == 'compact':
        delta = TruncatedGaussian(eps=setup.params.eps)
        record, wall = _timed(run, setup.replace(evaluator='compact', delta=delta))
    elif algorithm == 'fft':
        record, wall = _timed(run, setup.replace(evaluator='fft'))
    else:
        raise ValidationError(f"Unknown algorithm '{algorithm}'. Available: {list(ALGORITHMS)}")
    counters = record.counters
    grid = setup.grid
    return BenchRow(algorithm=algorithm, n_x=grid.n_x, n_xi=grid.n_xi,
                    flops_init=counters.flops_init, flops_per_step=counters.flops_per_step,
                    linear_solves=counters.linear_solve_count, ffts=counters.fft_count,
                    wall_time_per_step=wall,
                    working_set=working_set_values(algorithm, grid.n_x, grid.n_xi))


def bench_ladder(setup: SimulationSetup, rungs: Sequence[Tuple[int, int]],
                 algorithms: Sequence[str] = ALGORITHMS, steps: int = 5,
                 vector_cap: Optional[int] = None) -> BenchReport:
    """Benchmark every algorithm on every rung (n_x, n_xi).

    Rungs larger than ``vector_cap`` unknowns are skipped for the vector
    form, whose quadrature matrix grows quadratically in n_x n_xi.
    """
    vector_cap = setup.reference_cap if vector_cap is None else vector_cap
    report = BenchReport()
    base = setup.replace(n_t=steps, snapshot_stride=max(1, steps), check_bounds=False,
                         reference_cap=vector_cap)
    for n_x, n_xi in rungs:
        rung = base.replace(grid=build_grid(n_x, n_xi, setup.grid.L_x, setup.grid.L_xi))
        for algorithm in algorithms:
            if algorithm == 'vector' and n_x * n_xi > vector_cap:
                logger.info("Skipping vector form on %d x %d (cap %d unknowns)", n_xi, n_x, vector_cap)
                continue
            row = bench_rung(rung, algorithm)
            logger.info("%s %d x %d: %d flops/step, %.3g s/step", algorithm, n_xi, n_x,
                        row.flops_per_step, row.wall_time_per_step)
            report.rows.append(row)
    return report
