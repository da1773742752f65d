"""
Operation counters for the two time-stepping algorithms.

Charges follow the per-line operation counts of the matrix-form and
vector-form steppers; function evaluations cost one flop and an FFT of
length n is modelled as 5 n log2 n flops.
"""

from dataclasses import dataclass, asdict
from typing import Dict, Any

import numpy as np


# Flop model constants
class FlopModel:
    FFT_FLOPS_PER_POINT_LOG = 5  # Cooley-Tukey estimate


def fft_flops(n: int) -> int:
    return int(round(FlopModel.FFT_FLOPS_PER_POINT_LOG * n * np.log2(max(n, 2))))


@dataclass
class StepCounters:
    """Counters accumulated over one run; all monotone non-decreasing"""
    flops_init: int = 0
    flops_per_step: int = 0
    flops_total: int = 0
    steps: int = 0
    linear_solve_count: int = 0
    fft_count: int = 0
    _current: int = 0

    def charge(self, flops: int, ffts: int = 0, solves: int = 0) -> None:
        """Add work to the step in progress"""
        self._current += int(flops)
        self.fft_count += ffts
        self.linear_solve_count += solves

    def charge_init(self, flops: int) -> None:
        self.flops_init += int(flops)

    def end_step(self) -> None:
        """Close the step in progress"""
        self.flops_per_step = max(self.flops_per_step, self._current)
        self.flops_total += self._current
        self.steps += 1
        self._current = 0

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data.pop('_current')
        return data
