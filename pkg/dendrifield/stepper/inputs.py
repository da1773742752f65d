from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Any, Optional

import numpy as np

from ..errors import ValidationError
from ..grid import Grid, wrapped_distance


def _gaussian_profile(grid: Grid, center_x: float, center_xi: float,
                      width_x: float, width_xi: float) -> np.ndarray:
    """exp(-(dx/width_x)^2 - (dxi/width_xi)^2) with dx measured on the circle"""
    dx = wrapped_distance(grid, grid.x_nodes, center_x)
    dxi = grid.xi_nodes - center_xi
    return np.exp(-(dxi[:, None] / width_xi) ** 2 - (dx[None, :] / width_x) ** 2)


def _check_widths(width_x: float, width_xi: float) -> None:
    if not width_x > 0 or not width_xi > 0:
        raise ValidationError(f"widths must be positive, got {width_x}, {width_xi}")


# External input

class ForcingSpec(ABC):
    """External input G(x, xi, t), evaluated on the grid at each step"""

    name: str = "forcing"

    @abstractmethod
    def evaluate(self, grid: Grid, t: float) -> Optional[np.ndarray]:
        """G on the grid at time t; None stands for an all-zero input"""
        pass

    @abstractmethod
    def bound(self) -> float:
        """C_G with |G| <= C_G everywhere"""
        pass

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        pass


@dataclass(frozen=True)
class ZeroForcing(ForcingSpec):
    name = "zero"

    def evaluate(self, grid: Grid, t: float) -> Optional[np.ndarray]:
        return None

    def bound(self) -> float:
        return 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name}


@dataclass(frozen=True)
class GaussianPulse(ForcingSpec):
    """Gaussian input switched on for t_on <= t < t_off"""
    amplitude: float
    center_x: float = 0.0
    center_xi: float = 0.0
    width_x: float = 1.0
    width_xi: float = 1.0
    t_on: float = 0.0
    t_off: float = float('inf')
    name = "gaussian_pulse"

    def __post_init__(self):
        _check_widths(self.width_x, self.width_xi)
        if self.t_off < self.t_on:
            raise ValidationError(f"t_off ({self.t_off}) precedes t_on ({self.t_on})")

    def evaluate(self, grid: Grid, t: float) -> Optional[np.ndarray]:
        if not self.t_on <= t < self.t_off:
            return None
        return self.amplitude * _gaussian_profile(grid, self.center_x, self.center_xi,
                                                  self.width_x, self.width_xi)

    def bound(self) -> float:
        return abs(self.amplitude)

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name, 'amplitude': self.amplitude, 'center_x': self.center_x,
                'center_xi': self.center_xi, 'width_x': self.width_x, 'width_xi': self.width_xi,
                't_on': self.t_on, 't_off': self.t_off}


# Initial conditions

class InitialCondition(ABC):
    name: str = "initial_condition"

    @abstractmethod
    def evaluate(self, grid: Grid) -> np.ndarray:
        pass

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        pass


@dataclass(frozen=True)
class ZeroInitial(InitialCondition):
    name = "zero"

    def evaluate(self, grid: Grid) -> np.ndarray:
        return np.zeros(grid.shape)

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name}


@dataclass(frozen=True)
class ConstantValue(InitialCondition):
    value: float
    name = "constant"

    def evaluate(self, grid: Grid) -> np.ndarray:
        return np.full(grid.shape, float(self.value))

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name, 'value': self.value}


@dataclass(frozen=True)
class CosineInX(InitialCondition):
    """V0 = amplitude cos(wavenumber x), uniform along the cable"""
    amplitude: float
    wavenumber: float
    name = "cosine_x"

    def evaluate(self, grid: Grid) -> np.ndarray:
        row = self.amplitude * np.cos(self.wavenumber * grid.x_nodes)
        return np.tile(row, (grid.n_xi, 1))

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name, 'amplitude': self.amplitude, 'wavenumber': self.wavenumber}


@dataclass(frozen=True)
class GaussianBump(InitialCondition):
    """Localised ignition; the default for front experiments sits at (0, xi_0)"""
    amplitude: float = 1.0
    center_x: float = 0.0
    center_xi: float = 1.0
    width_x: float = 2.0
    width_xi: float = 1.0
    name = "gaussian_bump"

    def __post_init__(self):
        _check_widths(self.width_x, self.width_xi)

    def evaluate(self, grid: Grid) -> np.ndarray:
        return self.amplitude * _gaussian_profile(grid, self.center_x, self.center_xi,
                                                  self.width_x, self.width_xi)

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name, 'amplitude': self.amplitude, 'center_x': self.center_x,
                'center_xi': self.center_xi, 'width_x': self.width_x, 'width_xi': self.width_xi}


@dataclass(frozen=True)
class UniformNoise(InitialCondition):
    """V0 drawn uniformly from [-amplitude, amplitude]; reproducible through the seed"""
    amplitude: float
    seed: int = 0
    name = "uniform_noise"

    def evaluate(self, grid: Grid) -> np.ndarray:
        rng = np.random.default_rng(self.seed)
        return rng.uniform(-self.amplitude, self.amplitude, size=grid.shape)

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name, 'amplitude': self.amplitude, 'seed': self.seed}


_FORCINGS = {ZeroForcing.name: ZeroForcing, GaussianPulse.name: GaussianPulse}
_INITIALS = {
    ZeroInitial.name: ZeroInitial,
    ConstantValue.name: ConstantValue,
    CosineInX.name: CosineInX,
    GaussianBump.name: GaussianBump,
    UniformNoise.name: UniformNoise,
}


def _create(registry: Dict[str, type], config: Optional[Dict[str, Any]], what: str, default: str):
    params = dict(config or {})
    kind = params.pop('type', default)
    if kind not in registry:
        raise ValidationError(f"Unknown {what} '{kind}'. Available: {sorted(registry)}")
    try:
        return registry[kind](**params)
    except TypeError as e:
        raise ValidationError(f"Bad parameters for {what} '{kind}': {e}")


def create_forcing(config: Optional[Dict[str, Any]]) -> ForcingSpec:
    return _create(_FORCINGS, config, "forcing", ZeroForcing.name)


def create_initial_condition(config: Optional[Dict[str, Any]]) -> InitialCondition:
    return _create(_INITIALS, config, "initial condition", GaussianBump.name)
