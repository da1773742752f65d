from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Any

import numpy as np

from ..errors import DomainError, ValidationError


# Firing-rate constants
class FiringRateConfig:
    """Numerical guards for the logistic variants"""
    EXPONENT_CLAMP = 700.0  # exp(700) is still finite in double precision


def _logistic(z):
    """1/(1+exp(-z)) with the exponent argument clamped"""
    z = np.clip(z, -FiringRateConfig.EXPONENT_CLAMP, FiringRateConfig.EXPONENT_CLAMP)
    return 1.0 / (1.0 + np.exp(-z))


class FiringRate(ABC):
    """Monotone map from voltage to firing rate"""

    name: str = "firing_rate"

    @abstractmethod
    def __call__(self, v):
        """Evaluate S elementwise"""
        pass

    @abstractmethod
    def derivative(self, v):
        """Evaluate S' elementwise"""
        pass

    @abstractmethod
    def sup_abs(self) -> float:
        """sup |S| over the real line"""
        pass

    @abstractmethod
    def sup_abs_derivative(self) -> float:
        """sup |S'| over the real line"""
        pass

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        pass

    def slope_at_zero(self) -> float:
        """S'(0), the linear gain about the trivial state"""
        return float(self.derivative(0.0))


@dataclass(frozen=True)
class Sigmoid(FiringRate):
    """S(v) = 1/(1 + exp(-beta (v - theta)))"""
    beta: float
    theta: float
    name = "sigmoid"

    def __post_init__(self):
        if not self.beta > 0:
            raise ValidationError(f"beta must be positive, got {self.beta}")

    def __call__(self, v):
        return _logistic(self.beta * (np.asarray(v, dtype=float) - self.theta))

    def derivative(self, v):
        s = self(v)
        return self.beta * s * (1.0 - s)

    def sup_abs(self) -> float:
        return 1.0

    def sup_abs_derivative(self) -> float:
        return self.beta / 4.0

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name, 'beta': self.beta, 'theta': self.theta}


@dataclass(frozen=True)
class ShiftedSigmoid(FiringRate):
    """S(v) = 1/(1 + exp(-beta v)) - 1/2, so that S(0) = 0"""
    beta: float
    name = "shifted_sigmoid"

    def __post_init__(self):
        if not self.beta > 0:
            raise ValidationError(f"beta must be positive, got {self.beta}")

    def __call__(self, v):
        return _logistic(self.beta * np.asarray(v, dtype=float)) - 0.5

    def derivative(self, v):
        s = _logistic(self.beta * np.asarray(v, dtype=float))
        return self.beta * s * (1.0 - s)

    def sup_abs(self) -> float:
        return 0.5

    def sup_abs_derivative(self) -> float:
        return self.beta / 4.0

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name, 'beta': self.beta}


@dataclass(frozen=True)
class Heaviside(FiringRate):
    """S(v) = H(v - theta), with S(theta) = 1/2"""
    theta: float
    name = "heaviside"

    def __call__(self, v):
        v = np.asarray(v, dtype=float)
        return np.where(v > self.theta, 1.0, np.where(v < self.theta, 0.0, 0.5))

    def derivative(self, v):
        v = np.asarray(v, dtype=float)
        if np.any(v == self.theta):
            raise DomainError("slope undefined at threshold")
        return np.zeros_like(v)

    def slope_at_zero(self) -> float:
        raise DomainError("slope undefined at threshold")

    def sup_abs(self) -> float:
        return 1.0

    def sup_abs_derivative(self) -> float:
        return float('inf')

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name, 'theta': self.theta}


def eval_firing_rate(S: FiringRate, v):
    """Evaluate a firing rate; returns a float for scalar input"""
    out = S(v)
    return float(out) if np.ndim(out) == 0 else out


def firing_rate_slope_at_zero(S: FiringRate) -> float:
    """S'(0); raises DomainError for the Heaviside rate"""
    return S.slope_at_zero()


_FIRING_RATES = {
    Sigmoid.name: Sigmoid,
    ShiftedSigmoid.name: ShiftedSigmoid,
    Heaviside.name: Heaviside,
}


def create_firing_rate(config: Dict[str, Any]) -> FiringRate:
    """Factory: build a firing rate from ``{'type': ..., **params}``"""
    params = dict(config)
    kind = params.pop('type', None)
    if kind not in _FIRING_RATES:
        raise ValidationError(f"Unknown firing rate '{kind}'. Available: {sorted(_FIRING_RATES)}")
    try:
        return _FIRING_RATES[kind](**params)
    except TypeError as e:
        raise ValidationError(f"Bad parameters for firing rate '{kind}': {e}")
