from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Any, Optional

import numpy as np

from ..errors import ValidationError


class DendriticDelta(ABC):
    """Mollified Dirac delta localising inputs and outputs along the cable"""

    name: str = "delta"
    eps: float

    @abstractmethod
    def __call__(self, xi):
        pass

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        pass

    @property
    def compact_support(self) -> bool:
        """True when the profile vanishes identically outside (-eps, eps)"""
        return False

    def is_resolved_by(self, h_xi: float) -> bool:
        return h_xi <= self.eps


@dataclass(frozen=True)
class Gaussian(DendriticDelta):
    """delta_eps(xi) = exp(-xi^2/eps^2) / (eps sqrt(pi)), unit mass"""
    eps: float
    name = "gaussian"

    def __post_init__(self):
        if not self.eps > 0:
            raise ValidationError(f"eps must be positive, got {self.eps}")

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        return np.exp(-(xi / self.eps) ** 2) / (self.eps * np.sqrt(np.pi))

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name, 'eps': self.eps}


@dataclass(frozen=True)
class TruncatedGaussian(DendriticDelta):
    """delta_eps(xi) = kappa_d exp(-xi^2/eps^2) on (-eps, eps), zero elsewhere"""
    eps: float
    kappa_d: float = 1.0
    name = "truncated_gaussian"

    def __post_init__(self):
        if not self.eps > 0:
            raise ValidationError(f"eps must be positive, got {self.eps}")

    @property
    def compact_support(self) -> bool:
        return True

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        inside = np.abs(xi) < self.eps
        return np.where(inside, self.kappa_d * np.exp(-(xi / self.eps) ** 2), 0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name, 'eps': self.eps, 'kappa_d': self.kappa_d}


def eval_delta(d: DendriticDelta, xi):
    out = d(xi)
    return float(out) if np.ndim(out) == 0 else out


def create_delta(config: Optional[Dict[str, Any]], eps: float) -> DendriticDelta:
    """Factory: Gaussian unless ``config['type']`` asks for the truncated profile.

    ``eps`` comes from the physical parameters; a width inside ``config``
    must agree with it.
    """
    params = dict(config or {})
    kind = params.pop('type', Gaussian.name)
    width = params.pop('eps', eps)
    if width != eps:
        raise ValidationError(f"delta eps ({width}) disagrees with params.eps ({eps})")
    if kind == Gaussian.name:
        if params:
            raise ValidationError(f"Unexpected parameters for gaussian delta: {sorted(params)}")
        return Gaussian(eps=eps)
    if kind == TruncatedGaussian.name:
        try:
            return TruncatedGaussian(eps=eps, **params)
        except TypeError as e:
            raise ValidationError(f"Bad parameters for truncated_gaussian delta: {e}")
    raise ValidationError(f"Unknown delta '{kind}'. Available: ['gaussian', 'truncated_gaussian']")
