from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Any, List, Tuple

import numpy as np

from ..errors import ValidationError


class SomaticKernel(ABC):
    """Even somatic connectivity w(|x|) written as a sum of exponentials.

    Each term (a, b) contributes a exp(-b |x|); its Fourier transform is
    2 a b / (b^2 + p^2), which is real because w is even.
    """

    name: str = "kernel"

    @abstractmethod
    def terms(self) -> List[Tuple[float, float]]:
        """Signed amplitudes and decay rates (a, b)"""
        pass

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        pass

    def __call__(self, d):
        d = np.abs(np.asarray(d, dtype=float))
        out = np.zeros_like(d)
        for a, b in self.terms():
            out = out + a * np.exp(-b * d)
        return out

    def fourier(self, p):
        p = np.asarray(p, dtype=float)
        out = np.zeros_like(p)
        for a, b in self.terms():
            out = out + 2.0 * a * b / (b * b + p * p)
        return out

    def fourier_derivative(self, p):
        """d w_hat / dp"""
        p = np.asarray(p, dtype=float)
        out = np.zeros_like(p)
        for a, b in self.terms():
            out = out - 4.0 * a * b * p / (b * b + p * p) ** 2
        return out

    def sup_abs(self) -> float:
        """Bound on |w|: sum of |a| over the terms"""
        return float(sum(abs(a) for a, _ in self.terms()))


@dataclass(frozen=True)
class ExpDecay(SomaticKernel):
    """w(x) = (kappa/2) exp(-|x|/2)"""
    kappa: float
    name = "exp_decay"

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValidationError(f"kappa must be positive, got {self.kappa}")

    def terms(self) -> List[Tuple[float, float]]:
        return [(0.5 * self.kappa, 0.5)]

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name, 'kappa': self.kappa}


@dataclass(frozen=True)
class MexicanHat(SomaticKernel):
    """w(x) = a1 exp(-b1 |x|) - a2 exp(-b2 |x|)"""
    a1: float
    b1: float
    a2: float
    b2: float
    name = "mexican_hat"

    def __post_init__(self):
        for key in ('a1', 'b1', 'a2', 'b2'):
            if not getattr(self, key) > 0:
                raise ValidationError(f"{key} must be positive, got {getattr(self, key)}")

    def terms(self) -> List[Tuple[float, float]]:
        return [(self.a1, self.b1), (-self.a2, self.b2)]

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name, 'a1': self.a1, 'b1': self.b1, 'a2': self.a2, 'b2': self.b2}


@dataclass(frozen=True)
class ZeroKernel(SomaticKernel):
    """w = 0; decouples the cables"""
    name = "zero"

    def terms(self) -> List[Tuple[float, float]]:
        return []

    def to_dict(self) -> Dict[str, Any]:
        return {'type': self.name}


def eval_kernel(w: SomaticKernel, d):
    """w evaluated at |x| = d"""
    out = w(d)
    return float(out) if np.ndim(out) == 0 else out


def kernel_fourier(w: SomaticKernel, p):
    """Closed-form Fourier transform w_hat(p)"""
    out = w.fourier(p)
    return float(out) if np.ndim(out) == 0 else out


_KERNELS = {
    ExpDecay.name: ExpDecay,
    MexicanHat.name: MexicanHat,
    ZeroKernel.name: ZeroKernel,
}


def create_kernel(config: Dict[str, Any]) -> SomaticKernel:
    """Factory: build a somatic kernel from ``{'type': ..., **params}``"""
    params = dict(config)
    kind = params.pop('type', None)
    if kind not in _KERNELS:
        raise ValidationError(f"Unknown kernel '{kind}'. Available: {sorted(_KERNELS)}")
    try:
        return _KERNELS[kind](**params)
    except TypeError as e:
        raise ValidationError(f"Bad parameters for kernel '{kind}': {e}")
