from dataclasses import dataclass, asdict
from typing import Dict, Any

from ..errors import ValidationError


@dataclass(frozen=True)
class PhysicalParams:
    """Cable and coupling parameters.

    gamma is the leak rate (1/gamma the membrane time constant), nu the
    diffusion coefficient along the dendrite, xi_0 the dendritic contact
    offset and eps the width of the delta profile.
    """
    gamma: float
    nu: float
    xi_0: float
    eps: float

    def __post_init__(self):
        for name in ('gamma', 'nu', 'eps'):
            value = getattr(self, name)
            if not value > 0:
                raise ValidationError(f"{name} must be positive, got {value}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
