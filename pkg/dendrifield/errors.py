"""Exception hierarchy shared by every dendrifield sub-package."""

from typing import Optional, Tuple


class DendrifieldError(Exception):
    """Base class for all dendrifield errors"""


class ValidationError(DendrifieldError, ValueError):
    """Invalid input to a constructor or operation"""


class ConfigError(ValidationError):
    """Invalid configuration file or value"""

    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        self.key = key
        self.line = line
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if key is not None:
            prefix += f"{key}: "
        super().__init__(prefix + message)


class DimensionMismatchError(ValidationError):
    """Array shape does not match the grid"""


class DomainError(DendrifieldError, ValueError):
    """Argument outside the domain of a function (branch cut, undefined slope)"""


class SingularFactorizationError(DendrifieldError, ArithmeticError):
    """LU factorisation hit a vanishing pivot"""


class NumericalInstabilityError(DendrifieldError, RuntimeError):
    """Non-finite values detected in the field"""

    def __init__(self, step: int, time: float):
        self.step = step
        self.time = time
        super().__init__(f"Non-finite voltage detected at step {step} (t = {time:.6g})")


class BoundViolationError(DendrifieldError, AssertionError):
    """Running maximum of |V| exceeded the a-priori boundedness estimate"""


class NoRootError(DendrifieldError, RuntimeError):
    """No sign change found on the scanned bracket"""

    def __init__(self, message: str, bracket: Tuple[float, float]):
        self.bracket = bracket
        super().__init__(f"{message} (scanned bracket [{bracket[0]:.6g}, {bracket[1]:.6g}])")


class NoCrossingError(DendrifieldError, RuntimeError):
    """Level set not found in a snapshot"""
