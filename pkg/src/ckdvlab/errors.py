"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: parameter/domain problems
exit 2, a singular superposition denominator exits 3, a blow-up exits 4.
"""

from __future__ import annotations


class CkdvError(Exception):
    """Base class for all package-specific errors."""


class ParameterDomainError(CkdvError):
    """A parameter violates a constructor or configuration constraint.

    ``condition`` names the violated constraint, e.g. ``"C > 0"``.
    """

    def __init__(self, condition: str, message: str | None = None):
        self.condition = condition
        super().__init__(message or f"parameter domain violated: {condition}")


class SingularDenominatorError(CkdvError):
    """The superposition denominator fell below the floor at some point."""

    def __init__(self, x: float, t: float, value: float, floor: float):
        self.x = float(x)
        self.t = float(t)
        self.value = float(value)
        self.floor = float(floor)
        super().__init__(
            f"superposition denominator |D|={self.value:.3e} below floor "
            f"{self.floor:.1e} at (x, t)=({self.x:.6g}, {self.t:.6g})"
        )


class WrongLambdaError(CkdvError):
    """A reduction check was requested for an incompatible coupling value."""

    def __init__(self, expected: float, actual: float, check: str):
        self.expected = expected
        self.actual = actual
        self.check = check
        super().__init__(
            f"{check} requires lambda = {expected:g}, pair has lambda = {actual:g}"
        )


class BlowUpError(CkdvError):
    """Field amplitude crossed the configured ceiling during evolution."""

    def __init__(self, t_blow: float, amplitude: float, ceiling: float):
        self.t_blow = float(t_blow)
        self.amplitude = float(amplitude)
        self.ceiling = float(ceiling)
        super().__init__(
            f"amplitude {self.amplitude:.3e} crossed ceiling {self.ceiling:.1e} "
            f"near t = {self.t_blow:.6g}"
        )
