"""Exception types raised across the package."""

from __future__ import annotations


class QuasiboundError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(QuasiboundError, ValueError):
    """A value outside its admissible range; ``field`` names it when known."""

    def __init__(self, message: str, field: str | None = None, constraint: str | None = None,
                 value=None) -> None:
        super().__init__(message)
        self.field = field
        self.constraint = constraint
        self.value = value


class SingularPoint(QuasiboundError):
    """A wavenumber at which the scattering formalism has no regular value."""

    def __init__(self, k: float, message: str) -> None:
        super().__init__(f"{message} (k={k!r})")
        self.k = k


class SingularAtBandEdge(SingularPoint):
    def __init__(self, k: float) -> None:
        super().__init__(k, "sin(k*b) = 0: band edge, no propagating wave")


class SingularAtResonance(SingularPoint):
    def __init__(self, k: float) -> None:
        super().__init__(k, "E(k) = f: exact impurity resonance")


class SingularSystem(QuasiboundError):
    def __init__(self, k: float, detail: str = "") -> None:
        msg = f"scattering system is singular at k={k!r}"
        super().__init__(f"{msg}: {detail}" if detail else msg)
        self.k = k


class NumericallyIllConditioned(QuasiboundError):
    pass


class EmptyRange(InvalidParameter):
    pass


class NoDip(QuasiboundError):
    pass


class LatticeTooShort(InvalidParameter):
    pass


class PacketOutOfBounds(InvalidParameter):
    pass


class MissingColumn(QuasiboundError):
    pass
