"""Exception hierarchy shared by every rotorwigner module."""


class RotorError(ValueError):
    """Base class for all errors raised by rotorwigner."""


class CutoffError(RotorError):
    """An angular-momentum index lies outside the truncation window."""


class DegenerateStateError(RotorError):
    """A state has zero norm and cannot be normalized."""


class ResolutionError(RotorError):
    """An angle grid is too coarse for the modes it has to carry."""


class SpecMismatchError(RotorError):
    """Two objects were built with different RotorSpec values."""


class ParityLatticeError(RotorError):
    """A momentum lattice is incompatible with the parity of a state."""


class TailMassError(RotorError):
    """A truncated distribution drops more probability than allowed."""


class ConsistencyError(RotorError):
    """An internal numerical identity failed (e.g. imaginary residue too large)."""
