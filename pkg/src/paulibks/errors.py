"""Exception hierarchy shared across the package."""

from __future__ import annotations


class PauliBKSError(Exception):
    """Base class for all package errors."""


class DimensionError(PauliBKSError, ValueError):
    """Operands live on different qubit counts or dimensions."""


class CapabilityError(PauliBKSError):
    """Requested size is outside the supported range (possibly without --long-running)."""


class PreconditionError(PauliBKSError, ValueError):
    """An operation was called on input violating its precondition."""


class VerificationError(PauliBKSError):
    """A structural property that must hold did not hold."""
