"""Exception types shared across the workbench modules."""


class DpfibError(Exception):
    """Base class for all domain errors raised by this package."""


class DenominatorNotInvertible(DpfibError):
    """A rational coefficient cannot be reduced modulo the given prime."""

    def __init__(self, prime: int, denominator: int):
        self.prime = prime
        self.denominator = denominator
        super().__init__(f"denominator {denominator} is not invertible mod {prime}")


class InvalidConstants(DpfibError):
    """Structure constants violate the classification constraints."""


class InconsistentTwists(DpfibError):
    """No valid structure constants match the model's twist vector."""


class InvalidModel(DpfibError):
    """A fibration model fails validation where a valid one is required."""


class Infeasible(DpfibError):
    """The monomial-map constraint system has no solution."""


class SearchBoundExceeded(DpfibError):
    """An isomorphism search exhausted its exponent bound inconclusively."""


class InternalInconsistency(DpfibError):
    """A case-analysis prediction failed its own numeric verification."""


class InvalidChart(DpfibError):
    """A chart point does not respect the weight-1 chart convention."""


class NotSingular(DpfibError):
    """A singularity report was requested at a smooth point."""


class IrreducibilityUnverified(DpfibError):
    """The finite-field probe could not certify the equation irreducible."""
