"""Exception classes shared across the package."""


class StructuralError(ValueError):
    """Input has the wrong shape, dimension, or symmetry (e.g. non-Hermitian)."""


class DomainError(ValueError):
    """Parameters are outside their physical domain (e.g. an unphysical state)."""


class NumericalConsistencyError(ValueError):
    """A quantity that must be real (or otherwise constrained) drifted past tolerance."""


class InfeasibleError(ValueError):
    """The constraint system of an optimization problem has no solution."""


class UnboundedError(ValueError):
    """The objective of an optimization problem is unbounded below."""


class ConvergenceError(RuntimeError):
    """An iterative solver hit its iteration cap.

    Carries the best bounds obtained so far in ``lower`` and ``upper``.
    """

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
