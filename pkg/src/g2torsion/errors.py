"""Exception hierarchy shared by the arithmetic and algorithm layers."""


class G2TorsionError(Exception):
    """Base class for all errors raised by this package."""


class ModulusMismatchError(G2TorsionError, ValueError):
    pass


class PreconditionError(G2TorsionError, ValueError):
    """An argument violates the documented precondition of an operation."""


class InvalidCurveError(G2TorsionError, ValueError):
    """The defining polynomial does not give a smooth genus-2 curve."""


class UnsupportedModelError(G2TorsionError, ValueError):
    """A sextic model without a rational Weierstrass point was supplied."""


class NotInSubgroupError(G2TorsionError, ValueError):
    pass


class SupportCollisionError(G2TorsionError, RuntimeError):
    """Miller evaluation kept hitting the support of the evaluation divisor."""


class GiveUpError(G2TorsionError, RuntimeError):
    """A probabilistic loop exhausted its retry budget.

    ``diagnostics`` carries the counters and partial state at the point of
    failure so callers can report them.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class OracleRefusal(G2TorsionError, ValueError):
    """The brute-force oracle refuses inputs above its size cap."""
