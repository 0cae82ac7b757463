"""Exception types shared across the package.

Everything raised on purpose derives from :class:`SumRankError`, so callers
(and the batch CLI) can map failures to stable machine-readable kinds.  The
CLI exit-code mapping is: schema problems 2, budget refusals 3, every other
mathematical domain error 4.
"""

from __future__ import annotations


class SumRankError(Exception):
    """Base class for all deliberate failures."""


class SchemaError(SumRankError):
    """A JSON job or serialized object does not match the documented shape."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class BudgetExceeded(SumRankError):
    """An enumeration would exceed the step budget.

    Carries the estimated count and the budget that refused it.
    """

    def __init__(self, count: int, budget: int, what: str = "enumeration"):
        super().__init__(f"{what} needs ~{count} steps, budget is {budget}")
        self.count = count
        self.budget = budget


class DivisionByZero(SumRankError):
    """Inversion or division by the zero field element."""


class TowerMismatch(SumRankError):
    """Operands live over different field towers or block structures."""


class NotASubspace(SumRankError):
    """Rows given for a block do not lie in the block subfield."""


class NotNested(SumRankError):
    """A relative-weight query where the inner code is not inside the outer."""


class BadIndex(SumRankError):
    """A weight or profile index outside its legal range."""


class SingularMatrix(SumRankError):
    """A matrix that must be invertible is not."""


class NotPIndependent(SumRankError):
    """A point set fails P-independence with respect to the twist."""


class NotAPBasis(SumRankError):
    """A function table is not defined on a P-basis of the ambient set."""


class StructureMismatch(SumRankError):
    """A vector's block structure disagrees with a conjugacy decomposition."""


class ZeroBeta(SumRankError):
    """Conjugation by beta = 0 is undefined."""


class BadDimension(SumRankError):
    """A requested code dimension outside 1..n."""


class IdentityViolated(SumRankError):
    """A cross-checked identity failed; this indicates a bug, never data."""


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the CLI exit status."""
    if isinstance(exc, SchemaError):
        return 2
    if isinstance(exc, BudgetExceeded):
        return 3
    if isinstance(exc, SumRankError):
        return 4
    return 4
