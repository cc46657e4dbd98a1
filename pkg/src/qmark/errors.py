"""Exception hierarchy.

Every error carries a stable ``code`` string; the CLI copies it verbatim
into error payloads and maps it to exit status 1 (usage problems exit 2).
"""


class QmarkError(Exception):
    code = "Error"


class DomainError(QmarkError):
    """Input outside the mathematical domain of the operation."""

    code = "DomainError"


class NotDyadicError(QmarkError):
    """Rational whose denominator has an odd prime factor."""

    code = "NotDyadic"


class PreconditionError(QmarkError):
    code = "PreconditionError"


class DepthError(QmarkError):
    """More convergents requested than a finite continued fraction has."""

    code = "DepthError"


class PrecisionError(QmarkError):
    """A certified comparison still straddles after maximum refinement."""

    code = "PrecisionError"


class LimitError(QmarkError):
    """Resource guard tripped (level enumeration too large)."""

    code = "LimitError"


class SizeError(QmarkError):
    """Search-space guard tripped (enumeration too large)."""

    code = "SizeError"


class DegenerateIntervalError(QmarkError):
    """Farey search cannot isolate a mediant strictly inside the interval."""

    code = "DegenerateInterval"


class GuardError(QmarkError):
    """Sandwich construction would probe beyond the trusted CF prefix."""

    code = "GuardError"


class ConstructionError(QmarkError):
    """Internal consistency check of a derived construction failed."""

    code = "ConstructionError"


class NoDecompositionError(QmarkError):
    code = "NoDecomposition"


class RationalInputError(QmarkError):
    """Operation requires an eventually periodic (irrational) input."""

    code = "RationalInput"


class OutOfWindowError(QmarkError):
    code = "OutOfWindow"


class UsageError(QmarkError):
    """Malformed command line; maps to exit status 2."""

    code = "UsageError"
