"""Exception types shared across the library.

Every error carries a stable ``code`` string; the CLI uses it in error
payloads so scripted callers can dispatch without parsing messages.
"""


class UnivoqueError(Exception):
    code = "Error"


class OutOfRange(UnivoqueError):
    """A digit operation left the alphabet, or a value left its domain."""

    code = "OutOfRange"


class AlphabetMismatch(UnivoqueError):
    """Two operands live over different alphabets."""

    code = "AlphabetMismatch"


class EmptyPeriod(UnivoqueError):
    """An eventually periodic sequence needs a nonempty period block."""

    code = "EmptyPeriod"


class PrecisionExhausted(UnivoqueError):
    """A numeric decision could not be made within the precision budget."""

    code = "PrecisionExhausted"


class NotAdmissible(UnivoqueError):
    """The sequence is not a quasi-greedy expansion of 1 for any base."""

    code = "NotAdmissible"


class BoundsInverted(UnivoqueError):
    """A shift space was requested with upper bound below lower bound."""

    code = "BoundsInverted"


class NotPrimitive(UnivoqueError):
    """Reflection recurrence is only defined for primitive words."""

    code = "NotPrimitive"


class NotInXiRange(UnivoqueError):
    """The sequence lies outside the bracket chain used for star levels."""

    code = "NotInXiRange"


class NotGenerating(UnivoqueError):
    """The word does not generate a plateau interval; message says why."""

    code = "NotGenerating"
