"""Exception types shared across the package."""


class ErgolabError(Exception):
    """Base class for all package-specific errors."""


class InvalidTreeError(ErgolabError):
    """Node set is not prefix-closed or misses the empty sequence."""


class EntryBoundExceededError(ErgolabError):
    """A tree node entry exceeds the declared enumeration bound."""


class LengthMismatchError(ErgolabError):
    """Operation requires equal expanded lengths."""


class EmptyInputError(ErgolabError):
    """Operation requires nonempty words."""


class OracleSizeExceededError(ErgolabError):
    """Input exceeds the brute-force oracle guard."""


class ExpansionGuardError(ErgolabError):
    """Expanding a word would exceed the configured symbol cap."""


class WordTooShortError(ErgolabError):
    """Word shorter than the code window."""


class NonDecomposableError(ErgolabError):
    """Upper-level word is not an aligned concatenation of lower words."""


class PlanInfeasibleError(ErgolabError):
    """Level plan violates the concatenation arithmetic."""


class InvalidPermutationError(ErgolabError):
    """Not a bijection on block indices."""


class InvalidSequenceError(ErgolabError):
    """Construction sequence fails its level invariants."""


class WindowEscapesError(ErgolabError):
    """Requested name window leaves the built representation."""


class NoReturnError(ErgolabError):
    """Iteration exits the built tower before returning to the base set."""


class UnknownExperimentError(ErgolabError):
    """Experiment id is not in the registry."""


class SchemaViolationError(ErgolabError):
    """Experiment config fails schema validation."""
