"""Exception hierarchy.  The CLI maps the three families to exit codes 1, 2, 3."""


class ZariskiNoError(Exception):
    """Base class for all library errors."""


class InputError(ZariskiNoError):
    """Malformed or inconsistent input data (exit code 1)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(ZariskiNoError):
    """A mathematical precondition does not hold (exit code 2)."""

    reason = "precondition"


class ModelMismatchError(PreconditionError, ValueError):
    reason = "model-mismatch"


class UnknownPointError(PreconditionError, KeyError):
    reason = "unknown-point"

    def __str__(self):
        return Exception.__str__(self)


class NotPseudoeffectiveError(PreconditionError):
    reason = "not-pseudoeffective"


class NotBigError(PreconditionError):
    reason = "not-big"


class NotAdmissibleError(PreconditionError):
    reason = "flag-not-admissible"


class UndeterminedError(PreconditionError):
    reason = "undetermined-local-data"


class InvariantViolation(ZariskiNoError):
    """An internal consistency check failed (exit code 3)."""

    reason = "invariant-violation"
