"""Exception hierarchy. Every error carries a stable machine-readable code."""


class WorkbenchError(Exception):
    """Base class for all errors raised by this package."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class ParseError(WorkbenchError):
    """Input text cannot be turned into a document (CoNLL-U or transcript)."""


class PairingError(WorkbenchError):
    """Two documents cannot be compared token by token."""


class AdjudicationError(WorkbenchError):
    """A resolution or export request is inconsistent with the session."""


class SamplingError(WorkbenchError):
    """A sampling request cannot be satisfied by the corpus."""
