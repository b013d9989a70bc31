"""Domain errors.

Everything here derives from ``DomainError`` (itself a ``ValueError``) so the
CLI can map any of them to exit code 2 with the message verbatim. ``UsageError``
stands apart: it maps to exit code 1.
"""


class DomainError(ValueError):
    pass


class FormatError(DomainError):
    """A document that does not follow its line format."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self._render())

    def __reduce__(self):
        return (type(self), (self.message, self.line, self.column))

    def _render(self) -> str:
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"


class ModelFormatError(FormatError):
    pass


class PurposeSyntaxError(DomainError):
    pass


class UnresolvableStepError(DomainError):
    pass


class PathLimitError(DomainError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"path cap of {cap} generated paths exceeded; raise the cap or simplify the model")

    def __reduce__(self):
        return (PathLimitError, (self.cap,))


class EmptySuiteError(DomainError):
    pass


class DegenerateHintError(DomainError):
    pass


class UndetectableFaultError(DomainError):
    pass


class MetricUndefinedError(DomainError):
    pass


class EmptySampleError(DomainError):
    pass


class HintSearchError(DomainError):
    pass


class InfeasibleParametersError(DomainError):
    pass


class FaultPlantingError(DomainError):
    pass


class SelectionMismatchError(DomainError):
    pass


class TrialError(DomainError):
    def __init__(self, model: str, technique: str, hint: str, seed: int, trial: int, cause: Exception):
        self.model = model
        self.technique = technique
        self.hint = hint
        self.seed = seed
        self.trial = trial
        self.cause = cause
        super().__init__(
            f"trial failed at model={model} technique={technique} hint={hint} "
            f"seed={seed} trial={trial}: {cause}"
        )

    def __reduce__(self):
        return (TrialError, (self.model, self.technique, self.hint, self.seed, self.trial, self.cause))


class UsageError(Exception):
    """A command line that cannot be run as given (missing or conflicting flags)."""
