"""Exception types shared across the package."""


class HplabError(Exception):
    """Base class for all package-specific errors."""


class BranchPointError(HplabError, ValueError):
    """Evaluation requested at a branch point where sheets coalesce."""


class DomainError(HplabError, ValueError):
    """Input lies outside the domain of definition of an operation."""


class SingularityError(HplabError, ValueError):
    """A kernel singularity was hit at the evaluation point."""


class BranchChoiceError(HplabError, ValueError):
    """A fractional power has its base on the branch cut."""


class DegeneracyError(HplabError, RuntimeError):
    """A linear system has a larger nullspace than the construction allows."""


class PrecisionError(HplabError, RuntimeError):
    """An iteration failed to converge at the working precision."""


class ConvergenceError(HplabError, RuntimeError):
    """A solver did not reach its tolerance within the iteration budget.

    Carries the best iterate found so far in ``best``.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ResolutionError(HplabError, RuntimeError):
    """Phase tracking could not isolate a circle-equation solution."""


class CountError(HplabError, RuntimeError):
    """A zero count differs from the predicted one; carries the found set."""

    def __init__(self, message, found=None):
        super().__init__(message)
        self.found = list(found) if found is not None else []


class ConfigError(HplabError, ValueError):
    """An experiment configuration failed validation.

    ``messages`` holds one human-readable string per offending field.
    """

    def __init__(self, messages):
        if isinstance(messages, str):
            messages = [messages]
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))
