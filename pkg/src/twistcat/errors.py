"""Exception types shared by every module."""


class InputError(ValueError):
    """Malformed or out-of-bounds input. The CLI maps this to exit code 2."""


class RefusalError(Exception):
    """An operation declined to run because a precondition failed.

    ``report`` carries the failing check when one is available.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class PreconditionError(RefusalError):
    """A structural precondition (not the law under test) is violated."""


class LawViolation(Exception):
    """Raised by constructions that must assert an identity while building."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
