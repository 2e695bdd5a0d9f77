"""Exception types shared across the package."""


class EqdegError(Exception):
    """Base class for all package errors."""


class ValidationError(EqdegError):
    """A structurally well-formed input violates a mathematical precondition.

    Raised for degenerate spectra, group-order overflows, inconsistent
    configuration fields and similar conditions.  CLI maps this to exit
    code 2.
    """


class InputError(EqdegError):
    """Malformed input that never reached validation (bad JSON, missing
    keys, wrong types).  CLI maps this to exit code 1."""
