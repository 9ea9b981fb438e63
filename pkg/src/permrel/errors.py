"""Exception hierarchy shared by the library and the command line tool.

Every error carries the process exit code the CLI should use, so the
command layer can stay a thin translation shim.
"""


class PermrelError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InputError(PermrelError):
    """Malformed or out-of-contract input (bad group spec, bad flag value)."""

    exit_code = 1


class CapExceeded(PermrelError):
    """A configured size cap was hit before the computation finished."""

    exit_code = 2


class InternalCheckError(PermrelError):
    """An internal certificate or cross-check failed.

    This signals a bug in the package, never a user mistake; results
    produced alongside it must not be trusted.
    """

    exit_code = 3
