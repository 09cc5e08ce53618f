"""Exception hierarchy shared by the library and the CLI.

Each class carries the CLI exit status it maps to.
"""


class FlagrankError(Exception):
    exit_code = 1


class InputError(FlagrankError, ValueError):
    """Malformed or out-of-range input."""

    exit_code = 2


class PreconditionError(InputError):
    """Input is well formed but violates a theorem hypothesis."""


class ResourceError(FlagrankError):
    """A configured enumeration or group-order cap would be exceeded."""

    exit_code = 3


class InstabilityError(FlagrankError):
    """Independent samples of a generic quantity disagreed."""

    exit_code = 1


class IdentityFailure(FlagrankError):
    """A checked identity did not hold."""

    exit_code = 1
