"""Error types shared across the library.

Two failure modes are distinguished so the CLI can map them to exit codes:
violated preconditions (caller error) and certification failures (a result
could not be decided within the configured budget -- never silently guessed).
"""


class PreconditionError(ValueError):
    """An operation was called with arguments outside its contract."""


class CertificationError(RuntimeError):
    """A certified result could not be produced within the refinement budget."""
