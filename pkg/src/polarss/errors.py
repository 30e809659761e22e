"""Exception types raised by polarss.

Every error derives from :class:`PolarSSError`; the ones that signal bad
arguments also derive from :class:`ValueError` so plain ``except ValueError``
keeps working.
"""


class PolarSSError(Exception):
    """Base class for all package errors."""


class ShapeError(PolarSSError, ValueError):
    """Dimensions or lengths do not agree."""


class DomainError(PolarSSError, ValueError):
    """A parameter lies outside its admissible range."""


class SizeError(PolarSSError, ValueError):
    """A configured enumeration or size cap would be exceeded."""


class ConfigurationError(PolarSSError, ValueError):
    """A code configuration is inconsistent (e.g. secret position outside A)."""


class ArgumentError(PolarSSError, ValueError):
    """A call argument violates an operation precondition."""


class FormatError(PolarSSError, ValueError):
    """A code or shares file could not be parsed."""


class UnqualifiedError(PolarSSError):
    """The supplied shares cannot determine the secret."""

    def __init__(self, mode: str, positions=()):
        self.mode = mode
        self.positions = tuple(positions)
        members = ",".join(f"P{i}" for i in self.positions) or "(none)"
        super().__init__(f"unqualified coalition in {mode} mode: {members}")


class IntegrityError(PolarSSError):
    """Provided share bits are not consistent with any codeword."""


class DigestMismatchError(PolarSSError):
    """A shares file was produced for a different code file."""
