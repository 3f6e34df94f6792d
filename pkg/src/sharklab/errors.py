"""Exception hierarchy shared across the package.

Everything raised on purpose derives from :class:`SharklabError`, so callers
(and the CLI) can map failures to exit codes without matching on builtins.
"""

from __future__ import annotations


class SharklabError(Exception):
    """Base class for all errors raised by sharklab."""


class DomainError(SharklabError):
    """An input value lies outside the domain a function was defined on,
    or a parameter violates its documented constraints."""


class PreconditionError(SharklabError):
    """A documented precondition of an operation does not hold
    (e.g. a point claimed periodic is not, a covering relation fails)."""


class ResourceError(SharklabError):
    """A configured resource budget was exceeded.  The message names the
    budget and the amount of progress made when it tripped."""


class VerificationError(SharklabError):
    """An internally-produced certificate or invariant failed its own
    independent re-check.  Indicates a bug, never bad user input."""
