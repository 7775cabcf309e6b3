"""Exception hierarchy.

DomainError (and subclasses) map to CLI exit code 1; FalsificationError
is reserved for a proof-guaranteed inequality failing on concrete data
and maps to exit code 2.
"""

from __future__ import annotations


class Z4apError(Exception):
    """Base class for all package errors."""


class DomainError(Z4apError):
    """Invalid input: precondition violated, malformed value, bad flag."""


class CapExceeded(DomainError):
    """A configured size cap refused the computation."""


class FormatError(DomainError):
    """A file failed to parse."""


class InternalMismatchError(Z4apError):
    """Two independent computation paths disagreed (artifact bug)."""


class FalsificationError(Z4apError):
    """An inequality the source argument guarantees failed on real data.

    Carries a state dump so the offending instance can be replayed.
    """

    def __init__(self, message: str, state: dict | None = None):
        super().__init__(message)
        self.state = state or {}
