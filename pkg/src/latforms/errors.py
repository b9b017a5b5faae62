"""Shared exception types.

InvalidInput marks violated preconditions (CLI status "rejected");
SearchCeilingExceeded marks aborted bounded searches (CLI status "aborted").
"""


class InvalidInput(ValueError):
    """A precondition on the input is violated."""


class SearchCeilingExceeded(RuntimeError):
    """A bounded enumeration would exceed its configured ceiling."""
