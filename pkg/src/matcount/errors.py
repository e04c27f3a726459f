"""Exceptions shared across the library and mapped to CLI exit codes."""


class UsageError(ValueError):
    """Invalid user-supplied configuration (CLI exit code 1)."""


class BudgetError(MemoryError):
    """An operation would exceed the configured memory/size budget (exit code 2)."""


class InvariantError(AssertionError):
    """An internal exact identity failed; signals an implementation bug (exit code 3)."""
