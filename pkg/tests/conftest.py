"""Shared fixtures: cached restricted-divisor tables for the expensive
sweep sizes, built once per session."""

import pytest

from matcount.tau_tables import TauTable, build_tau_table


@pytest.fixture(scope="session")
def tau_cache():
    """Memoized TauTable factory; large tables are built at most once."""
    cache: dict[int, TauTable] = {}

    def get(N: int) -> TauTable:
        if N not in cache:
            cache[N] = build_tau_table(N)
        return cache[N]

    return get
