from __future__ import annotations

import warnings
from functools import lru_cache

import pytest

# numba warns about the system TBB version on import; irrelevant here
warnings.filterwarnings("ignore", message=".*TBB.*")

from sigmastab.blueprint import construct  # noqa: E402
from sigmastab.manifest import MANIFEST  # noqa: E402


@lru_cache(maxsize=None)
def manifest_code(n: int, k: int = 1):
    row = next(r for r in MANIFEST if r.n == n and r.k == k)
    return construct(row.n, 2, row.m, g_extra=row.g, h_select=row.h)


@pytest.fixture(scope="session")
def code():
    return manifest_code


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
