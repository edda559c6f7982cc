"""Shared pytest plumbing.

The acceptance tests register a one-line verdict per criterion through the
``criterion`` fixture; everything collected is echoed in a dedicated block at
the end of the run so the pass/fail state of the whole gate is readable at a
glance, independent of pytest's own per-test output.
"""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS: dict[int, tuple[str, str, list[str]]] = {}


def _record(cid: int, label: str, status: str, details: tuple[str, ...] = ()) -> None:
    _RESULTS[cid] = (label, status, list(details))


@pytest.fixture
def criterion():
    """Recorder callable: criterion(number, label, status, details=())."""
    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_RESULTS):
        label, status, details = _RESULTS[cid]
        terminalreporter.write_line(f"criterion {cid:2d} [{status:9s}] {label}")
        for line in details:
            terminalreporter.write_line(f"              {line}")
