"""Shared fixtures and the per-criterion acceptance summary."""
from __future__ import annotations

from collections import OrderedDict

import pytest

from drfaber.drbracket import MemoStore

_acceptance: "OrderedDict[int, dict]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test belongs to")


@pytest.fixture(scope="session")
def store() -> MemoStore:
    # one warm store for the whole session; tests that corrupt a store build their own
    return MemoStore()


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    entry = _acceptance.setdefault(number, {"title": title, "failed": []})
    if report.failed:
        entry["failed"].append(report.nodeid.split("::")[-1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_acceptance):
        entry = _acceptance[number]
        status = "PASS" if not entry["failed"] else "FAIL"
        line = f"criterion {number}: {status}  {entry['title']}"
        if entry["failed"]:
            line += "  (failing: " + ", ".join(entry["failed"]) + ")"
        tr.write_line(line)
