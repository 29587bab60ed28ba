import itertools

import pytest

from horncones.combinatorics import Partition


def partitions_in_box(rows, cols):
    for parts in itertools.product(range(cols + 1), repeat=rows):
        if all(a >= b for a, b in zip(parts, parts[1:])):
            yield Partition(parts)


@pytest.fixture(scope="session")
def box4():
    return list(partitions_in_box(4, 4))


@pytest.fixture(scope="session")
def box3():
    return list(partitions_in_box(3, 3))


# one summary line per acceptance criterion, aggregated over its checks

_criteria: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): check belonging to acceptance criterion k")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = _markers.get(report.nodeid)
    if marker is not None:
        _criteria.setdefault(marker, []).append((report.nodeid.split("::")[-1], report.passed))


_markers: dict[str, int] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _markers[item.nodeid] = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_criteria):
        results = _criteria[k]
        failed = [name for name, ok in results if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {k}: {status} ({len(results) - len(failed)}/{len(results)} checks)"
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
