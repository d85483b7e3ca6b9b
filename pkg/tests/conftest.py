import sys
import itertools

import pytest


def brute_avoiders(n):
    """Independent of the package: filter all permutations by a triple scan."""
    out = []
    for p in itertools.permutations(range(1, n + 1)):
        if not any(a < b < c for a, b, c in itertools.combinations(p, 3)):
            out.append(p)
    return out


@pytest.fixture(scope="session")
def avoiders_by_n():
    return {n: brute_avoiders(n) for n in range(1, 9)}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
        terminalreporter.write_line(line)
