import itertools
import os

import pytest
from hypothesis import settings

from rderangements import core

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("RDERANGEMENTS_CACHE", str(tmp_path / "cache.json"))


# -- independent brute-force oracles ------------------------------------------


def cycles_of(perm):
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        out.append(cyc)
    return out


def brute_fpf_r(r, n):
    """FPF permutations of n + r letters with letters 0..r-1 in distinct cycles."""
    count = 0
    for perm in itertools.permutations(range(n + r)):
        cyc = cycles_of(perm)
        if any(len(c) == 1 for c in cyc):
            continue
        owners = [next(i for i, c in enumerate(cyc) if a in c) for a in range(r)]
        if len(set(owners)) == r:
            count += 1
    return count


def brute_pnr(r, n):
    """Permutations of n + r letters whose first r letters are non-fixed and in distinct cycles."""
    count = 0
    for perm in itertools.permutations(range(n + r)):
        cyc = cycles_of(perm)
        ok = True
        owners = set()
        for a in range(r):
            c = next(c for c in cyc if a in c)
            if len(c) == 1 or id(c) in owners:
                ok = False
                break
            owners.add(id(c))
        count += ok
    return count


def brute_lah(n, k):
    """Partitions of {0..n-1} into k nonempty ordered lists, block order ignored."""
    found = set()
    for perm in itertools.permutations(range(n)):
        for cuts in itertools.combinations(range(1, n), k - 1):
            bounds = (0, *cuts, n)
            blocks = frozenset(perm[a:b] for a, b in zip(bounds, bounds[1:]))
            found.add(blocks)
    return len(found)


# -- acceptance report ----------------------------------------------------------

_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion id and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        _CRITERIA.append((marker.args[0], "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _CRITERIA:
        terminalreporter.write_line(f"[{status}] {label}")
