import functools

import pytest

from platonic_unfolding import catalog
from platonic_unfolding.surface import rotation_group
from platonic_unfolding.theorems import full_report
from platonic_unfolding.unfolding import unfold

CATALOG_NAMES = list(catalog.BUILTIN)

# filled in by tests/test_acceptance.py
ACCEPTANCE_RESULTS = {}


@functools.lru_cache(maxsize=None)
def surface(name):
    return catalog.get(name)


@functools.lru_cache(maxsize=None)
def unfolded(name):
    return unfold(surface(name))


@functools.lru_cache(maxsize=None)
def rot(name):
    return rotation_group(surface(name))


@functools.lru_cache(maxsize=None)
def report(name):
    return full_report(surface(name))


@pytest.fixture(params=CATALOG_NAMES)
def catalog_name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        passed, title = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {key}: {title}")
