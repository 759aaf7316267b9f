import random

import pytest

from tfsgram.grammar import bundled_grammar, bundled_path, load_hierarchy
from tfsgram.hierarchy import validate


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def diamond():
    return load_hierarchy(bundled_path("diamond.types").read_text())


@pytest.fixture(scope="session")
def th():
    """bot < t"""
    return validate({"t": []})


@pytest.fixture(scope="session")
def fig2():
    return bundled_grammar("fig2.tfg")


@pytest.fixture(scope="session")
def olp():
    return bundled_grammar("olp.tfg")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
    missing = [n for n in range(1, 10) if n not in results]
    if missing:
        terminalreporter.write_line("not run: %s" % ", ".join(map(str, missing)))
