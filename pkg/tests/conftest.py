import pytest

from atomspec.algebra import parse_element
from atomspec.rings import BaseRing

F2 = BaseRing.prime_field(2)
F3 = BaseRing.prime_field(3)
Z = BaseRing.integers()


def el(quiver, ring, text):
    """Shorthand for an algebra element written in the DSL expression syntax."""
    return parse_element(text, quiver, ring)


@pytest.fixture
def f2():
    return F2


@pytest.fixture
def zz():
    return Z


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
