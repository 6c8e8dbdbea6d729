from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import strategies as st

from versorlab.clifford import Multivector
from versorlab.field import FieldScalar
from versorlab.rootsystem import generate, simple_roots
from versorlab.versorgroup import even_subgroup, generate_pin, rotation_quotient

small_int = st.integers(min_value=-9, max_value=9)
small_frac = st.builds(Fraction, small_int, st.integers(min_value=1, max_value=6))


@st.composite
def scalars(draw, nonzero: bool = False) -> FieldScalar:
    x = FieldScalar(*(draw(small_frac) for _ in range(4)))
    if nonzero and x.is_zero():
        x = FieldScalar(1)
    return x


@st.composite
def multivectors(draw, dimension: int = 3, density: int = 4) -> Multivector:
    n = 1 << dimension
    blades = draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=density))
    return Multivector.from_terms(dimension, {b: draw(scalars()) for b in blades})


@st.composite
def vectors(draw, dimension: int = 3) -> Multivector:
    return Multivector.vector([draw(scalars()) for _ in range(dimension)])


@lru_cache(maxsize=None)
def root_system(name: str):
    return generate(simple_roots(name), name=name)


@lru_cache(maxsize=None)
def pin(name: str):
    return generate_pin(simple_roots(name))


@lru_cache(maxsize=None)
def spin(name: str):
    return even_subgroup(pin(name))


@lru_cache(maxsize=None)
def rotations(name: str):
    return rotation_quotient(spin(name))


@pytest.fixture(scope="session")
def h3_simple():
    return [Multivector.vector(v) for v in simple_roots("H3")]


@pytest.fixture(scope="session")
def binary_icosahedral():
    return spin("H3")


# one PASS/FAIL line per acceptance criterion at the end of the run

_CRITERIA: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    if "test_acceptance.py::" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    key = name[len("test_criterion_"):]
    _CRITERIA[key] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: int(k.split("_")[0])):
        num, _, rest = key.partition("_")
        terminalreporter.write_line(f"{_CRITERIA[key]}  criterion {num:>2}: {rest.replace('_', ' ')}")
