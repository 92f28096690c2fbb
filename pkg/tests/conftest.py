import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_RESULTS = {}


def record_criterion(number, title, ok, detail=""):
    ACCEPTANCE_RESULTS[number] = (title, ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, ok, detail = ACCEPTANCE_RESULTS[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {title}" + (f" -- {detail}" if detail else ""))


small_fraction = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def rational_matrices(draw, min_n=1, max_n=5, density=0.5):
    n = draw(st.integers(min_n, max_n))
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            nonzero = draw(st.floats(0, 1)) < density
            row.append(draw(small_fraction) if nonzero else Fraction(0))
        rows.append(row)
    return rows


@st.composite
def simple_graphs(draw, min_n=2, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return n, [e for e, keep in zip(pairs, mask) if keep]


@pytest.fixture
def petersen():
    from eea.constructions import petersen_algebra

    return petersen_algebra()
