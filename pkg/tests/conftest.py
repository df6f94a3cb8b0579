import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from gradmult.monomial import AmbientRing  # noqa: E402

R2 = AmbientRing.of_dimension(2)
R3 = AmbientRing.of_dimension(3)


def exponent_lists(d, max_exp=4, min_size=1, max_size=5):
    point = st.tuples(*[st.integers(0, max_exp)] * d)
    return st.lists(point, min_size=min_size, max_size=max_size)


@st.composite
def ideals(draw, d=2, max_exp=4, max_size=5, allow_zero=False):
    ring = AmbientRing.of_dimension(d)
    pts = draw(exponent_lists(d, max_exp, 0 if allow_zero else 1, max_size))
    return ring.ideal(pts)


@st.composite
def primary_ideals(draw, d=2, max_exp=4, max_size=4):
    """m-primary: pure powers of every variable plus random extra generators."""
    ring = AmbientRing.of_dimension(d)
    pts = [tuple(draw(st.integers(1, max_exp)) if j == i else 0 for j in range(d)) for i in range(d)]
    pts += draw(exponent_lists(d, max_exp, 0, max_size))
    return ring.ideal(pts)


@pytest.fixture
def R2ring():
    return R2


@pytest.fixture
def R3ring():
    return R3


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
