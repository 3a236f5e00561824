import itertools
import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from hypercount.core import Family

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def families(draw, n_min=3, n_max=7, k_values=(2, 3), max_edges=12):
    k = draw(st.sampled_from(k_values))
    n = draw(st.integers(max(n_min, k), n_max))
    universe = list(itertools.combinations(range(1, n + 1), k))
    edges = draw(st.lists(st.sampled_from(universe), unique=True, max_size=max_edges))
    return Family(n, k, edges)


@pytest.fixture
def three_edges():
    return Family(5, 3, [(1, 2, 3), (1, 2, 4), (3, 4, 5)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
