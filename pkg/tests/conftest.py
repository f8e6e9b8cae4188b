import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

os.environ.setdefault("CCRGRAPH_VERIFY", "1")

from ccrgraph import gf2  # noqa: E402
from ccrgraph.graphcore import Graph  # noqa: E402
from ccrgraph.setfam import SetFamily  # noqa: E402

gf2.VERIFY = True

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    n_pairs = n * (n - 1) // 2
    mask = draw(st.integers(0, (1 << n_pairs) - 1)) if n_pairs else 0
    return Graph.from_edge_mask(n, mask)


@st.composite
def graphs_with_set(draw, min_n=1, max_n=8):
    g = draw(graphs(min_n, max_n))
    s = draw(st.integers(0, (1 << g.n) - 1))
    return g, s


@st.composite
def families(draw, max_m=6, max_members=8):
    m = draw(st.integers(0, max_m))
    k = draw(st.integers(0, max_members))
    members = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=k, max_size=k))
    return SetFamily(m, tuple(members))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# -- acceptance summary -------------------------------------------------

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[cid]
        terminalreporter.write_line(f"criterion {cid:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
