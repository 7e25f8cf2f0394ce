import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from xorban.core import Literal, LocalRule, Network

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def networks(draw, min_n=1, max_n=6):
    """Arbitrary XOR networks: every rule a nonempty signed set of sources."""
    n = draw(st.integers(min_n, max_n))
    rules = []
    for _ in range(n):
        srcs = draw(st.lists(st.integers(1, n), min_size=1, max_size=n, unique=True))
        rules.append(LocalRule(tuple(Literal(s, draw(st.booleans())) for s in srcs)))
    return Network(tuple(rules))


@st.composite
def net_and_config(draw, min_n=1, max_n=6):
    net = draw(networks(min_n, max_n))
    return net, draw(st.integers(0, (1 << net.n) - 1))


@st.composite
def flip_sets(draw, n):
    return draw(st.sets(st.integers(1, n)))


_ACCEPTANCE_LINES = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def badc12():
    from xorban.families import gen_badc

    return gen_badc(1, 2)[0]


@pytest.fixture
def fig22():
    from xorban.core import parse_network

    return parse_network("1 : x2\n2 : x1 ^ x3\n3 : x2\n")
