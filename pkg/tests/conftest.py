import random

import pytest
from hypothesis import strategies as st

from gbr3.braid import PARTITIONS, BraidWord, Kind, legal_generators

_BY_SOURCE = {p: [g for g in legal_generators() if g.source == p and g.kind is not Kind.IDENTITY]
              for p in PARTITIONS}


@st.composite
def words(draw, max_len=6, source=None):
    src = source if source is not None else draw(st.sampled_from(PARTITIONS))
    steps = []
    here = src
    for _ in range(draw(st.integers(0, max_len))):
        g = draw(st.sampled_from(_BY_SOURCE[here]))
        steps.append(g)
        here = g.target
    return BraidWord(src, tuple(steps))


def random_word(rng: random.Random, max_len: int = 6, source=None) -> BraidWord:
    src = source if source is not None else rng.choice(PARTITIONS)
    steps, here = [], src
    for _ in range(rng.randint(0, max_len)):
        g = rng.choice(_BY_SOURCE[here])
        steps.append(g)
        here = g.target
    return BraidWord(src, tuple(steps))


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
