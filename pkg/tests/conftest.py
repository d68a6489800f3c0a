from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from omlkit import oml

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

OM_NAMES = ["zero", "2", "B2", "B3", "boolean(4)", "MO2", "mo(3)"]


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


om_lattices = st.sampled_from(OM_NAMES).map(oml.corpus)


@st.composite
def lattice_with(draw, k: int, names=OM_NAMES):
    """A corpus lattice together with k elements of it."""
    L = oml.corpus(draw(st.sampled_from(names)))
    return (L, *(draw(st.integers(0, len(L) - 1)) for _ in range(k)))


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for cid in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[cid])
