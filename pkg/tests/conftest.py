import random
import sys

import pytest
from hypothesis import strategies as st

from ketonen.generators import random_formula, random_prop, random_prop_sequent
from ketonen.sequent import Sequent


@pytest.fixture
def atoms():
    return {}


def seeds():
    return st.integers(min_value=0, max_value=2**32 - 1)


def formulas():
    return seeds().map(lambda s: random_formula(random.Random(s), 30))


def props(n_atoms=3, depth=3):
    return seeds().map(lambda s: random_prop(random.Random(s), n_atoms, depth))


def prop_sequents():
    return seeds().map(lambda s: random_prop_sequent(random.Random(s)))


def parse(text, atoms=None):
    return Sequent.parse(text, {} if atoms is None else atoms, auto_atoms=True)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
