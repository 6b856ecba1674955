import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from nbihom.constructions import t_extension
from nbihom.examples import example_3bihom_dim4, example_3lie_dim4, example_bihom_dim2


@pytest.fixture(scope="session")
def lie3():
    return example_3lie_dim4()


@pytest.fixture(scope="session")
def bihom3():
    return example_3bihom_dim4()


@pytest.fixture(scope="session")
def text_lie3(lie3):
    return t_extension(lie3)


@pytest.fixture(scope="session")
def text_bihom3(bihom3):
    return t_extension(bihom3)


@pytest.fixture(scope="session")
def dim2_n1():
    return example_bihom_dim2(2, 1)


@pytest.fixture(scope="session")
def dim2_n3():
    return example_bihom_dim2(2, 3)


# acceptance summary: tests/test_acceptance.py records one line per criterion
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
