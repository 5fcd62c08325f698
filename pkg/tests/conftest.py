import os
import sys
from functools import lru_cache

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from ehrchow import corpus  # noqa: E402

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("repo")

TWO_D = ["SQ1", "SQ2STAR", "GRID2UNI", "RECT32", "NONCONVEX_CLSTAR", "EDGE_ONLY_OVERLAP"]
UNIMODULAR = ["SEG2", *TWO_D, "CUBE_FLAG_3", "SIMPLEX_1", "SIMPLEX_2", "SIMPLEX_3", "SIMPLEX_4"]
IBIP = ["SEG2", "SQ2STAR", "RECT32", "CUBE_FLAG_3"]


@lru_cache(maxsize=None)
def fx(name):
    return corpus.fixture(name)


@pytest.fixture
def tri():
    return lambda name: fx(name).triangulation


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
