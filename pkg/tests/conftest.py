import os

# run fast predicate paths alongside their definitional twins
os.environ.setdefault("SMLAB_CROSSCHECK", "1")

import itertools

import numpy as np
import pytest

from smlab import predicates


def pytest_configure(config):
    predicates.CROSS_CHECK = True


def brute_submodules(m) -> set[frozenset]:
    """Every subset of M closed under addition and scalars. Exponential, so keep |M| <= 16."""
    assert m.size <= 16
    out = set()
    others = [x for x in range(m.size) if x != m.zero]
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            s = {m.zero, *extra}
            arr = np.array(sorted(s))
            if not set(m.add[np.ix_(arr, arr)].ravel()) <= s:
                continue
            if not set(m.act[:, arr].ravel()) <= s:
                continue
            out.add(frozenset(s))
    return out


@pytest.fixture
def brute():
    return brute_submodules


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
