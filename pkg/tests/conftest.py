"""
Shared test fixtures and configuration for the proofmin test suite.
"""

import logging
import shutil
import tempfile
from typing import FrozenSet, Iterable

import pytest

from proofmin.core.cnf import Clause, Formula
from proofmin.core.config import SearchConfig

# x=1, y=2, z=3, t=4 throughout the suite
X, Y, Z, T = 1, 2, 3, 4


def clauses(*lits: Iterable[int]) -> FrozenSet[Clause]:
    """Build a clause set: ``clauses([1, -2], [2])``."""
    return frozenset(Clause(c) for c in lits)


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    temp_dir = tempfile.mkdtemp()
    yield temp_dir
    shutil.rmtree(temp_dir)


@pytest.fixture(autouse=True)
def quiet_logging():
    """Keep the package logger at WARNING unless a test raises it."""
    root = logging.getLogger("proofmin")
    level, propagate, handlers = root.level, root.propagate, list(root.handlers)
    root.setLevel(logging.WARNING)
    yield
    for handler in list(root.handlers):
        if handler not in handlers:
            root.removeHandler(handler)
            handler.close()
    root.setLevel(level)
    root.propagate = propagate


@pytest.fixture
def small_formula() -> Formula:
    """{x, ¬y}, {¬x}, {y}: the smallest proof has five clauses."""
    return Formula.from_ints([[X, -Y], [-X], [Y]])


@pytest.fixture
def layered_formula() -> Formula:
    """Seven axioms over x, y, z, t with a 15-clause layered refutation."""
    return Formula.from_ints([
        [Y, -T], [X, Y, Z, T], [-X, Y], [-Y, Z], [-Z, T], [-X, -T], [X, -Y],
    ])


@pytest.fixture
def two_route_formula() -> Formula:
    """{x, y}, {¬y}, {x, z}, {¬z}, {¬x}: x is derivable two ways, optimum 5."""
    return Formula.from_ints([[X, Y], [-Y], [X, Z], [-Z], [-X]])


@pytest.fixture
def fast_config() -> SearchConfig:
    """Optimal preset with static seeding, for reproducible runs."""
    return SearchConfig.for_mode("optimal", dynamic_seeding=False, seed=0)


@pytest.fixture
def small_dimacs(temp_dir) -> str:
    path = f"{temp_dir}/small.cnf"
    with open(path, "w") as f:
        f.write("c two-variable refutation\np cnf 2 3\n1 -2 0\n-1 0\n2 0\n")
    return path
