"""
Test configuration and fixtures for the weylforms test suite.
"""
import itertools
import os
import random
import sys
from fractions import Fraction

import pytest

# Add the repository root to the Python path so `src.<pkg>` imports resolve
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.cache import cache_manager  # noqa: E402
from src.configg import ConfigurationManager  # noqa: E402

TEST_SEED = 20240601


@pytest.fixture(autouse=True)
def setup_test_environment(monkeypatch):
    """Deterministic configuration: fixed seed, two workers, memoization on."""
    test_env = {
        "ENVIRONMENT": "test",
        "LOG_LEVEL": "WARNING",
        "LOG_FORMAT": "text",
        "WEYL_DEFAULT_SEED": str(TEST_SEED),
        "WEYL_CHECK_WORKERS": "2",
        "WEYL_MEMO_ENABLED": "true",
        "WEYL_METRICS_FILE": "",
    }
    for key, value in test_env.items():
        monkeypatch.setenv(key, value)
    ConfigurationManager.reload()
    yield
    monkeypatch.undo()
    ConfigurationManager.reload()


@pytest.fixture
def fresh_cache():
    """Empty memo tables before and after the test."""
    cache_manager.reset()
    yield cache_manager
    cache_manager.reset()


@pytest.fixture
def rng():
    """Seeded generator; every test sees the same sequence."""
    return random.Random(TEST_SEED)


def leibniz_det(rows):
    """Determinant by the permutation expansion, used as an independent oracle."""
    size = len(rows)
    total = 0
    for perm in itertools.permutations(range(size)):
        inversions = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total + term
    return total


def ldl_pivots(rows):
    """Pivots of symmetric Gaussian elimination over Fraction; None once a pivot vanishes."""
    a = [[Fraction(v) for v in r] for r in rows]
    size = len(a)
    pivots = []
    for k in range(size):
        if a[k][k] == 0:
            return None
        pivots.append(a[k][k])
        for i in range(k + 1, size):
            factor = a[i][k] / a[k][k]
            for j in range(k, size):
                a[i][j] -= factor * a[k][j]
    return pivots


@pytest.fixture
def det_oracle():
    return leibniz_det


@pytest.fixture
def pivot_oracle():
    return ldl_pivots
