"""Shared fixtures: the built-in instances and a seeded generator."""

from __future__ import annotations

import numpy as np
import pytest

from cqg.core.instances import (
    finite_group_dual,
    finite_group_function_algebra,
    on_plus_truncated,
    s3_irreps,
    suq2_truncated,
    symmetric_group_s3,
)


@pytest.fixture(scope="session")
def s3_bundle():
    """(data, norm oracle, brute-force oracle) of C(S₃)."""
    p = symmetric_group_s3()
    return finite_group_function_algebra(p, s3_irreps(p))


@pytest.fixture(scope="session")
def s3(s3_bundle):
    return s3_bundle[0]


@pytest.fixture(scope="session")
def suq2():
    """SU_q(2) at q = 1/2 truncated at L = 4."""
    return suq2_truncated(0.5, 4)


@pytest.fixture(scope="session")
def onplus():
    return on_plus_truncated(3, 3)


@pytest.fixture(scope="session")
def dual_s3():
    return finite_group_dual(symmetric_group_s3())


@pytest.fixture
def rng():
    return np.random.default_rng(42)
