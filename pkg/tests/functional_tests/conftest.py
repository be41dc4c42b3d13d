# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Shared random operators for functional tests.

Tabulated specs draw `a_n = exp(U(-1, 1))` and `b_n ~ N(0, 2)` from a generator with a fixed
seed, so every sweep is reproducible whatever order pytest-randomly picks.
"""

import numpy as np
import pytest

from jacobi_spectra import CoefficientSpec


def _tabulated(rng, n_max):
    a = np.exp(rng.uniform(-1.0, 1.0, n_max))
    b = rng.normal(0.0, 2.0, n_max)
    return CoefficientSpec.tabulated(a.tolist(), b.tolist(), name='random')


@pytest.fixture
def make_specs():
    """Return a factory of `count` seeded random specs with `n_max` terms each."""

    def factory(count, n_max, seed=2024):
        rng = np.random.default_rng(seed)
        return [_tabulated(rng, n_max) for _ in range(count)]

    return factory
