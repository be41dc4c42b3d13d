# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Common fixtures for testing the multi-index sums and criteria."""

import numpy as np
import pytest

from jacobi_spectra import CoefficientSpec


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def random_specs(rng):
    """Twenty tabulated specs with positive `a` and diagonal of either sign."""
    specs = []
    for _ in range(20):
        a = np.exp(rng.uniform(-1.0, 1.0, 60))
        b = rng.choice([-1.0, 1.0], 60) * np.exp(rng.uniform(-1.0, 1.0, 60))
        specs.append(CoefficientSpec.tabulated(a.tolist(), b.tolist()))
    return specs


@pytest.fixture
def spec_const():
    # a_n = 1, b_n = 2
    return CoefficientSpec.powers(0, 0, b_constant=2)
