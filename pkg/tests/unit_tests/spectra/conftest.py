# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Common fixtures for testing truncations and their spectra."""

import numpy as np
import pytest

from jacobi_spectra import CoefficientSpec, Truncation


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def random_truncations(rng):
    """Ten random truncations of orders 1 to 40."""
    out = []
    for n in (1, 2, 3, 5, 8, 13, 21, 30, 34, 40):
        diag = rng.normal(0.0, 3.0, n)
        offdiag = np.exp(rng.uniform(-2.0, 2.0, n - 1))
        out.append(Truncation.from_arrays(diag, offdiag, float(rng.uniform(0.5, 2.0))))
    return out


@pytest.fixture
def spec_free():
    return CoefficientSpec.powers(0, 0, b_sign=0)


@pytest.fixture
def spec_discrete():
    # a_n = n, b_n = n^2
    return CoefficientSpec.powers(1, 2)
