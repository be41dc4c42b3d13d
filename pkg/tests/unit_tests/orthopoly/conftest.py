# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Common fixtures for testing the orthonormal polynomials."""

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(11)
