# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Common fixtures for testing coefficient sequences."""

import pytest

from jacobi_spectra import (
    BranchRule,
    CoefficientSpec,
    PowerTerm,
    RecursiveRule,
    SquaresOverride,
)


@pytest.fixture
def spec_powers():
    return CoefficientSpec.powers(2, 3, name='powers')


@pytest.fixture
def spec_parity():
    return CoefficientSpec(
        BranchRule(2, (PowerTerm(1, 3), PowerTerm(1, -3))),
        BranchRule.power(1, 2),
        name='parity',
    )


@pytest.fixture
def spec_recursive():
    # a_n = a_{n-1} for even n, n^3 a_{n-1} for odd n; b_n = n^2 a_{n-1}
    return CoefficientSpec(
        RecursiveRule(1, (PowerTerm(1, 0), PowerTerm(1, 3))),
        RecursiveRule(1, (PowerTerm(1, 2), PowerTerm(1, 2)), base='a'),
        name='recursive',
    )


@pytest.fixture
def spec_squares():
    return CoefficientSpec(
        BranchRule.power(1, 2),
        BranchRule(1, (PowerTerm(1, 3),), SquaresOverride('1/2')),
        name='squares',
    )


@pytest.fixture
def spec_table():
    return CoefficientSpec.tabulated([1.0, 2.0, 3.0], [0.0, -1.0, 1.0], name='table')
