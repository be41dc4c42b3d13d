# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Accessor to cast pandas Series into SequenceTable."""

import numpy as np
import pandas as pd
import pytest

from jacobi_spectra import SequenceTable


@pytest.mark.parametrize(
    'input, expected',
    [
        (pd.Series([1.0, 4.0, 9.0], index=[1, 2, 3]), SequenceTable({1: 1.0, 2: 4.0, 3: 9.0})),
        (pd.Series([2, 3], index=[5, 9]), SequenceTable({5: 2.0, 9: 3.0})),
        (pd.Series([0.5, 0.25], index=[2, 1]), SequenceTable({1: 0.25, 2: 0.5})),
        (
            pd.Series([1.0, 2.0], index=np.array([1, 2], dtype=np.int32)),
            SequenceTable({1: 1.0, 2: 2.0}),
        ),
    ],
)
def test_to_table_pass(input, expected):
    got = input.jacobi.to_table()
    assert isinstance(got, SequenceTable)
    assert got == expected
    assert list(got) == sorted(got)


@pytest.mark.parametrize(
    'input, name',
    [
        (pd.Series([1.0], index=[1]), None),
        (pd.Series([1.0], index=[1], name='b'), 'b'),
        (pd.Series([1.0], index=[1], name=7), '7'),
    ],
)
def test_to_table_name(input, name):
    assert input.jacobi.to_table().name == name


def test_to_table_repr():
    table = pd.Series([1.0, 4.0], index=[1, 2], name='b').jacobi.to_table()
    assert repr(table) == 'SequenceTable: n -> b\n{1: 1.0, 2: 4.0}'


@pytest.mark.parametrize(
    'input',
    [
        pd.Series([], dtype=float),
        pd.Series([1.0, 2.0], index=[1, 1]),
        pd.Series([1.0, np.nan], index=[1, 2]),
        pd.Series([1.0, 2.0], index=[0, 1]),
        pd.Series([1.0, np.inf], index=[1, 2]),
    ],
)
def test_to_table_valerr(input):
    with pytest.raises(ValueError):
        input.jacobi.to_table()


@pytest.mark.parametrize(
    'input',
    [
        pd.Series([1.0, 2.0], index=['x', 'y']),
        pd.Series([1.0, 2.0], index=[1.0, 2.0]),
        pd.Series([1.0, 2.0], index=[True, False]),
        pd.Series(['p', 'q'], index=[1, 2]),
    ],
)
def test_to_table_typeerr(input):
    with pytest.raises(TypeError):
        input.jacobi.to_table()
