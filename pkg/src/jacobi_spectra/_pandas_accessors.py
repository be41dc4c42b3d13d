# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Accessors to cast pandas Series/DataFrame into SequenceTable and CoefficientSpec."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

import numpy as np

from ._coeffseq import CoefficientSpec, TabulatedRule
from ._exceptions import CoefficientDomainError
from ._sequence_tables import SequenceTable

if TYPE_CHECKING:
    from pandas import DataFrame, Series


def _check_empty(pd_obj: Series[Any] | DataFrame) -> None:
    """Raise a ValueError if a pandas object is empty.

    Parameters
    ----------
    pd_obj : Series or DataFrame
    """
    if pd_obj.empty:
        raise ValueError(f'{pd_obj.__class__.__name__} is empty')


def _series_to_table(series: Series[Any], name: str | None) -> SequenceTable:
    if series.index.size > len(set(series.index)):
        raise ValueError('Series has duplicate index-label(s)')
    if series.isna().any():
        raise ValueError('Series has missing value(s)')
    if not all(isinstance(k, int | np.integer) and not isinstance(k, bool) for k in series.index):
        raise TypeError('Series should have integer index labels')
    try:
        items = {int(k): float(v) for k, v in series.items()}
    except (TypeError, ValueError):
        raise TypeError('Series should have numeric values') from None
    return SequenceTable(items, name=name)


class SeriesAccessor:
    """Accessor to cast pandas Series into SequenceTable.

    Parameters
    ----------
    series : Series
    """

    def __init__(self, series: Series[Any]) -> None:
        _check_empty(series)
        self._series = series

    def to_table(self) -> SequenceTable:
        """Cast a Series indexed by `n` into a SequenceTable.

        Note: The `jacobi-spectra` package has to be imported first to use this method with
        `pandas`.

        Returns
        -------
        SequenceTable
            Index labels become the indices `n` and the Series name becomes the table name.

        Raises
        ------
        ValueError
            If the Series is empty, has duplicate or non-positive index labels, or missing values.
        TypeError
            If index labels are not integers or values are not numeric.

        See Also
        --------
        pandas.DataFrame.jacobi.to_spec : Cast a DataFrame into a CoefficientSpec.

        Examples
        --------
        >>> import pandas as pd
        >>> import jacobi_spectra  # required to access this method

        >>> b = pd.Series([1.0, 4.0, 9.0], index=[1, 2, 3], name='b')
        >>> b.jacobi.to_table()
        SequenceTable: n -> b
        {1: 1.0, 2: 4.0, 3: 9.0}
        """
        name = None if self._series.name is None else str(self._series.name)
        return _series_to_table(self._series, name)


class DataFrameAccessor:
    """Accessor to cast pandas DataFrame into CoefficientSpec.

    Parameters
    ----------
    df : DataFrame
    """

    def __init__(self, df: DataFrame) -> None:
        _check_empty(df)
        self._df = df

    def to_spec(self, a: str = 'a', b: str = 'b', *, name: str | None = None) -> CoefficientSpec:
        """Cast two columns of tabulated coefficients into a CoefficientSpec.

        Note: The `jacobi-spectra` package has to be imported first to use this method with
        `pandas`.

        Parameters
        ----------
        a, b : str, default ``'a'`` and ``'b'``
            Column names of the off-diagonal and diagonal sequences.
        name : str, optional

        Returns
        -------
        CoefficientSpec
            Rows are indexed by `n = 1..n_max`; evaluating beyond the last row raises
            `CoefficientDomainError`.

        Raises
        ------
        ValueError
            If the DataFrame is empty, lacks a column, or its index is not exactly `1..n_max`.
        CoefficientDomainError
            If some `a_n` is not positive.

        See Also
        --------
        pandas.Series.jacobi.to_table : Cast a Series into a SequenceTable.

        Examples
        --------
        >>> import pandas as pd
        >>> import jacobi_spectra  # required to access this method

        >>> df = pd.DataFrame({'n': [1, 2, 3], 'a': [1.0, 2.0, 3.0], 'b': [0.0, 0.5, 1.0]})
        >>> spec = df.set_index('n').jacobi.to_spec(name='table')
        >>> spec.eval_a(2), spec.eval_b(3)
        (2.0, 1.0)
        """
        for col in (a, b):
            if col not in self._df.columns:
                raise ValueError(f'DataFrame has no column {col!r}')
        a_table = _series_to_table(self._df[a], 'a')
        b_table = _series_to_table(self._df[b], 'b')
        if not a_table.is_contiguous():
            raise ValueError('DataFrame index should be exactly 1..n_max')
        if min(a_table.values()) <= 0:
            raise CoefficientDomainError('`a` column should be strictly positive')
        return CoefficientSpec(TabulatedRule(a_table), TabulatedRule(b_table), name=name)
