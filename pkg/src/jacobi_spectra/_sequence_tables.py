# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""SequenceTable data structure."""

from __future__ import annotations

import math
import statistics
from collections import abc
from collections.abc import Callable, Mapping
from functools import partial
from typing import TYPE_CHECKING, Any, NoReturn

if TYPE_CHECKING:
    from ._misc_types import MinimalRepresentationPrinter

_builtin_op: dict[str, Callable[..., float]] = {
    'sum': sum,
    'min': partial(min, default=0),
    'max': partial(max, default=0),
}


class SequenceTable(dict[int, float]):
    """Custom subclass of `dict` holding finitely many terms of a coefficient sequence.

    Keys are 1-based positive integer indices `n` and values are finite `int` or `float` terms.
    Used for tabulated coefficient rules and for explicit-list overrides.

    Parameters
    ----------
    mapping : dict or dict-like mapping, optional
        Index to value mapping to be encapsulated in the SequenceTable.
    name : str, optional
        Name of the sequence - not used internally, and solely for user reference.

    Raises
    ------
    TypeError
        If input includes key(s) that are not int or value(s) that are not int or float.
    ValueError
        If input includes a key smaller than 1 or a non-finite value.

    Examples
    --------
    >>> SequenceTable({1: 1.0, 2: 4.0, 3: 9.0}, name='b')
    SequenceTable: n -> b
    {1: 1.0, 2: 4.0, 3: 9.0}
    """

    __slots__ = ('_name',)

    def __init__(self, mapping: Mapping[int, float] | None = None, /, *, name: str | None = None):
        self._name = name
        if mapping is None:
            mapping = {}
        elif not isinstance(mapping, abc.Mapping):
            raise TypeError('input should be a dict or dict-like mapping')
        for key, value in mapping.items():
            self._validate_item(key, value)
        super().__init__(sorted(mapping.items()))

    @staticmethod
    def _validate_item(key: Any, value: Any) -> None:
        """Validate one index/value pair.

        Parameters
        ----------
        key : Any
        value : Any
        """
        if isinstance(key, bool) or not isinstance(key, int):
            raise TypeError('`n` should be an int')
        if key < 1:
            raise ValueError('`n` should be a positive integer')
        if isinstance(value, bool) or not isinstance(value, int | float):
            raise TypeError('sequence values should be either int or float')
        if not math.isfinite(value):
            raise ValueError(f'sequence value at `n`={key} is not finite')

    @property
    def name(self) -> str | None:
        """Name of the sequence.

        Returns
        -------
        str
        """
        return self._name

    @property
    def max_index(self) -> int:
        """Largest stored index, or zero for an empty table.

        Returns
        -------
        int
        """
        return max(self, default=0)

    def is_contiguous(self) -> bool:
        """Whether the table holds every index from 1 through `max_index`.

        Returns
        -------
        bool

        Examples
        --------
        >>> SequenceTable({1: 1.0, 2: 2.0}).is_contiguous()
        True
        >>> SequenceTable({1: 1.0, 3: 2.0}).is_contiguous()
        False
        """
        return len(self) == self.max_index

    def _get_repr_header(self) -> str:
        # Header of the repr.
        return f'{self.__class__.__name__}: n -> {self._name or "value"}'

    def __repr__(self) -> str:
        # Printable string representation.
        return f'{self._get_repr_header()}\n{super().__repr__()}'

    def _repr_pretty_(self, p: MinimalRepresentationPrinter, cycle: bool) -> None:
        # Pretty repr for IPython.
        p.text(f'{self._get_repr_header()}\n')
        p.pretty(dict(self))

    def __setitem__(self, key: int, value: float, /) -> None:
        # Set `self[key]` to `value`, keeping the index order.
        self._validate_item(key, value)
        if key in self or key > self.max_index:
            super().__setitem__(key, value)
            return
        items = dict(self)
        items[key] = value
        super().clear()
        super().update(sorted(items.items()))

    def copy(self) -> SequenceTable:
        """Return a shallow copy of the SequenceTable.

        Returns
        -------
        SequenceTable
        """
        return SequenceTable(dict(self), name=self._name)

    def update(self, *args: Any, **kwargs: Any) -> NoReturn:
        """Not supported by SequenceTable."""
        raise AttributeError('`update` is not supported by SequenceTable')

    def _calc_stat(self, stat_func: str) -> float:
        """Calculate a statistic of the stored values.

        Parameters
        ----------
        stat_func : str
            Either `'sum'`, `'min'`, `'max'` or the name of a function of the `statistics`
            module of the standard library.

        Returns
        -------
        float

        Raises
        ------
        ValueError
            If `stat_func` is not found in the `statistics` module.
        StatisticsError
            If the SequenceTable is empty.
        """
        if stat_func not in _builtin_op and not hasattr(statistics, stat_func):
            raise ValueError('Given `stat_func` not found in the `statistics` module')
        if not self:
            raise statistics.StatisticsError(f'Cannot calculate `{stat_func}` of an empty table')
        if stat_func in _builtin_op:
            return _builtin_op[stat_func](self.values())
        res: float = getattr(statistics, stat_func)(self.values())
        return res

    def sum(self) -> float:
        """Calculate the sum of the stored values.

        Returns
        -------
        float

        Examples
        --------
        >>> SequenceTable({1: 1, 2: 4, 3: 9}).sum()
        14
        """
        return self._calc_stat('sum')

    def min(self) -> float:
        """Calculate the minimum of the stored values.

        Returns
        -------
        float
        """
        return self._calc_stat('min')

    def max(self) -> float:
        """Calculate the maximum of the stored values.

        Returns
        -------
        float
        """
        return self._calc_stat('max')

    def mean(self) -> float:
        """Calculate the mean of the stored values.

        Returns
        -------
        float
        """
        return self._calc_stat('mean')
