# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Multi-index sets of paired integer walks `(j|k)`."""

from __future__ import annotations

import enum
from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, NoReturn, SupportsIndex, overload

from typing_extensions import Self

if TYPE_CHECKING:
    from ._misc_types import MinimalRepresentationPrinter

MAX_ORDER = 24
"""Largest order `m` accepted by default; the unpruned sets have `2**m` elements."""


class Variant(enum.Enum):
    """Which of the four multi-index sets is meant."""

    I = 'I'  # noqa: E741
    I_HAT = 'I_hat'
    I_PLUS = 'I_plus'
    I_HAT_PLUS = 'I_hat_plus'

    @property
    def hatted(self) -> bool:
        """Whether elements carry the extra trailing index `j_{m+1}`.

        Returns
        -------
        bool
        """
        return self in (Variant.I_HAT, Variant.I_HAT_PLUS)

    @property
    def positive(self) -> bool:
        """Whether walks are restricted to `j_s >= 0` and `k_s >= 1`.

        Returns
        -------
        bool
        """
        return self in (Variant.I_PLUS, Variant.I_HAT_PLUS)

    @classmethod
    def parse(cls, value: Variant | str) -> Variant:
        """Coerce a variant name such as ``'I_plus'`` into a `Variant`.

        Parameters
        ----------
        value : Variant or str

        Returns
        -------
        Variant

        Raises
        ------
        ValueError
            If the name is unknown.
        """
        if isinstance(value, Variant):
            return value
        try:
            return cls(value)
        except ValueError:
            names = ', '.join(v.value for v in cls)
            raise ValueError(f'`variant` should be one of {names}') from None


@dataclass(frozen=True)
class MultiIndexPair:
    """One element `(j_1,...|k_1,...,k_m)` of a multi-index set.

    Step `s = 1..m` of the walk is stored at tuple position `s - 1`.

    Parameters
    ----------
    j : tuple of int
        Length `m` for unhatted variants and `m + 1` for hatted ones.
    k : tuple of int
        Length `m`.
    variant : Variant

    Examples
    --------
    >>> pair = MultiIndexPair((0, 1), (1, 2), Variant.I_PLUS)
    >>> str(pair)
    '(0,1|1,2)'
    >>> pair.full_j
    (0, 1, 2)
    """

    j: tuple[int, ...]
    k: tuple[int, ...]
    variant: Variant

    @property
    def m(self) -> int:
        """Order of the pair.

        Returns
        -------
        int
        """
        return len(self.k)

    @property
    def full_j(self) -> tuple[int, ...]:
        """The walk `j_1..j_{m+1}`, reconstructing the implied last step for unhatted pairs.

        Returns
        -------
        tuple of int
        """
        if len(self.j) == self.m + 1:
            return self.j
        last = self.j[-1] - 1 if self.k[-1] == self.j[-1] else self.j[-1] + 1
        return (*self.j, last)

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """The `(j, k)` tuples without the variant label.

        Returns
        -------
        tuple
        """
        return self.j, self.k

    def __str__(self) -> str:
        return f'({",".join(map(str, self.j))}|{",".join(map(str, self.k))})'


def is_valid(pair: MultiIndexPair) -> bool:
    """Check a pair against the defining relations of its variant.

    Parameters
    ----------
    pair : MultiIndexPair

    Returns
    -------
    bool

    Examples
    --------
    >>> is_valid(MultiIndexPair((0, 1, 0), (1, 1, 1), Variant.I_PLUS))
    True
    >>> is_valid(MultiIndexPair((0, 1), (0, 1), Variant.I_PLUS))
    False
    """
    variant = pair.variant
    m = len(pair.k)
    if m < 1 or len(pair.j) != m + variant.hatted:
        return False
    if pair.j[0] != 0:
        return False
    walk = pair.full_j
    for s in range(m):
        step_a = pair.k[s] == walk[s] and walk[s + 1] == walk[s] - 1
        step_b = pair.k[s] == walk[s] + 1 and walk[s + 1] == walk[s] + 1
        if not (step_a or step_b):
            return False
        if variant.positive and (walk[s] < 0 or pair.k[s] < 1):
            return False
    return not (variant is Variant.I_HAT_PLUS and walk[m] < 0)


def _check_order(m: int, cap: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int):
        raise TypeError('`m` should be an int')
    if not 1 <= m <= cap:
        raise ValueError(f'`m` should lie in 1..{cap}, got {m}')


@lru_cache(maxsize=64)
def _walks(variant: Variant, m: int) -> tuple[MultiIndexPair, ...]:
    out: list[MultiIndexPair] = []

    def branch(j: list[int], k: list[int]) -> None:
        s = len(k)
        if s == m:
            js = tuple(j) if variant.hatted else tuple(j[:-1])
            out.append(MultiIndexPair(js, tuple(k), variant))
            return
        cur = j[-1]
        # Branch A: k_s = j_s, j_{s+1} = j_s - 1
        if not variant.positive or cur >= 1:
            branch([*j, cur - 1], [*k, cur])
        # Branch B: k_s = j_s + 1, j_{s+1} = j_s + 1
        if not variant.positive or cur >= 0:
            branch([*j, cur + 1], [*k, cur + 1])

    branch([0], [])
    out.sort(key=lambda p: (p.j, p.k))
    return tuple(out)


class MultiIndexSet(Sequence[MultiIndexPair]):
    """Immutable, ordered, duplicate-free collection of multi-index pairs.

    Supports subset comparisons on the underlying `(j, k)` tuples, so sets of different variants
    can be compared after relabeling.

    Parameters
    ----------
    pairs : sequence of MultiIndexPair
    variant : Variant
    m : int

    Raises
    ------
    ValueError
        If the input includes duplicates or pairs of another order.
    """

    # Private attributes
    # ------------------
    # _list : list
    #     Pairs in lexicographic `(j, k)` order.
    # _set : frozenset
    #     `(j, k)` keys for membership tests and rich comparisons.
    # _variant : Variant
    # _m : int

    __slots__ = ('_list', '_set', '_variant', '_m')

    def __init__(self, pairs: Sequence[MultiIndexPair], variant: Variant, m: int) -> None:
        if any(p.m != m for p in pairs):
            raise ValueError(f'every pair should have order `m`={m}')
        keys = frozenset(p.key for p in pairs)
        if len(keys) < len(pairs):
            raise ValueError(f'input introduced duplicates in {self.__class__.__name__}')
        self._list = list(pairs)
        self._set = keys
        self._variant = variant
        self._m = m

    @property
    def variant(self) -> Variant:
        """Variant of the set.

        Returns
        -------
        Variant
        """
        return self._variant

    @property
    def m(self) -> int:
        """Order of the set.

        Returns
        -------
        int
        """
        return self._m

    def keys(self) -> frozenset[tuple[tuple[int, ...], tuple[int, ...]]]:
        """The `(j, k)` keys of all pairs.

        Returns
        -------
        frozenset
        """
        return self._set

    def _get_repr_header(self) -> str:
        return f'{self.__class__.__name__}: {self._variant.value}, m={self._m}'

    def __repr__(self) -> str:
        # Printable string representation.
        return f'{self._get_repr_header()}\n{{{", ".join(map(str, self._list))}}}'

    def _repr_pretty_(self, p: MinimalRepresentationPrinter, cycle: bool) -> None:
        # Pretty repr for IPython.
        p.text(self.__repr__())

    def _raise_op_not_supported_err(self, op_name: str) -> NoReturn:
        raise TypeError(
            f"'{op_name}' is only supported between instances of {self.__class__.__name__}"
        )

    def __lt__(self, other: Self, /) -> bool:
        # Proper subset on (j, k) keys.
        if not isinstance(other, MultiIndexSet):
            self._raise_op_not_supported_err('<')
        return self._set < other._set

    def __le__(self, other: Self, /) -> bool:
        # Subset on (j, k) keys.
        if not isinstance(other, MultiIndexSet):
            self._raise_op_not_supported_err('<=')
        return self._set <= other._set

    def __eq__(self, other: object, /) -> bool:
        if not isinstance(other, MultiIndexSet):
            self._raise_op_not_supported_err('==')
        return self._set == other._set

    def __ne__(self, other: object, /) -> bool:
        if not isinstance(other, MultiIndexSet):
            self._raise_op_not_supported_err('!=')
        return self._set != other._set

    def __gt__(self, other: Self, /) -> bool:
        if not isinstance(other, MultiIndexSet):
            self._raise_op_not_supported_err('>')
        return self._set > other._set

    def __ge__(self, other: Self, /) -> bool:
        if not isinstance(other, MultiIndexSet):
            self._raise_op_not_supported_err('>=')
        return self._set >= other._set

    __hash__ = None  # type: ignore[assignment]

    @overload
    def __getitem__(self, index: SupportsIndex, /) -> MultiIndexPair: ...

    @overload
    def __getitem__(self, index: slice, /) -> list[MultiIndexPair]: ...

    def __getitem__(self, index: SupportsIndex | slice, /) -> MultiIndexPair | list[MultiIndexPair]:
        # Get pair(s) at a position index or slice.
        try:
            return self._list[index]
        except IndexError:
            raise IndexError('position index out of range') from None

    def __contains__(self, elem: object, /) -> bool:
        # Membership on (j, k) keys.
        return isinstance(elem, MultiIndexPair) and elem.key in self._set

    def __iter__(self) -> Iterator[MultiIndexPair]:
        return iter(self._list)

    def __len__(self) -> int:
        return len(self._list)


def generate(variant: Variant | str, m: int, *, cap: int = MAX_ORDER) -> MultiIndexSet:
    """Generate a multi-index set by the two-branch walk recursion.

    Parameters
    ----------
    variant : Variant or {'I', 'I_hat', 'I_plus', 'I_hat_plus'}
    m : int
        Order of the set, 1 through `cap`.
    cap : int, default ``MAX_ORDER``
        Largest accepted order.

    Returns
    -------
    MultiIndexSet
        Pairs sorted lexicographically by `(j, k)`.

    Raises
    ------
    TypeError
        If `m` is not an int.
    ValueError
        If `m` lies outside 1..`cap` or `variant` is unknown.

    Examples
    --------
    >>> generate('I_plus', 3)
    MultiIndexSet: I_plus, m=3
    {(0,1,0|1,1,1), (0,1,2|1,2,2), (0,1,2|1,2,3)}
    >>> len(generate('I', 5))
    32
    """
    variant = Variant.parse(variant)
    _check_order(m, cap)
    return MultiIndexSet(_walks(variant, m), variant, m)


def cardinality(variant: Variant | str, m: int, *, cap: int = MAX_ORDER) -> int:
    """Size of a multi-index set, counted over walk endpoints without enumerating pairs.

    Parameters
    ----------
    variant : Variant or str
    m : int
    cap : int, default ``MAX_ORDER``

    Returns
    -------
    int

    Examples
    --------
    >>> [cardinality('I_plus', m) for m in range(1, 7)]
    [1, 2, 3, 6, 10, 20]
    >>> cardinality('I_hat', 10)
    1024
    """
    variant = Variant.parse(variant)
    _check_order(m, cap)
    counts: Counter[int] = Counter({0: 1})
    for _ in range(m):
        nxt: Counter[int] = Counter()
        for j, c in counts.items():
            if not variant.positive or j >= 1:
                nxt[j - 1] += c
            if not variant.positive or j >= 0:
                nxt[j + 1] += c
        counts = nxt
    return sum(counts.values())
