# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Declarative coefficient sequences `a_n > 0` and `b_n` of a Jacobi operator."""

from __future__ import annotations

import logging
import math
import threading
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, ClassVar, Literal, TypeAlias

import numpy as np
import numpy.typing as npt

from ._exceptions import CoefficientDomainError
from ._sequence_tables import SequenceTable

logger = logging.getLogger(__name__)

Which: TypeAlias = Literal['a', 'b']
Rational: TypeAlias = Fraction | int | float | str


def as_fraction(value: Rational, name: str) -> Fraction:
    """Convert a number or a decimal/ratio string into an exact `Fraction`.

    Floats are converted through their shortest repr, so ``0.1`` becomes ``1/10``.

    Parameters
    ----------
    value : Fraction or int or float or str
    name : str
        Name used in error messages.

    Returns
    -------
    Fraction

    Raises
    ------
    TypeError
        If `value` is not a number or string.
    ValueError
        If `value` is not finite or cannot be parsed.

    Examples
    --------
    >>> as_fraction(0.25, 'x')
    Fraction(1, 4)
    >>> as_fraction('17/4', 'x')
    Fraction(17, 4)
    """
    match value:
        case bool():
            raise TypeError(f'`{name}` should be a number')
        case Fraction():
            return value
        case int():
            return Fraction(value)
        case float():
            if not math.isfinite(value):
                raise ValueError(f'`{name}` should be finite')
            return Fraction(repr(value))
        case str():
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                raise ValueError(f'`{name}` should be a rational number, got {value!r}') from None
        case _:
            raise TypeError(f'`{name}` should be a number')


def _check_index(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int | np.integer):
        raise TypeError('`n` should be an int')
    if n < 1:
        raise CoefficientDomainError(f'`n` should be a positive integer, got {n}')


@dataclass(frozen=True, init=False)
class PowerTerm:
    """Signed power law `sign * constant * n**exponent`.

    Parameters
    ----------
    constant : Fraction or int or float or str, default ``1``
        Positive constant.
    exponent : Fraction or int or float or str, default ``0``
        Rational exponent, stored in lowest terms.
    sign : {1, -1, 0}, default ``1``
        Sign of the term; ``0`` denotes the identically zero sequence.

    Examples
    --------
    >>> PowerTerm(1, 2).value(3)
    9.0
    >>> PowerTerm(1, '1/2').exponent
    Fraction(1, 2)
    """

    constant: Fraction
    exponent: Fraction
    sign: int

    def __init__(self, constant: Rational = 1, exponent: Rational = 0, sign: int = 1) -> None:
        value = as_fraction(constant, 'constant')
        if value <= 0:
            raise ValueError('`constant` should be positive')
        object.__setattr__(self, 'constant', value)
        object.__setattr__(self, 'exponent', as_fraction(exponent, 'exponent'))
        object.__setattr__(self, 'sign', sign)
        if sign not in (-1, 0, 1):
            raise ValueError('`sign` should be one of -1, 0, 1')

    @classmethod
    def zero(cls) -> PowerTerm:
        """Return the identically zero term.

        Returns
        -------
        PowerTerm
        """
        return cls(1, 0, 0)

    def value(self, n: int) -> float:
        """Evaluate the term at `n`.

        Parameters
        ----------
        n : int

        Returns
        -------
        float
        """
        if self.sign == 0:
            return 0.0
        return self.sign * float(self.constant) * float(n) ** float(self.exponent)

    def log_abs(self, n: int) -> float:
        """Natural logarithm of the magnitude at `n`.

        Parameters
        ----------
        n : int

        Returns
        -------
        float
        """
        if self.sign == 0:
            return -math.inf
        return math.log(self.constant) + float(self.exponent) * math.log(n)

    def to_mapping(self) -> dict[str, Any]:
        """Serialize into the coefficient document format.

        Returns
        -------
        dict
        """
        return {
            'constant': str(self.constant),
            'exponent_num': self.exponent.numerator,
            'exponent_den': self.exponent.denominator,
            'sign': self.sign,
        }


# Sampled value of a sequence: (sign, value, log |value|)
Sample: TypeAlias = tuple[int, float, float]


@dataclass(frozen=True, eq=False)
class ListOverride:
    """Explicit finite list of replaced terms.

    Parameters
    ----------
    values : SequenceTable
    """

    kind: ClassVar[str] = 'list'
    sparse: ClassVar[bool] = True
    values: SequenceTable

    def covers(self, n: int) -> bool:  # numpydoc ignore=GL08
        return n in self.values

    def sample(self, n: int) -> Sample:  # numpydoc ignore=GL08
        value = float(self.values[n])
        sign = (value > 0) - (value < 0)
        return sign, value, math.log(abs(value)) if value else -math.inf

    def to_mapping(self) -> dict[str, Any]:  # numpydoc ignore=GL08
        return {'kind': self.kind, 'values': {str(k): v for k, v in self.values.items()}}


@dataclass(frozen=True)
class SquaresOverride:
    """Geometric values `base**n` on the perfect squares `n = k**2`.

    Parameters
    ----------
    base : Fraction or float or str
        Base in the open interval (0, 1).
    """

    kind: ClassVar[str] = 'squares'
    sparse: ClassVar[bool] = True
    base: Fraction

    def __post_init__(self) -> None:
        base = as_fraction(self.base, 'base')
        if not 0 < base < 1:
            raise ValueError('`base` should lie in the open interval (0, 1)')
        object.__setattr__(self, 'base', base)

    def covers(self, n: int) -> bool:  # numpydoc ignore=GL08
        root = math.isqrt(n)
        return root * root == n

    def sample(self, n: int) -> Sample:  # numpydoc ignore=GL08
        log = n * math.log(self.base)
        return 1, float(self.base) ** n, log

    def to_mapping(self) -> dict[str, Any]:  # numpydoc ignore=GL08
        return {'kind': self.kind, 'base': str(self.base)}


@dataclass(frozen=True)
class ResidueOverride:
    """Power-law values on one residue class `n = residue (mod modulus)`.

    Parameters
    ----------
    modulus : int
    residue : int
    term : PowerTerm
    """

    kind: ClassVar[str] = 'residue'
    sparse: ClassVar[bool] = False
    modulus: int
    residue: int
    term: PowerTerm

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError('`modulus` should be a positive integer')
        if not 0 <= self.residue < self.modulus:
            raise ValueError('`residue` should lie in 0..modulus-1')

    def covers(self, n: int) -> bool:  # numpydoc ignore=GL08
        return n % self.modulus == self.residue

    def sample(self, n: int) -> Sample:  # numpydoc ignore=GL08
        return self.term.sign, self.term.value(n), self.term.log_abs(n)

    def to_mapping(self) -> dict[str, Any]:  # numpydoc ignore=GL08
        return {
            'kind': self.kind,
            'modulus': self.modulus,
            'residue': self.residue,
            **self.term.to_mapping(),
        }


Override: TypeAlias = ListOverride | SquaresOverride | ResidueOverride


@dataclass(frozen=True, eq=False)
class BranchRule:
    """Power laws per residue class of `n` modulo `modulus`, with an optional override.

    Parameters
    ----------
    modulus : int
        Number of residue classes `q`.
    branches : sequence of PowerTerm
        One term per residue class `0..q-1`.
    override : ListOverride or SquaresOverride or ResidueOverride, optional

    Examples
    --------
    Example with parity split `n**3` for even `n` and `n**-3` for odd `n`:

    >>> rule = BranchRule(2, [PowerTerm(1, 3), PowerTerm(1, -3)])
    >>> rule.sample(2)[1]
    8.0
    """

    modulus: int
    branches: tuple[PowerTerm, ...]
    override: Override | None = None

    def __post_init__(self) -> None:
        if isinstance(self.modulus, bool) or not isinstance(self.modulus, int) or self.modulus < 1:
            raise ValueError('`modulus` should be a positive integer')
        branches = tuple(self.branches)
        if len(branches) != self.modulus:
            raise ValueError('every residue class should have exactly one branch')
        if not all(isinstance(term, PowerTerm) for term in branches):
            raise TypeError('`branches` should be PowerTerm instances')
        object.__setattr__(self, 'branches', branches)

    @classmethod
    def power(cls, constant: Rational = 1, exponent: Rational = 0, sign: int = 1) -> BranchRule:
        """Single power law on all of `n`.

        Parameters
        ----------
        constant : Fraction or int or float or str, default ``1``
        exponent : Fraction or int or float or str, default ``0``
        sign : {1, -1, 0}, default ``1``

        Returns
        -------
        BranchRule
        """
        return cls(1, (PowerTerm(constant, exponent, sign),))

    def term(self, n: int) -> PowerTerm:
        """Branch responsible for index `n`, ignoring the override.

        Parameters
        ----------
        n : int

        Returns
        -------
        PowerTerm
        """
        return self.branches[n % self.modulus]

    def sample(self, n: int) -> Sample:
        """Sign, value and log-magnitude at `n`.

        Parameters
        ----------
        n : int

        Returns
        -------
        (int, float, float)
        """
        if self.override is not None and self.override.covers(n):
            return self.override.sample(n)
        term = self.term(n)
        return term.sign, term.value(n), term.log_abs(n)

    def to_mapping(self) -> dict[str, Any]:
        """Serialize into the coefficient document format.

        Returns
        -------
        dict
        """
        doc: dict[str, Any] = {
            'modulus': self.modulus,
            'branches': [
                {'residue': r, **term.to_mapping()} for r, term in enumerate(self.branches)
            ],
        }
        if self.override is not None:
            doc['override'] = self.override.to_mapping()
        return doc


@dataclass(frozen=True, eq=False)
class RecursiveRule:
    """Recursive sequence `x_n = factor(n) * base_{n-1}` with `x_1 = seed`.

    Parameters
    ----------
    seed : Fraction or int or float or str
        Value at `n = 1`.
    factors : sequence of PowerTerm
        One factor per residue class of `n` modulo ``len(factors)``.
    base : {'self', 'a'}, default ``'self'``
        Sequence whose previous term is multiplied: the sequence itself, or `a` (only allowed for
        the `b` sequence).
    """

    seed: Fraction
    factors: tuple[PowerTerm, ...]
    base: Literal['self', 'a'] = 'self'

    def __post_init__(self) -> None:
        seed = as_fraction(self.seed, 'seed')
        if seed == 0:
            raise ValueError('`seed` should be nonzero')
        object.__setattr__(self, 'seed', seed)
        factors = tuple(self.factors)
        if not factors or not all(isinstance(f, PowerTerm) for f in factors):
            raise TypeError('`factors` should be a nonempty sequence of PowerTerm')
        object.__setattr__(self, 'factors', factors)
        if self.base not in ('self', 'a'):
            raise ValueError("`base` should be either 'self' or 'a'")

    @property
    def modulus(self) -> int:
        """Number of residue classes of the factors.

        Returns
        -------
        int
        """
        return len(self.factors)

    def factor(self, n: int) -> PowerTerm:
        """Factor applied at step `n`.

        Parameters
        ----------
        n : int

        Returns
        -------
        PowerTerm
        """
        return self.factors[n % self.modulus]

    def to_mapping(self) -> dict[str, Any]:
        """Serialize into the coefficient document format.

        Returns
        -------
        dict
        """
        return {
            'recursive': {
                'seed': str(self.seed),
                'base': self.base,
                'modulus': self.modulus,
                'factors': [
                    {'residue': r, **term.to_mapping()} for r, term in enumerate(self.factors)
                ],
            }
        }


@dataclass(frozen=True, eq=False)
class TabulatedRule:
    """Sequence given by explicit values for `n = 1..len(table)`.

    Parameters
    ----------
    table : SequenceTable
    """

    table: SequenceTable

    def __post_init__(self) -> None:
        if not isinstance(self.table, SequenceTable):
            object.__setattr__(self, 'table', SequenceTable(self.table))
        if not self.table or not self.table.is_contiguous():
            raise ValueError('tabulated values should cover every index 1..n_max')

    def sample(self, n: int) -> Sample:  # numpydoc ignore=GL08
        try:
            value = float(self.table[n])
        except KeyError:
            raise CoefficientDomainError(
                f'`n`={n} is beyond the tabulated range 1..{self.table.max_index}'
            ) from None
        sign = (value > 0) - (value < 0)
        return sign, value, math.log(abs(value)) if value else -math.inf

    def to_mapping(self) -> dict[str, Any]:  # numpydoc ignore=GL08
        return {'table': [self.table[n] for n in range(1, self.table.max_index + 1)]}


Rule: TypeAlias = BranchRule | RecursiveRule | TabulatedRule


class _Memo:
    """Insert-once memo table of a recursive sequence."""

    __slots__ = ('lock', 'signs', 'values', 'logs')

    def __init__(self) -> None:
        self.lock = threading.Lock()
        self.signs: list[int] = []
        self.values: list[float] = []
        self.logs: list[float] = []


@dataclass(frozen=True, eq=False)
class CoefficientSpec:
    """Coefficient sequences `a_n > 0` and `b_n` defining a Jacobi operator.

    Parameters
    ----------
    a_rule : BranchRule or RecursiveRule or TabulatedRule
        Off-diagonal sequence; every term should be strictly positive.
    b_rule : BranchRule or RecursiveRule or TabulatedRule
        Diagonal sequence; terms may be zero or negative.
    name : str, optional
        Label used in reports.

    Raises
    ------
    TypeError
        If a rule is of an unsupported type.
    ValueError
        If the `a` rule allows non-positive terms.

    Examples
    --------
    >>> spec = CoefficientSpec.powers(2, 3)
    >>> spec.eval_a(3), spec.eval_b(2)
    (9.0, 8.0)
    """

    a_rule: Rule
    b_rule: Rule
    name: str | None = None
    _memos: dict[str, _Memo] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for which, rule in (('a', self.a_rule), ('b', self.b_rule)):
            if not isinstance(rule, BranchRule | RecursiveRule | TabulatedRule):
                raise TypeError(f'`{which}_rule` should be a BranchRule, RecursiveRule or '
                                'TabulatedRule')
        match self.a_rule:
            case BranchRule(branches=branches, override=override):
                if any(term.sign != 1 for term in branches):
                    raise ValueError('`a` branches should have positive sign')
                if isinstance(override, ResidueOverride) and override.term.sign != 1:
                    raise ValueError('`a` override should have positive sign')
            case RecursiveRule(seed=seed, factors=factors, base=base):
                if base != 'self':
                    raise ValueError("`a` recursion should use base 'self'")
                if seed <= 0 or any(term.sign != 1 for term in factors):
                    raise ValueError('`a` recursion should have positive seed and factors')
        object.__setattr__(self, '_memos', {'a': _Memo(), 'b': _Memo()})

    @classmethod
    def powers(
        cls,
        a_exponent: Rational,
        b_exponent: Rational,
        *,
        a_constant: Rational = 1,
        b_constant: Rational = 1,
        b_sign: int = 1,
        name: str | None = None,
    ) -> CoefficientSpec:
        """Pure power laws `a_n = A n**alpha`, `b_n = sign B n**beta`.

        Parameters
        ----------
        a_exponent, b_exponent : Fraction or int or float or str
        a_constant, b_constant : Fraction or int or float or str, default ``1``
        b_sign : {1, -1, 0}, default ``1``
        name : str, optional

        Returns
        -------
        CoefficientSpec
        """
        return cls(
            BranchRule.power(a_constant, a_exponent),
            BranchRule.power(b_constant, b_exponent, b_sign),
            name=name,
        )

    @classmethod
    def tabulated(
        cls, a_values: Sequence[float], b_values: Sequence[float], *, name: str | None = None
    ) -> CoefficientSpec:
        """Spec from finite tables of `a_1..a_n` and `b_1..b_n`.

        Parameters
        ----------
        a_values, b_values : sequence of float
        name : str, optional

        Returns
        -------
        CoefficientSpec
        """
        return cls(
            TabulatedRule(SequenceTable(dict(enumerate(map(float, a_values), 1)), name='a')),
            TabulatedRule(SequenceTable(dict(enumerate(map(float, b_values), 1)), name='b')),
            name=name,
        )

    def _rule(self, which: Which) -> Rule:
        return self.a_rule if which == 'a' else self.b_rule

    def _extend_memo(self, which: Which, n: int) -> None:
        # Unroll the recursion up to `n`, one multiplication per step.
        rule = self._rule(which)
        assert isinstance(rule, RecursiveRule)
        if rule.base == 'a':
            self.sample('a', max(n - 1, 1))
            base_memo = self._memos['a']
        memo = self._memos[which]
        with memo.lock:
            if rule.base == 'self':
                base_memo = memo
            while len(memo.values) < n:
                k = len(memo.values) + 1
                if k == 1:
                    value = float(rule.seed)
                    memo.signs.append(1 if rule.seed > 0 else -1)
                    memo.values.append(value)
                    memo.logs.append(math.log(abs(rule.seed)))
                    continue
                factor = rule.factor(k)
                memo.signs.append(factor.sign * base_memo.signs[k - 2])
                memo.values.append(factor.value(k) * base_memo.values[k - 2])
                memo.logs.append(factor.log_abs(k) + base_memo.logs[k - 2])
            if n > 1000 and n % 1000 == 0:
                logger.debug('recursive %s memo extended to n=%d', which, n)

    def sample(self, which: Which, n: int) -> Sample:
        """Sign, value and log-magnitude of `a_n` or `b_n`.

        The value may overflow to infinity for recursive sequences; the log-magnitude stays exact.

        Parameters
        ----------
        which : {'a', 'b'}
        n : int

        Returns
        -------
        (int, float, float)
        """
        _check_index(n)
        n = int(n)
        rule = self._rule(which)
        match rule:
            case RecursiveRule():
                memo = self._memos[which]
                if len(memo.values) < n:
                    self._extend_memo(which, n)
                return memo.signs[n - 1], memo.values[n - 1], memo.logs[n - 1]
            case _:
                return rule.sample(n)

    def eval_a(self, n: int) -> float:
        """Evaluate `a_n`.

        Parameters
        ----------
        n : int

        Returns
        -------
        float

        Raises
        ------
        CoefficientDomainError
            If `n` < 1 or the value is not positive and finite.
        """
        sign, value, _ = self.sample('a', n)
        if sign != 1 or not math.isfinite(value) or value <= 0:
            raise CoefficientDomainError(f'`a_n` at `n`={n} is {value}; should be positive')
        return value

    def eval_b(self, n: int) -> float:
        """Evaluate `b_n`.

        Parameters
        ----------
        n : int

        Returns
        -------
        float

        Raises
        ------
        CoefficientDomainError
            If `n` < 1 or the value is not finite.
        """
        _, value, _ = self.sample('b', n)
        if not math.isfinite(value):
            raise CoefficientDomainError(f'`b_n` at `n`={n} is not finite')
        return value

    def ratio(self, num: int, den: int) -> float:
        """Return `a_num / |b_den|`, computed in log space when values leave the float range.

        `a_k = 0` for `k <= 0`, and the ratio is ``inf`` when `b_den = 0` with `a_num > 0`.

        Parameters
        ----------
        num : int
        den : int

        Returns
        -------
        float
        """
        if num <= 0:
            return 0.0
        _, va, la = self.sample('a', num)
        sb, vb, lb = self.sample('b', den)
        if sb == 0:
            return math.inf
        if math.isfinite(va) and math.isfinite(vb) and va > 0 and vb != 0:
            res = va / abs(vb)
            if res != 0 and math.isfinite(res):
                return res
        try:
            return math.exp(la - lb)
        except OverflowError:
            return math.inf

    def gamma_plus(self, i: int) -> float:
        """Return `a_i / |b_i|`.

        Parameters
        ----------
        i : int

        Returns
        -------
        float
        """
        return self.ratio(i, i)

    def gamma_minus(self, i: int) -> float:
        """Return `a_{i-1} / |b_i|`, zero for `i = 1`.

        Parameters
        ----------
        i : int

        Returns
        -------
        float
        """
        return self.ratio(i - 1, i)

    def a_array(self, start: int, stop: int) -> npt.NDArray[np.float64]:
        """Terms `a_start..a_stop` (inclusive) as an array.

        Parameters
        ----------
        start, stop : int

        Returns
        -------
        numpy.ndarray
        """
        return np.fromiter((self.eval_a(n) for n in range(start, stop + 1)), dtype=np.float64)

    def b_array(self, start: int, stop: int) -> npt.NDArray[np.float64]:
        """Terms `b_start..b_stop` (inclusive) as an array.

        Parameters
        ----------
        start, stop : int

        Returns
        -------
        numpy.ndarray
        """
        return np.fromiter((self.eval_b(n) for n in range(start, stop + 1)), dtype=np.float64)

    def has_override(self, *, sparse_only: bool = False) -> bool:
        """Whether either sequence carries an override.

        Parameters
        ----------
        sparse_only : bool, default ``False``
            Only count explicit-list and perfect-square overrides.

        Returns
        -------
        bool
        """
        for rule in (self.a_rule, self.b_rule):
            if isinstance(rule, BranchRule) and rule.override is not None:
                if not sparse_only or rule.override.sparse:
                    return True
        return False

    def asymptotic_exponent(self, which: Which, residue: int) -> Fraction | None:
        """Power-law exponent of `a` or `b` on a residue class, when the sequence is one.

        Parameters
        ----------
        which : {'a', 'b'}
        residue : int
            Residue of `n`, taken modulo the period of the sequence.

        Returns
        -------
        Fraction or None
            ``None`` signals that symbolic mode is unavailable.
        """
        from ._exponents import sequence_laws

        rule = self._rule(which)
        if isinstance(rule, BranchRule) and rule.override is not None:
            return None
        laws = sequence_laws(self, which)
        if laws is None:
            return None
        law = laws[residue % len(laws)]
        return None if law.sign == 0 else law.exponent

    @classmethod
    def from_mapping(cls, doc: Mapping[str, Any], *, name: str | None = None) -> CoefficientSpec:
        """Parse a coefficient document with keys `a` and `b`.

        Parameters
        ----------
        doc : mapping
        name : str, optional

        Returns
        -------
        CoefficientSpec

        Raises
        ------
        CoefficientDomainError
            If the document is malformed.

        Examples
        --------
        >>> spec = CoefficientSpec.from_mapping(
        ...     {
        ...         'a': {'branches': [{'constant': 1, 'exponent_num': 2}]},
        ...         'b': {'branches': [{'constant': 1, 'exponent_num': 3}]},
        ...     }
        ... )
        >>> spec.eval_b(2)
        8.0
        """
        if not isinstance(doc, Mapping):
            raise CoefficientDomainError('coefficient document should be a mapping')
        try:
            a_rule = _parse_rule(doc['a'], 'a')
            b_rule = _parse_rule(doc['b'], 'b')
            return cls(a_rule, b_rule, name=name or doc.get('name'))
        except KeyError as exc:
            raise CoefficientDomainError(f'missing key {exc.args[0]!r}') from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, CoefficientDomainError):
                raise
            raise CoefficientDomainError(str(exc)) from None

    def to_mapping(self) -> dict[str, Any]:
        """Serialize into the coefficient document format.

        Returns
        -------
        dict
        """
        doc: dict[str, Any] = {'a': self.a_rule.to_mapping(), 'b': self.b_rule.to_mapping()}
        if self.name is not None:
            doc['name'] = self.name
        return doc


def _parse_term(doc: Mapping[str, Any], path: str) -> PowerTerm:
    if not isinstance(doc, Mapping):
        raise CoefficientDomainError(f'`{path}` should be a mapping')
    if 'exponent' in doc:
        exponent = as_fraction(doc['exponent'], f'{path}.exponent')
    else:
        num = doc.get('exponent_num', 0)
        den = doc.get('exponent_den', 1)
        if isinstance(den, bool) or not isinstance(den, int) or den <= 0:
            raise CoefficientDomainError(f'`{path}.exponent_den` should be a positive integer')
        if isinstance(num, bool) or not isinstance(num, int):
            raise CoefficientDomainError(f'`{path}.exponent_num` should be an integer')
        exponent = Fraction(num, den)
    return PowerTerm(doc.get('constant', 1), exponent, doc.get('sign', 1))


def _parse_terms(items: Sequence[Any], modulus: int, path: str) -> tuple[PowerTerm, ...]:
    if isinstance(items, str | bytes) or not isinstance(items, Sequence):
        raise CoefficientDomainError(f'`{path}` should be an array')
    by_residue: dict[int, PowerTerm] = {}
    for pos, item in enumerate(items):
        residue = item.get('residue', pos) if isinstance(item, Mapping) else pos
        if not isinstance(residue, int) or not 0 <= residue < modulus:
            raise CoefficientDomainError(f'`{path}[{pos}].residue` should lie in 0..{modulus - 1}')
        if residue in by_residue:
            raise CoefficientDomainError(f'`{path}` repeats residue {residue}')
        by_residue[residue] = _parse_term(item, f'{path}[{pos}]')
    if len(by_residue) != modulus:
        raise CoefficientDomainError(f'`{path}` should cover every residue 0..{modulus - 1}')
    return tuple(by_residue[r] for r in range(modulus))


def _parse_override(doc: Mapping[str, Any], path: str) -> Override:
    kind = doc.get('kind')
    match kind:
        case 'list':
            values = doc.get('values', {})
            if isinstance(values, Mapping):
                table = {int(k): float(v) for k, v in values.items()}
            else:
                table = {int(k): float(v) for k, v in values}
            return ListOverride(SequenceTable(table))
        case 'squares':
            return SquaresOverride(as_fraction(doc['base'], f'{path}.base'))
        case 'residue':
            return ResidueOverride(int(doc['modulus']), int(doc['residue']), _parse_term(doc, path))
        case _:
            raise CoefficientDomainError(f'`{path}.kind` {kind!r} is not a supported override')


def _parse_rule(doc: Any, which: Which) -> Rule:
    if not isinstance(doc, Mapping):
        raise CoefficientDomainError(f'`{which}` should be a mapping')
    if 'recursive' in doc:
        rec = doc['recursive']
        modulus = rec.get('modulus', len(rec.get('factors', ())))
        factors = _parse_terms(rec.get('factors', ()), modulus, f'{which}.recursive.factors')
        return RecursiveRule(rec.get('seed', 1), factors, rec.get('base', 'self'))
    if 'table' in doc:
        table = SequenceTable(dict(enumerate(map(float, doc['table']), 1)), name=which)
        return TabulatedRule(table)
    modulus = doc.get('modulus', 1)
    if isinstance(modulus, bool) or not isinstance(modulus, int) or modulus < 1:
        raise CoefficientDomainError(f'`{which}.modulus` should be a positive integer')
    branches = _parse_terms(doc.get('branches', ()), modulus, f'{which}.branches')
    override = None
    if doc.get('override') is not None:
        override = _parse_override(doc['override'], f'{which}.override')
    return BranchRule(modulus, branches, override)


def eval_a(spec: CoefficientSpec, n: int) -> float:
    """Evaluate `a_n` of a spec.

    Parameters
    ----------
    spec : CoefficientSpec
    n : int

    Returns
    -------
    float

    Examples
    --------
    >>> eval_a(CoefficientSpec.powers(2, 3), 3)
    9.0
    """
    return spec.eval_a(n)


def eval_b(spec: CoefficientSpec, n: int) -> float:
    """Evaluate `b_n` of a spec.

    Parameters
    ----------
    spec : CoefficientSpec
    n : int

    Returns
    -------
    float
    """
    return spec.eval_b(n)


def asymptotic_exponent(spec: CoefficientSpec, which: Which, residue: int) -> Fraction | None:
    """Power-law exponent of `a` or `b` on a residue class; see `CoefficientSpec`.

    Parameters
    ----------
    spec : CoefficientSpec
    which : {'a', 'b'}
    residue : int

    Returns
    -------
    Fraction or None
    """
    return spec.asymptotic_exponent(which, residue)
