# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Exact power-law bookkeeping per residue class of `n`.

A sequence is described on each residue class `r` of `n` modulo a period `L` by a leading term
`C n**e`. Shifting the index by a fixed amount changes the class but not the leading term, so the
multi-index sums reduce to walks over residue classes with exact rational exponents.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Literal, TypeAlias

from ._coeffseq import (
    BranchRule,
    CoefficientSpec,
    ListOverride,
    PowerTerm,
    RecursiveRule,
    ResidueOverride,
    Rule,
    SquaresOverride,
    TabulatedRule,
    Which,
)

logger = logging.getLogger(__name__)

ProductKind: TypeAlias = Literal['G_plus_times_a', 'G_full_times_a', 'G_tilde', 'G_full']


@dataclass(frozen=True)
class PowerLaw:
    """Leading term `sign * constant * n**exponent` of a sequence on one residue class.

    Examples
    --------
    >>> (PowerLaw(Fraction(2), Fraction(3)) * PowerLaw(Fraction(1, 2), Fraction(-1))).exponent
    Fraction(2, 1)
    """

    constant: Fraction
    exponent: Fraction
    sign: int = 1

    @classmethod
    def from_term(cls, term: PowerTerm) -> PowerLaw:  # numpydoc ignore=GL08
        return cls(term.constant, term.exponent, term.sign)

    def __mul__(self, other: PowerLaw) -> PowerLaw:
        return PowerLaw(
            self.constant * other.constant, self.exponent + other.exponent, self.sign * other.sign
        )

    def reciprocal(self) -> PowerLaw:
        """Leading term of `1 / x_n`.

        Returns
        -------
        PowerLaw

        Raises
        ------
        ZeroDivisionError
            If the law is identically zero.
        """
        if self.sign == 0:
            raise ZeroDivisionError('reciprocal of an identically zero sequence')
        return PowerLaw(1 / self.constant, -self.exponent, self.sign)

    def magnitude(self) -> PowerLaw:
        """Leading term of `|x_n|`.

        Returns
        -------
        PowerLaw
        """
        return PowerLaw(self.constant, self.exponent, abs(self.sign))

    def squared(self) -> PowerLaw:
        """Leading term of `x_n**2`.

        Returns
        -------
        PowerLaw
        """
        return PowerLaw(self.constant**2, 2 * self.exponent, abs(self.sign))


class ExponentSum:
    """Sum of positive power laws, collected per residue class of `n`.

    Each class maps an exponent to the summed constant of all terms with that exponent.

    Parameters
    ----------
    classes : list of dict
        One `{exponent: coefficient}` mapping per residue class `0..L-1`.

    Examples
    --------
    >>> s = ExponentSum([{Fraction(1): Fraction(2), Fraction(-1): Fraction(1)}])
    >>> s.dominant(0)
    (Fraction(1, 1), Fraction(2, 1))
    """

    __slots__ = ('_classes',)

    def __init__(self, classes: list[dict[Fraction, Fraction]]) -> None:
        for terms in classes:
            if not terms or any(c <= 0 for c in terms.values()):
                raise ValueError('every class should hold at least one positive coefficient')
        self._classes = tuple(dict(sorted(terms.items(), reverse=True)) for terms in classes)

    @property
    def period(self) -> int:
        """Number of residue classes.

        Returns
        -------
        int
        """
        return len(self._classes)

    def terms(self, residue: int) -> dict[Fraction, Fraction]:
        """All `{exponent: coefficient}` pairs of a class, largest exponent first.

        Parameters
        ----------
        residue : int

        Returns
        -------
        dict
        """
        return dict(self._classes[residue % self.period])

    def dominant(self, residue: int) -> tuple[Fraction, Fraction]:
        """Largest exponent of a class and its coefficient.

        Parameters
        ----------
        residue : int

        Returns
        -------
        (Fraction, Fraction)
        """
        terms = self._classes[residue % self.period]
        exponent = next(iter(terms))
        return exponent, terms[exponent]

    def dominants(self) -> list[tuple[Fraction, Fraction]]:
        """Dominant `(exponent, coefficient)` of every class.

        Returns
        -------
        list
        """
        return [self.dominant(r) for r in range(self.period)]

    def max_exponent(self) -> Fraction:
        """Largest exponent over all classes.

        Returns
        -------
        Fraction
        """
        return max(e for e, _ in self.dominants())

    def limsup_constant(self) -> Fraction:
        """Largest coefficient among the classes attaining `max_exponent`.

        Returns
        -------
        Fraction
        """
        top = self.max_exponent()
        return max(c for e, c in self.dominants() if e == top)

    def shifted(self, laws: tuple[PowerLaw, ...]) -> ExponentSum:
        """Multiply class `r` by ``laws[r % len(laws)]``.

        Parameters
        ----------
        laws : tuple of PowerLaw

        Returns
        -------
        ExponentSum
        """
        out = []
        for r, terms in enumerate(self._classes):
            law = laws[r % len(laws)]
            out.append({e + law.exponent: c * law.constant for e, c in terms.items()})
        return ExponentSum(out)

    def to_mapping(self) -> dict[str, dict[str, str]]:
        """Serialize as ``{residue: {exponent: coefficient}}`` with rationals as strings.

        Returns
        -------
        dict
        """
        return {
            str(r): {str(e): str(c) for e, c in terms.items()}
            for r, terms in enumerate(self._classes)
        }

    def __repr__(self) -> str:
        body = ', '.join(f'{r}: n^{e} * {c}' for r, (e, c) in enumerate(self.dominants()))
        return f'{self.__class__.__name__}({body})'


@dataclass(frozen=True)
class AsymptoticProfile:
    """Per-class power laws of `a`, `b`, `gamma+` and `gamma-` of a spec.

    `gamma_plus[r]` and `gamma_minus[r]` are ``None`` on classes where `b` vanishes identically.
    `a` (resp. `b`) is ``None`` when the sequence grows faster than any power.
    """

    period: int
    a: tuple[PowerLaw, ...] | None
    b: tuple[PowerLaw, ...] | None
    gamma_plus: tuple[PowerLaw | None, ...]
    gamma_minus: tuple[PowerLaw | None, ...]
    b_signs: tuple[int, ...]
    a_superpoly: bool = False
    b_superpoly: bool = False
    sparse_a: SquaresOverride | None = None
    sparse_b: SquaresOverride | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def zero_b_classes(self) -> tuple[int, ...]:
        """Residue classes on which `b` vanishes identically.

        Returns
        -------
        tuple of int
        """
        return tuple(r for r, s in enumerate(self.b_signs) if s == 0)

    def b_diverges(self) -> bool:
        """Whether `|b_n| -> inf` along every class.

        Returns
        -------
        bool
        """
        if self.sparse_b is not None:
            return False
        if self.b_superpoly:
            return True
        assert self.b is not None
        return all(law.sign != 0 and law.exponent > 0 for law in self.b)

    def a_diverges(self) -> bool:
        """Whether `a_n -> inf` along every class.

        Returns
        -------
        bool
        """
        if self.sparse_a is not None:
            return False
        if self.a_superpoly:
            return True
        assert self.a is not None
        return all(law.exponent > 0 for law in self.a)


def _period_of(*moduli: int) -> int:
    return reduce(math.lcm, moduli, 1)


def _rule_moduli(rule: BranchRule | RecursiveRule | TabulatedRule) -> list[int]:
    match rule:
        case BranchRule(modulus=q, override=ResidueOverride(modulus=qo)):
            return [q, qo]
        case BranchRule(modulus=q):
            return [q]
        case RecursiveRule():
            return [rule.modulus]
        case _:
            return [1]


def _branch_laws(rule: BranchRule, period: int) -> tuple[PowerLaw, ...]:
    laws = []
    for r in range(period):
        override = rule.override
        if isinstance(override, ResidueOverride) and override.covers(r):
            laws.append(PowerLaw.from_term(override.term))
        else:
            laws.append(PowerLaw.from_term(rule.term(r)))
    return tuple(laws)


def _is_trivial(rule: RecursiveRule) -> bool:
    return all(f.constant == 1 and f.exponent == 0 and f.sign == 1 for f in rule.factors)


def _is_superpoly(rule: RecursiveRule) -> bool:
    return all(f.sign == 1 and f.exponent >= 0 and f.constant >= 1 for f in rule.factors) and any(
        f.exponent > 0 for f in rule.factors
    )


def _constant_laws(seed: Fraction, period: int) -> tuple[PowerLaw, ...]:
    sign = 1 if seed > 0 else -1
    return (PowerLaw(abs(seed), Fraction(0), sign),) * period


def _laws(
    spec: CoefficientSpec, which: Which, period: int
) -> tuple[PowerLaw, ...] | Literal['superpoly'] | None:
    rule = spec.a_rule if which == 'a' else spec.b_rule
    match rule:
        case BranchRule():
            return _branch_laws(rule, period)
        case RecursiveRule() if _is_trivial(rule) and rule.base == 'self':
            return _constant_laws(rule.seed, period)
        case RecursiveRule(base='self') if _is_superpoly(rule):
            return 'superpoly'
        case RecursiveRule(base='a'):
            a_laws = _laws(spec, 'a', period)
            if a_laws is None or a_laws == 'superpoly':
                return a_laws
            # b_n = g(n) a_{n-1}
            return tuple(
                PowerLaw.from_term(rule.factor(r)) * a_laws[(r - 1) % period]
                for r in range(period)
            )
        case _:
            return None


def growth_laws(
    spec: CoefficientSpec, which: Which
) -> tuple[PowerLaw, ...] | Literal['superpoly'] | None:
    """Per-class power laws of one sequence over its own period.

    Parameters
    ----------
    spec : CoefficientSpec
    which : {'a', 'b'}

    Returns
    -------
    tuple of PowerLaw or 'superpoly' or None
        ``'superpoly'`` for recursions that outgrow every power, ``None`` for tabulated data and
        recursions without a power-law form. Sparse overrides are ignored.
    """
    rule = spec.a_rule if which == 'a' else spec.b_rule
    moduli = _rule_moduli(rule)
    if isinstance(rule, RecursiveRule) and rule.base == 'a':
        moduli += _rule_moduli(spec.a_rule)
    return _laws(spec, which, _period_of(*moduli))


def sequence_laws(spec: CoefficientSpec, which: Which) -> tuple[PowerLaw, ...] | None:
    """Per-class power laws of one sequence, or ``None`` when it has none.

    Parameters
    ----------
    spec : CoefficientSpec
    which : {'a', 'b'}

    Returns
    -------
    tuple of PowerLaw or None

    Examples
    --------
    >>> laws = sequence_laws(CoefficientSpec.powers(2, 3), 'b')
    >>> laws[0].exponent
    Fraction(3, 1)
    """
    laws = growth_laws(spec, which)
    return None if laws == 'superpoly' else laws


def _sparse_of(rule: object) -> SquaresOverride | None:
    if isinstance(rule, BranchRule) and isinstance(rule.override, SquaresOverride):
        return rule.override
    return None


@lru_cache(maxsize=128)
def build_profile(spec: CoefficientSpec) -> AsymptoticProfile | None:
    """Derive the per-class asymptotic profile of a spec.

    Parameters
    ----------
    spec : CoefficientSpec

    Returns
    -------
    AsymptoticProfile or None
        ``None`` when symbolic analysis is unavailable (tabulated data, recursions that do not
        reduce to power-law ratios).

    Examples
    --------
    >>> profile = build_profile(CoefficientSpec.powers(2, 3))
    >>> profile.gamma_plus[0].exponent
    Fraction(-1, 1)
    """
    period = _period_of(*_rule_moduli(spec.a_rule), *_rule_moduli(spec.b_rule))
    notes = []
    for which, rule in (('a', spec.a_rule), ('b', spec.b_rule)):
        if isinstance(rule, BranchRule) and isinstance(rule.override, ListOverride):
            notes.append(f'finite explicit override on `{which}` ignored for limits')

    a_laws = _laws(spec, 'a', period)
    b_laws = _laws(spec, 'b', period)
    if a_laws is None or b_laws is None:
        logger.debug('no symbolic profile for %s', spec.name or 'spec')
        return None

    gamma_plus: list[PowerLaw | None] = []
    gamma_minus: list[PowerLaw | None] = []
    b_signs: list[int] = []
    rec_a = spec.a_rule if isinstance(spec.a_rule, RecursiveRule) else None
    rec_b = spec.b_rule if isinstance(spec.b_rule, RecursiveRule) else None
    if a_laws == 'superpoly' or b_laws == 'superpoly':
        # Only the telescoping pair a_n = f(n) a_{n-1}, b_n = g(n) a_{n-1} has power-law ratios.
        if rec_a is None or rec_b is None or rec_b.base != 'a' or a_laws != 'superpoly':
            return None
        for r in range(period):
            g = PowerLaw.from_term(rec_b.factor(r))
            f = PowerLaw.from_term(rec_a.factor(r))
            b_signs.append(g.sign)
            if g.sign == 0:
                gamma_plus.append(None)
                gamma_minus.append(None)
                continue
            gamma_plus.append(f * g.magnitude().reciprocal())
            gamma_minus.append(g.magnitude().reciprocal())
        return AsymptoticProfile(
            period,
            None,
            None,
            tuple(gamma_plus),
            tuple(gamma_minus),
            tuple(b_signs),
            a_superpoly=True,
            b_superpoly=True,
            notes=tuple(notes),
        )

    for r in range(period):
        b_law = b_laws[r]
        b_signs.append(b_law.sign)
        if b_law.sign == 0:
            gamma_plus.append(None)
            gamma_minus.append(None)
            continue
        inv = b_law.magnitude().reciprocal()
        gamma_plus.append(a_laws[r] * inv)
        gamma_minus.append(a_laws[(r - 1) % period] * inv)
    return AsymptoticProfile(
        period,
        a_laws,
        b_laws,
        tuple(gamma_plus),
        tuple(gamma_minus),
        tuple(b_signs),
        sparse_a=_sparse_of(spec.a_rule),
        sparse_b=_sparse_of(spec.b_rule),
        notes=tuple(notes),
    )


def strip_sparse(spec: CoefficientSpec) -> CoefficientSpec:
    """Copy of a spec with perfect-square and explicit-list overrides removed.

    The result describes the coefficients away from the override indices.

    Parameters
    ----------
    spec : CoefficientSpec

    Returns
    -------
    CoefficientSpec
    """

    def strip(rule: Rule) -> Rule:
        if isinstance(rule, BranchRule) and rule.override is not None and rule.override.sparse:
            return BranchRule(rule.modulus, rule.branches)
        return rule

    return CoefficientSpec(strip(spec.a_rule), strip(spec.b_rule), name=spec.name)


_State: TypeAlias = dict[int, dict[Fraction, Fraction]]


def _accumulate(state: _State, key: int, terms: dict[Fraction, Fraction], law: PowerLaw) -> None:
    target = state.setdefault(key, {})
    for e, c in terms.items():
        e2 = e + law.exponent
        target[e2] = target.get(e2, Fraction(0)) + c * law.constant


def _forward_walk_sum(
    step: Callable[[int, str], PowerLaw | None], m: int, positive: bool
) -> dict[Fraction, Fraction] | None:
    # state: current j -> {exponent: coefficient}
    state: _State = {0: {Fraction(0): Fraction(1)}}
    for _ in range(m):
        nxt: _State = {}
        for j, terms in state.items():
            if not positive or j >= 1:
                law = step(j, 'A')
                if law is None:
                    return None
                _accumulate(nxt, j - 1, terms, law)
            if not positive or j >= 0:
                law = step(j, 'B')
                if law is None:
                    return None
                _accumulate(nxt, j + 1, terms, law)
        state = nxt
    total: dict[Fraction, Fraction] = defaultdict(Fraction)
    for terms in state.values():
        for e, c in terms.items():
            total[e] += c
    return dict(total)


def _g_forward(profile: AsymptoticProfile, m: int, positive: bool) -> ExponentSum | None:
    # Each step s multiplies gamma+(n - j_s) (branch A) or gamma-(n - j_s) (branch B).
    period = profile.period
    classes = []
    for r in range(period):

        def step(j: int, branch: str, r: int = r) -> PowerLaw | None:
            laws = profile.gamma_plus if branch == 'A' else profile.gamma_minus
            return laws[(r - j) % period]

        terms = _forward_walk_sum(step, m, positive)
        if terms is None:
            return None
        classes.append(terms)
    return ExponentSum(classes)


def _g_tilde(profile: AsymptoticProfile, m: int) -> ExponentSum | None:
    # Backward over u_s = j_{m+1} - j_s from u_{m+1} = 0: branch A gives u_s = u_{s+1} - 1 with
    # gamma+^2(n + u_s), branch B gives u_s = u_{s+1} + 1 with gamma-^2(n + u_s).
    period = profile.period
    classes = []
    for r in range(period):
        state: _State = {0: {Fraction(0): Fraction(1)}}
        for _ in range(m):
            nxt: _State = {}
            for u, terms in state.items():
                for shift, laws in ((-1, profile.gamma_plus), (1, profile.gamma_minus)):
                    law = laws[(r + u + shift) % period]
                    if law is None:
                        return None
                    _accumulate(nxt, u + shift, terms, law.squared())
            state = nxt
        total: dict[Fraction, Fraction] = defaultdict(Fraction)
        for terms in state.values():
            for e, c in terms.items():
                total[e] += c
        classes.append(dict(total))
    return ExponentSum(classes)


def symbolic_exponent_of(
    product_kind: ProductKind,
    spec: CoefficientSpec,
    m: int,
    *,
    profile: AsymptoticProfile | None = None,
) -> ExponentSum | None:
    """Leading power laws of a multi-index product, per residue class of `n`.

    Parameters
    ----------
    product_kind : {'G_plus_times_a', 'G_full_times_a', 'G_tilde', 'G_full'}
    spec : CoefficientSpec
    m : int
    profile : AsymptoticProfile, optional
        Precomputed profile of `spec`.

    Returns
    -------
    ExponentSum or None
        ``None`` when symbolic mode is unavailable: no profile, a perfect-square override, a
        class with identically zero `b`, or a super-polynomial `a` for the `*_times_a` kinds.

    Examples
    --------
    >>> spec = CoefficientSpec.powers(2, 3)
    >>> symbolic_exponent_of('G_plus_times_a', spec, 1).dominant(0)
    (Fraction(1, 1), Fraction(1, 1))
    >>> symbolic_exponent_of('G_full_times_a', spec, 2).dominant(0)
    (Fraction(0, 1), Fraction(4, 1))
    """
    if profile is None:
        profile = build_profile(spec)
    if profile is None or profile.sparse_a is not None or profile.sparse_b is not None:
        return None
    if m < 1:
        raise ValueError('`m` should be a positive integer')
    match product_kind:
        case 'G_plus_times_a':
            base = _g_forward(profile, m, positive=True)
        case 'G_full_times_a' | 'G_full':
            base = _g_forward(profile, m, positive=False)
        case 'G_tilde':
            base = _g_tilde(profile, m)
        case _:
            raise ValueError(f'unknown `product_kind` {product_kind!r}')
    if base is None:
        return None
    if product_kind.endswith('_times_a'):
        if profile.a is None:
            return None
        base = base.shifted(profile.a)
    return base
