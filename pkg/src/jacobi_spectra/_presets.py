# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Built-in coefficient presets for the worked examples, with exact rational parameters."""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ._coeffseq import (
    BranchRule,
    CoefficientSpec,
    PowerTerm,
    Rational,
    RecursiveRule,
    SquaresOverride,
    as_fraction,
)
from ._exceptions import ConfigError


def _free(p: Mapping[str, Fraction]) -> CoefficientSpec:
    return CoefficientSpec.powers(0, 0, b_sign=0, name='free')


def _ex_b1(p: Mapping[str, Fraction]) -> CoefficientSpec:
    alpha = p['alpha']
    return CoefficientSpec.powers(alpha, alpha + 1, name=f'ex-B1(alpha={alpha})')


def _ex_b2(p: Mapping[str, Fraction]) -> CoefficientSpec:
    alpha = p['alpha']
    return CoefficientSpec(
        BranchRule(2, (PowerTerm(1, alpha), PowerTerm(1, -alpha))),
        BranchRule.power(1, alpha - 1),
        name=f'ex-B2(alpha={alpha})',
    )


def _ex_c1(p: Mapping[str, Fraction]) -> CoefficientSpec:
    alpha = p['alpha']
    return CoefficientSpec.powers(alpha, alpha + 1, name=f'ex-C1(alpha={alpha})')


def _ex_c2(p: Mapping[str, Fraction]) -> CoefficientSpec:
    alpha = p['alpha']
    return CoefficientSpec.powers(1 / alpha, 0, name=f'ex-C2(alpha={alpha})')


def _ex_d(p: Mapping[str, Fraction]) -> CoefficientSpec:
    q = int(p['q'])
    # a_n = a_{n-1} on multiples of q, n^{q+1} a_{n-1} otherwise; b_n = n^q a_{n-1}
    a_factors = (PowerTerm(1, 0),) + (PowerTerm(1, q + 1),) * (q - 1)
    return CoefficientSpec(
        RecursiveRule(Fraction(1), a_factors),
        RecursiveRule(Fraction(1), (PowerTerm(1, q),) * q, base='a'),
        name=f'ex-D(q={q})',
    )


def _ex_b_comp(p: Mapping[str, Fraction]) -> CoefficientSpec:
    alpha, beta, gamma = p['alpha'], p['beta'], p['gamma']
    return CoefficientSpec(
        BranchRule.power(1, alpha),
        BranchRule(2, (PowerTerm(1, beta), PowerTerm(1, gamma))),
        name=f'ex-B-comp(alpha={alpha}, beta={beta}, gamma={gamma})',
    )


def _ex_c_comp(p: Mapping[str, Fraction]) -> CoefficientSpec:
    alpha, beta, base = p['alpha'], p['beta'], p['b']
    return CoefficientSpec(
        BranchRule.power(1, alpha),
        BranchRule(1, (PowerTerm(1, beta),), SquaresOverride(base)),
        name=f'ex-C-comp(alpha={alpha}, beta={beta}, b={base})',
    )


def _positive(x: Fraction) -> bool:
    return x > 0


def _above_one(x: Fraction) -> bool:
    return x > 1


def _at_least_one(x: Fraction) -> bool:
    return x >= 1


def _unit_interval(x: Fraction) -> bool:
    return 0 < x < 1


def _integer_from_two(x: Fraction) -> bool:
    return x.denominator == 1 and x >= 2


_RULE_TEXT: dict[Callable[[Fraction], bool], str] = {
    _positive: 'positive',
    _above_one: 'greater than 1',
    _at_least_one: 'at least 1',
    _unit_interval: 'in the open interval (0, 1)',
    _integer_from_two: 'an integer at least 2',
}


@dataclass(frozen=True)
class Preset:
    """A named family of coefficient sequences.

    Parameters
    ----------
    name : str
    summary : str
        One-line description of the sequences.
    defaults : mapping of str to Fraction
        Parameter names with their default values.
    constraints : mapping of str to callable
        Admissibility predicate per parameter.
    builder : callable
        Maps a complete parameter mapping to a `CoefficientSpec`.
    """

    name: str
    summary: str
    defaults: Mapping[str, Fraction]
    constraints: Mapping[str, Callable[[Fraction], bool]]
    builder: Callable[[Mapping[str, Fraction]], CoefficientSpec]

    def resolve(self, params: Mapping[str, Rational] | None = None) -> dict[str, Fraction]:
        """Merge `params` into the defaults and validate the result.

        Parameters
        ----------
        params : mapping, optional

        Returns
        -------
        dict of str to Fraction

        Raises
        ------
        ConfigError
            If a parameter is unknown, unparsable or outside its admissible range.
        """
        resolved = dict(self.defaults)
        for key, value in (params or {}).items():
            if key not in self.defaults:
                known = ', '.join(self.defaults) or 'none'
                raise ConfigError(
                    f'preset {self.name!r} has no parameter `{key}` (parameters: {known})'
                )
            try:
                resolved[key] = as_fraction(value, key)
            except (TypeError, ValueError) as exc:
                raise ConfigError(str(exc)) from None
        for key, check in self.constraints.items():
            if not check(resolved[key]):
                raise ConfigError(
                    f'`{key}` of preset {self.name!r} should be {_RULE_TEXT[check]}, '
                    f'got {resolved[key]}'
                )
        return resolved

    def build(self, params: Mapping[str, Rational] | None = None) -> CoefficientSpec:
        """Build the coefficient spec for the given parameters.

        Parameters
        ----------
        params : mapping, optional
            Overrides of the defaults.

        Returns
        -------
        CoefficientSpec

        Examples
        --------
        >>> PRESETS['ex-B2'].build({'alpha': 2}).eval_a(3)
        0.1111111111111111
        """
        return self.builder(self.resolve(params))

    def to_mapping(self) -> dict[str, Any]:
        """Describe the preset for `preset-list`.

        Returns
        -------
        dict
        """
        return {
            'name': self.name,
            'summary': self.summary,
            'parameters': {k: str(v) for k, v in self.defaults.items()},
        }


PRESETS: dict[str, Preset] = {
    p.name: p
    for p in (
        Preset('free', 'a_n = 1, b_n = 0', {}, {}, _free),
        Preset(
            'ex-B1',
            'a_n = n^alpha, b_n = n^(alpha+1)',
            {'alpha': Fraction(2)},
            {'alpha': _positive},
            _ex_b1,
        ),
        Preset(
            'ex-B2',
            'a_n = n^alpha (even n), n^-alpha (odd n), b_n = n^(alpha-1)',
            {'alpha': Fraction(3)},
            {'alpha': _above_one},
            _ex_b2,
        ),
        Preset(
            'ex-C1',
            'a_n = n^alpha, b_n = n^(alpha+1)',
            {'alpha': Fraction(3)},
            {'alpha': _positive},
            _ex_c1,
        ),
        Preset(
            'ex-C2',
            'a_n = n^(1/alpha), b_n = 1',
            {'alpha': Fraction(4)},
            {'alpha': _at_least_one},
            _ex_c2,
        ),
        Preset(
            'ex-D',
            'a_n = a_(n-1) (q | n), n^(q+1) a_(n-1) otherwise, b_n = n^q a_(n-1), a_1 = b_1 = 1',
            {'q': Fraction(2)},
            {'q': _integer_from_two},
            _ex_d,
        ),
        Preset(
            'ex-B-comp',
            'a_n = n^alpha, b_n = n^beta (even n), n^gamma (odd n)',
            {'alpha': Fraction(3), 'beta': Fraction(4), 'gamma': Fraction(5)},
            {'alpha': _above_one, 'beta': _above_one, 'gamma': _above_one},
            _ex_b_comp,
        ),
        Preset(
            'ex-C-comp',
            'a_n = n^alpha, b_n = b^n (n a perfect square), n^beta otherwise',
            {'alpha': Fraction(2), 'beta': Fraction(3), 'b': Fraction(1, 2)},
            {'alpha': _above_one, 'beta': _above_one, 'b': _unit_interval},
            _ex_c_comp,
        ),
    )
}
"""Registry of the built-in presets, keyed by name."""


def build_preset(name: str, params: Mapping[str, Rational] | None = None) -> CoefficientSpec:
    """Build a preset by name.

    Parameters
    ----------
    name : str
    params : mapping, optional

    Returns
    -------
    CoefficientSpec

    Raises
    ------
    ConfigError
        If the preset is unknown or a parameter is invalid.

    Examples
    --------
    >>> spec = build_preset('ex-D', {'q': 2})
    >>> spec.eval_a(2), spec.eval_a(3), spec.eval_b(3)
    (1.0, 27.0, 9.0)
    >>> build_preset('ex-C-comp').eval_b(4)
    0.0625
    """
    try:
        preset = PRESETS[name]
    except KeyError:
        raise ConfigError(f'unknown preset {name!r}; choose from {", ".join(PRESETS)}') from None
    return preset.build(params)


def parse_param(text: str) -> tuple[str, Fraction]:
    """Parse a ``key=value`` assignment with an exact rational value.

    Parameters
    ----------
    text : str

    Returns
    -------
    (str, Fraction)

    Raises
    ------
    ConfigError
        If `text` is not of the form ``key=value`` or the value is not rational.

    Examples
    --------
    >>> parse_param('alpha=4.25')
    ('alpha', Fraction(17, 4))
    """
    key, sep, value = text.partition('=')
    key = key.strip()
    if not sep or not key:
        raise ConfigError(f'parameter {text!r} should have the form key=value')
    try:
        return key, as_fraction(value, key)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
