# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Exact power-law profiles and symbolic exponents of multi-index sums."""

from fractions import Fraction
from math import comb

import pytest

from jacobi_spectra import (
    BranchRule,
    CoefficientSpec,
    PowerTerm,
    RecursiveRule,
    SquaresOverride,
    build_preset,
)
from jacobi_spectra._exponents import (
    ExponentSum,
    PowerLaw,
    build_profile,
    growth_laws,
    strip_sparse,
    symbolic_exponent_of,
)

F = Fraction


def test_power_law_algebra():
    law = PowerLaw(F(2), F(3), -1)
    assert law * law.reciprocal() == PowerLaw(F(1), F(0), 1)
    assert law.magnitude() == PowerLaw(F(2), F(3), 1)
    assert law.squared() == PowerLaw(F(4), F(6), 1)


def test_power_law_zero_reciprocal():
    with pytest.raises(ZeroDivisionError):
        PowerLaw(F(1), F(0), 0).reciprocal()


def test_exponent_sum_ordering():
    s = ExponentSum([{F(-1): F(3), F(2): F(1)}, {F(2): F(5)}])
    assert s.period == 2
    assert list(s.terms(0)) == [F(2), F(-1)]
    assert s.dominant(2) == (F(2), F(1))
    assert s.max_exponent() == F(2)
    assert s.limsup_constant() == F(5)
    assert s.to_mapping() == {'0': {'2': '1', '-1': '3'}, '1': {'2': '5'}}


def test_exponent_sum_shifted():
    s = ExponentSum([{F(0): F(1)}, {F(1): F(2)}])
    shifted = s.shifted((PowerLaw(F(3), F(2)),))
    assert shifted.dominants() == [(F(2), F(3)), (F(3), F(6))]


@pytest.mark.parametrize('classes', [[{}], [{F(1): F(0)}], [{F(1): F(-1)}]])
def test_exponent_sum_valerr(classes):
    with pytest.raises(ValueError):
        ExponentSum(classes)


def test_profile_pure_powers():
    profile = build_profile(CoefficientSpec.powers(2, 3))
    assert profile.period == 1
    assert profile.gamma_plus[0].exponent == F(-1)
    assert profile.gamma_minus[0].exponent == F(-1)
    assert profile.b_diverges()
    assert profile.a_diverges()
    assert profile.zero_b_classes == ()


def test_profile_parity_split():
    profile = build_profile(build_preset('ex-B2', {'alpha': 3}))
    assert profile.period == 2
    assert [g.exponent for g in profile.gamma_plus] == [F(1), F(-5)]
    assert [g.exponent for g in profile.gamma_minus] == [F(-5), F(1)]
    assert not profile.a_diverges()


def test_profile_zero_diagonal():
    profile = build_profile(build_preset('free'))
    assert profile.zero_b_classes == (0,)
    assert profile.gamma_plus == (None,)
    assert not profile.b_diverges()


def test_profile_telescoping_recursion():
    profile = build_profile(build_preset('ex-D', {'q': 2}))
    assert profile.a_superpoly and profile.b_superpoly
    assert profile.period == 2
    assert [g.exponent for g in profile.gamma_plus] == [F(-2), F(1)]
    assert [g.exponent for g in profile.gamma_minus] == [F(-2), F(-2)]


def test_profile_unavailable():
    assert build_profile(CoefficientSpec.tabulated([1.0, 2.0], [0.0, 1.0])) is None
    superpoly = CoefficientSpec(RecursiveRule(1, (PowerTerm(1, 1),)), BranchRule.power(1, 1))
    assert build_profile(superpoly) is None


def test_growth_laws():
    assert growth_laws(build_preset('ex-D'), 'a') == 'superpoly'
    laws = growth_laws(CoefficientSpec.powers('1/2', 0), 'a')
    assert laws == (PowerLaw(F(1), F(1, 2)),)
    assert growth_laws(CoefficientSpec.tabulated([1.0], [1.0]), 'b') is None


def test_constant_recursion_is_power_law():
    spec = CoefficientSpec(RecursiveRule(3, (PowerTerm(),)), BranchRule.power(1, 1))
    assert growth_laws(spec, 'a') == (PowerLaw(F(3), F(0)),)


@pytest.mark.parametrize('alpha, beta', [(2, 3), (F(1, 2), 1), (4, F(9, 2))])
@pytest.mark.parametrize('m', [1, 2, 3, 4, 5])
def test_pure_power_sums(alpha, beta, m):
    spec = CoefficientSpec.powers(alpha, beta)
    d = F(alpha) - F(beta)
    plus = symbolic_exponent_of('G_plus_times_a', spec, m)
    full = symbolic_exponent_of('G_full', spec, m)
    tilde = symbolic_exponent_of('G_tilde', spec, m)
    assert plus.dominant(0) == (m * d + alpha, comb(m, m // 2))
    assert full.dominant(0) == (m * d, 2**m)
    assert tilde.dominant(0) == (2 * m * d, 2**m)


def test_symbolic_unavailable_with_squares_override():
    spec = CoefficientSpec(
        BranchRule.power(1, 2), BranchRule(1, (PowerTerm(1, 3),), SquaresOverride('1/2'))
    )
    assert symbolic_exponent_of('G_full', spec, 2) is None
    assert symbolic_exponent_of('G_full', strip_sparse(spec), 2) is not None


def test_symbolic_unavailable_with_zero_diagonal():
    assert symbolic_exponent_of('G_plus_times_a', build_preset('free'), 1) is None


def test_symbolic_times_a_unavailable_for_superpoly():
    spec = build_preset('ex-D')
    assert symbolic_exponent_of('G_full_times_a', spec, 2) is None
    assert symbolic_exponent_of('G_tilde', spec, 2) is not None


def test_symbolic_valerr():
    spec = CoefficientSpec.powers(2, 3)
    with pytest.raises(ValueError):
        symbolic_exponent_of('G_full', spec, 0)
    with pytest.raises(ValueError):
        symbolic_exponent_of('G_other', spec, 1)
