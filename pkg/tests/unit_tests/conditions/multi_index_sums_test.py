# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Values of the multi-index sums G+, G and G~."""

import math

import numpy as np
import pytest

from jacobi_spectra import (
    CoefficientSpec,
    G_full,
    G_plus,
    G_tilde,
    evaluate_G,
    ratio_factors,
    recursion_check_G_tilde,
    sample_G,
)


def _ab(spec):
    def a(k):
        return spec.eval_a(k) if k >= 1 else 0.0

    def b(k):
        return abs(spec.eval_b(k))

    return a, b


def test_G_plus_m1():
    assert G_plus(CoefficientSpec.powers(1, 2), 1, 10) == pytest.approx(0.09, rel=1e-15)


def test_G_plus_constant_spec():
    assert G_plus(CoefficientSpec.powers(0, 0), 2, 5) == 2.0


def test_G_plus_decay_rate():
    # a_n G+_{3,n} ~ |I_3+| n^{alpha-3} for a_n = n^alpha, b_n = n^(alpha+1)
    spec = CoefficientSpec.powers(2, 3)
    value = spec.eval_a(100) * G_plus(spec, 3, 100)
    assert value == pytest.approx(3 * 0.01, rel=0.2)


def test_G_full_m1():
    assert G_full(CoefficientSpec.powers(1, 0), 1, 5) == 9.0


def test_G_full_m2_expansion():
    spec = CoefficientSpec.powers(2, 3)
    a, b = _ab(spec)
    n = 10
    expected = a(9) * (a(8) + a(9)) / (b(10) * b(9)) + a(10) * (a(10) + a(11)) / (b(10) * b(11))
    assert G_full(spec, 2, n) == pytest.approx(expected, rel=1e-12)


def test_G_full_constant_spec():
    assert G_full(CoefficientSpec.powers(0, 0), 2, 3) == 4.0


def test_G_tilde_values(spec_const):
    assert G_tilde(spec_const, 1, 3) == 0.5
    assert G_tilde(spec_const, 2, 5) == 0.25
    assert G_tilde(spec_const, 1, 1) == 0.25


def _product(a, b, n, j, k):
    out = 1.0
    for js, ks in zip(j, k):
        out *= a(n - ks) / b(n - js)
    return out


_I_PLUS_3 = [((0, 1, 0), (1, 1, 1)), ((0, 1, 2), (1, 2, 2)), ((0, 1, 2), (1, 2, 3))]
_I_PLUS_4 = [
    ((0, 1, 0, 1), (1, 1, 1, 1)),
    ((0, 1, 0, 1), (1, 1, 1, 2)),
    ((0, 1, 2, 1), (1, 2, 2, 1)),
    ((0, 1, 2, 1), (1, 2, 2, 2)),
    ((0, 1, 2, 3), (1, 2, 3, 3)),
    ((0, 1, 2, 3), (1, 2, 3, 4)),
]


@pytest.mark.parametrize('m', [1, 2, 3, 4])
def test_G_plus_hand_expansions(random_specs, m):
    for spec in random_specs:
        a, b = _ab(spec)
        for n in range(m + 2, 50):
            g1 = a(n - 1) / b(n)
            if m == 1:
                expected = g1
            elif m == 2:
                expected = g1 * (a(n - 1) + a(n - 2)) / b(n - 1)
            else:
                pairs = _I_PLUS_3 if m == 3 else _I_PLUS_4
                expected = sum(_product(a, b, n, j, k) for j, k in pairs)
            assert G_plus(spec, m, n) == pytest.approx(expected, rel=1e-12)


def test_G_full_m1_formula(random_specs):
    for spec in random_specs:
        a, b = _ab(spec)
        for n in range(3, 50):
            assert G_full(spec, 1, n) == pytest.approx((a(n - 1) + a(n)) / b(n), rel=1e-12)


def test_G_tilde_m1_m2_formulas(random_specs):
    for spec in random_specs:
        a, b = _ab(spec)
        for n in range(3, 50):
            gp = [a(k) ** 2 / b(k) ** 2 if k >= 1 else 0.0 for k in range(n + 3)]
            gm = [a(k - 1) ** 2 / b(k) ** 2 if k >= 1 else 0.0 for k in range(n + 4)]
            m1 = gp[n - 1] + gm[n + 1]
            assert G_tilde(spec, 1, n) == pytest.approx(m1, rel=1e-12)
            m2 = gp[n - 1] * (gp[n - 2] + gm[n]) + gm[n + 1] * (gp[n] + gm[n + 2])
            assert G_tilde(spec, 2, n) == pytest.approx(m2, rel=1e-12)


@pytest.mark.parametrize('kind, m', [('G_plus', 5), ('G_full', 4), ('G_tilde', 4)])
def test_walk_matches_enumeration(random_specs, kind, m):
    for spec in random_specs[:5]:
        for n in range(m + 2, 40, 3):
            walk = evaluate_G(kind, spec, m, n)
            full = evaluate_G(kind, spec, m, n, method='enumerate')
            assert walk.value == pytest.approx(full.value, rel=1e-12)


def test_sample_matches_pointwise(random_specs):
    spec = random_specs[0]
    ns = np.arange(4, 40)
    values, flags = sample_G('G_full', spec, 2, ns)
    assert not flags.any()
    for n, v in zip(ns, values):
        assert v == pytest.approx(G_full(spec, 2, int(n)), rel=1e-14)


def test_values_nonnegative(random_specs):
    for spec in random_specs:
        for kind in ('G_plus', 'G_full', 'G_tilde'):
            values, _ = sample_G(kind, spec, 3, np.arange(5, 50))
            assert (values >= 0).all()


def test_zero_diagonal_gives_inf():
    spec = CoefficientSpec.powers(0, 0, b_sign=0)
    assert G_plus(spec, 1, 5) == math.inf
    assert G_full(spec, 2, 5) == math.inf


def test_zero_times_inf_flagged():
    spec = CoefficientSpec.tabulated([1.0] * 10, [0.0] + [1.0] * 9)
    walk = evaluate_G('G_tilde', spec, 2, 2)
    full = evaluate_G('G_tilde', spec, 2, 2, method='enumerate')
    assert walk.value == math.inf and walk.zero_times_inf
    assert full.value == math.inf and full.zero_times_inf


@pytest.mark.parametrize(
    'kind, m, n',
    [('G_plus', 2, 2), ('G_full', 3, 1), ('G_plus', 0, 5), ('G_tilde', 1, 0), ('G_full', True, 5)],
)
def test_argument_valerr(kind, m, n):
    with pytest.raises(ValueError):
        evaluate_G(kind, CoefficientSpec.powers(1, 1), m, n)


def test_recursion_check(spec_const, random_specs):
    assert recursion_check_G_tilde(spec_const, 1, 5)
    assert recursion_check_G_tilde(CoefficientSpec.powers(1, 2), 2, 7)
    for spec in random_specs:
        assert recursion_check_G_tilde(spec, 3, 10)


def test_recursion_check_valerr(spec_const):
    with pytest.raises(ValueError):
        recursion_check_G_tilde(spec_const, 1, 1)


def test_ratio_factors():
    f = ratio_factors(CoefficientSpec.powers(1, 2), 10, lam=0.0)
    assert f.gamma_minus == pytest.approx(0.09)
    assert f.gamma_plus == pytest.approx(0.1)
    assert f.c_abs_minus == pytest.approx(0.09)
    assert f.c_abs_plus == pytest.approx(0.1)


def test_ratio_factors_vanishing_denominator():
    f = ratio_factors(CoefficientSpec.powers(0, 0), 3, lam=1.0)
    assert f.c_abs_minus == math.inf
    assert f.c_abs_plus == math.inf
    assert ratio_factors(CoefficientSpec.powers(0, 0), 3).c_abs_plus is None
