# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Aggregated verdicts of the criteria battery."""

import pytest

from jacobi_spectra import BatteryReport, CoefficientSpec, Outcome, build_preset, run_battery


def test_battery_layout():
    report = run_battery(build_preset('ex-B1'), 3)
    assert isinstance(report, BatteryReport)
    assert len(report) == 3 * 5 + 5
    labels = [v.label for v in report]
    assert labels[:5] == ['B_1', 'C_1', 'C_1_liminf', 'D_1', 'G_1_limit']
    assert labels[-5:] == ['CAR', 'DW', 'JN', 'CJ', 'WEAK']


def test_battery_conclusion_with_strong_criterion():
    report = run_battery(build_preset('ex-B1'), 3)
    assert report.conclusion == 'SELF_ADJOINT'
    assert 'B_3' in report.supporting
    assert 'B_2' not in report.supporting
    assert report.tags == ('LAMBDA_EQUALS_SIGMA',)


def test_battery_worked_examples():
    report = run_battery(build_preset('ex-D', {'q': 2}), 2)
    assert report.get('D_1').outcome is Outcome.FAILS
    assert report.get('D_2').outcome is Outcome.HOLDS
    for label in ('CAR', 'DW', 'JN', 'CJ'):
        assert report.get(label).outcome is Outcome.FAILS
    assert report.conclusion == 'SELF_ADJOINT'


def test_battery_squares_override():
    report = run_battery(build_preset('ex-C-comp'), 1, (3, 300, 1))
    assert report.get('C_1').holds
    assert not report.get('JN').holds
    assert report.conclusion == 'SELF_ADJOINT'


@pytest.mark.parametrize(
    'spec', [build_preset('free'), CoefficientSpec.powers(-1, 0, b_sign=0)], ids=['free', 'decay']
)
def test_battery_bounded_off_diagonal(spec):
    report = run_battery(spec, 2)
    assert report.get('CAR').holds
    assert report.conclusion == 'SELF_ADJOINT'
    assert report.tags == ()


def test_battery_tabulated_is_undecided(random_specs):
    report = run_battery(random_specs[0], 2, (3, 50, 1))
    assert report.conclusion == 'UNDECIDED'
    assert report.supporting == ()
    assert all(v.outcome is Outcome.INCONCLUSIVE for v in report)


def test_battery_threads_deterministic():
    spec = build_preset('ex-B-comp')
    serial = run_battery(spec, 4, (3, 200, 1))
    pooled = run_battery(spec, 4, (3, 200, 1), threads=4)
    assert serial.to_mapping() == pooled.to_mapping()


def test_battery_get_keyerr():
    report = run_battery(build_preset('ex-B1'), 2)
    with pytest.raises(KeyError):
        report.get('B_3')


def test_battery_mapping():
    doc = run_battery(build_preset('ex-B1'), 1).to_mapping()
    assert set(doc) == {'conclusion', 'tags', 'supporting', 'verdicts'}
    assert doc['verdicts'][0]['criterion'] == 'B_m'


@pytest.mark.parametrize('m_max', [0, 25, True, 2.0])
def test_battery_m_max_valerr(m_max):
    with pytest.raises(ValueError):
        run_battery(build_preset('ex-B1'), m_max)


def test_battery_cap_valerr():
    with pytest.raises(ValueError):
        run_battery(build_preset('ex-B1'), 4, cap=3)


def test_battery_threads_valerr():
    with pytest.raises(ValueError):
        run_battery(build_preset('ex-B1'), 1, threads=0)
