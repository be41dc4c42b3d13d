# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""JSON and tabular reports."""

import io
import json
import math

import jsonschema
import pandas as pd
import pytest

from jacobi_spectra import (
    CoefficientSpec,
    build_preset,
    convergence_scan,
    limit_points,
    run_battery,
)
from jacobi_spectra._reports import (
    ReportWriter,
    atomic_write_text,
    cfrac_frame,
    criteria_document,
    interlacing_summary,
    limits_frame,
    load_schema,
    spectrum_frame,
    to_csv,
    to_json,
    verdict_table,
    verdicts_frame,
)


@pytest.fixture(scope='module')
def schema():
    return load_schema()


@pytest.mark.parametrize(
    'name, params, m_max, numeric_range',
    [
        ('ex-B1', None, 3, None),
        ('ex-D', {'q': 2}, 2, None),
        ('ex-C-comp', None, 2, (3, 200, 1)),
        ('free', None, 1, None),
    ],
)
def test_criteria_document_validates(schema, name, params, m_max, numeric_range):
    spec = build_preset(name, params)
    report = run_battery(spec, m_max, numeric_range)
    doc = json.loads(to_json(criteria_document(spec, report, m_max)))
    jsonschema.validate(doc, schema)
    assert doc['schema_version'] == 1
    assert doc['operator']['name'] == spec.name
    assert len(doc['verdicts']) == 5 * m_max + 5


def test_criteria_document_numeric_validates(schema):
    spec = CoefficientSpec.tabulated([1.0, 2.0] * 20, [0.0, -1.0] * 20)
    report = run_battery(spec, 2, (3, 35, 1))
    doc = json.loads(to_json(criteria_document(spec, report, 2)))
    jsonschema.validate(doc, schema)
    assert {v['mode'] for v in doc['verdicts']} == {'Numeric'}


def test_schema_rejects_unknown_outcome(schema):
    spec = build_preset('ex-B1')
    doc = json.loads(to_json(criteria_document(spec, run_battery(spec, 1), 1)))
    doc['verdicts'][0]['outcome'] = 'Maybe'
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, schema)


def test_to_json_non_finite():
    text = to_json({'a': [math.inf, -math.inf, math.nan], 'b': (1.0, {'c': math.inf})})
    assert json.loads(text) == {'a': ['inf', '-inf', 'nan'], 'b': [1.0, {'c': 'inf'}]}
    assert text.endswith('\n')


def test_to_csv_full_precision():
    frame = pd.DataFrame({'x': [0.1, 1 / 3], 'n': [1, 2]})
    back = pd.read_csv(io.StringIO(to_csv(frame)))
    assert back['x'].tolist() == [0.1, 1 / 3]
    assert back['n'].tolist() == [1, 2]
    assert '\r' not in to_csv(frame)


def test_verdicts_frame():
    report = run_battery(build_preset('ex-B1'), 2)
    frame = verdicts_frame(report)
    assert list(frame.columns) == [
        'criterion',
        'm',
        'outcome',
        'mode',
        'exponent',
        'constant',
        'slope',
        'notes',
    ]
    assert len(frame) == len(report)
    assert frame['m'].dtype == 'Int64'
    assert frame['m'].isna().sum() == 5
    assert frame.loc[frame['criterion'] == 'B_1', 'exponent'].item() == '1'


def test_verdict_table():
    spec = build_preset('ex-B1')
    text = verdict_table(spec, run_battery(spec, 3))
    lines = text.splitlines()
    assert lines[0] == 'operator: ex-B1(alpha=2)'
    assert lines[1] == 'conclusion: SELF_ADJOINT [LAMBDA_EQUALS_SIGMA]'
    assert 'B_3' in lines[2]


def test_spectrum_frame():
    spec = CoefficientSpec.powers(1, 2)
    frame = spectrum_frame(spec, [3, 5])
    assert list(frame.columns) == [
        'N',
        'index',
        'lambda',
        'delta_N',
        'log_abs_delta_N',
        'a_N_delta_N',
    ]
    assert frame['N'].tolist() == [3] * 3 + [5] * 5
    assert frame.groupby('N')['lambda'].apply(lambda s: s.is_monotonic_increasing).all()
    expected = frame['N'] * frame['delta_N'].abs()
    assert frame['a_N_delta_N'].to_numpy() == pytest.approx(expected.to_numpy(), rel=1e-9)


def test_interlacing_summary():
    assert interlacing_summary(CoefficientSpec.powers(1, 2), [2, 5]) == {'2': True, '5': True}


def test_limits_frame():
    report = limit_points(CoefficientSpec.powers(0, 2), [10, 20, 30], (0.0, 10.0))
    frame = limits_frame(report)
    assert frame['candidate'].nunique() == len(report.candidates)
    assert len(frame) == sum(len(c.gencond_track) for c in report.candidates)


def test_limits_frame_empty():
    report = limit_points(CoefficientSpec.powers(0, 2), [10, 20], (500.0, 600.0))
    frame = limits_frame(report)
    assert frame.empty
    assert 'log_a_N_delta_N' in frame.columns


def test_cfrac_frame():
    free = CoefficientSpec.powers(0, 0, b_sign=0)
    frame = cfrac_frame(convergence_scan(free, [3.0, 0.5], 60))
    assert frame['converged'].tolist() == [True, False]
    assert frame.loc[0, 're_limit'] == pytest.approx((3 - 5**0.5) / 2)
    assert frame.loc[1, 're_limit'] is None or pd.isna(frame.loc[1, 're_limit'])


def test_atomic_write(tmp_path):
    target = tmp_path / 'nested' / 'out.txt'
    assert atomic_write_text(target, 'one\n') == target
    atomic_write_text(target, 'two\n')
    assert target.read_text(encoding='utf-8') == 'two\n'
    assert [p.name for p in target.parent.iterdir()] == ['out.txt']


@pytest.mark.parametrize(
    'output_format, expected',
    [('json', {'r.json'}), ('csv', {'r.csv'}), ('both', {'r.json', 'r.csv'})],
)
def test_report_writer_formats(tmp_path, output_format, expected):
    writer = ReportWriter(tmp_path, output_format)
    writer.json('r', {'x': 1})
    writer.csv('r', pd.DataFrame({'x': [1.0]}))
    writer.text('summary.txt', 'ok\n')
    assert {p.name for p in writer.written} == expected | {'summary.txt'}
    assert {p.name for p in tmp_path.iterdir()} == expected | {'summary.txt'}
