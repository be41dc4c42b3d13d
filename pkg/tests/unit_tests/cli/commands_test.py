# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Subcommands, exit codes and written reports of `jacobi-spectra`."""

import json

import pytest

from jacobi_spectra import PRESETS, __version__
from jacobi_spectra.cli import main


def test_version(runner):
    result = runner.invoke(main, ['--version'])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_preset_list(runner):
    result = runner.invoke(main, ['preset-list'])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert len(lines) == len(PRESETS)
    assert lines[0].startswith('free')
    assert 'alpha=2' in lines[1]


@pytest.mark.parametrize(
    'variant, m, count',
    [('I', 3, 8), ('I_hat', 2, 4), ('I_plus', 4, 6), ('I_hat_plus', 3, 3)],
)
def test_indices(runner, variant, m, count):
    result = runner.invoke(main, ['indices', variant, str(m)])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == f'{count} pairs'
    assert len(lines) == count + 1
    assert all(line.startswith('(') and '|' in line for line in lines[1:])


@pytest.mark.parametrize(
    'args', [['indices', 'I', '0'], ['indices', 'J', '2'], ['indices', 'I', '30']]
)
def test_indices_usage_error(runner, args):
    assert runner.invoke(main, args).exit_code == 2


def test_criteria(runner, tmp_path):
    out = tmp_path / 'out'
    result = runner.invoke(
        main, ['--preset', 'ex-B1', '--m-max', '3', '--out', str(out), 'criteria']
    )
    assert result.exit_code == 0, result.output
    assert 'SELF_ADJOINT' in result.output
    assert {p.name for p in out.iterdir()} == {'criteria.json', 'criteria.csv', 'criteria.txt'}
    doc = json.loads((out / 'criteria.json').read_text(encoding='utf-8'))
    assert doc['conclusion'] == 'SELF_ADJOINT'
    assert (out / 'criteria.txt').read_text(encoding='utf-8') == result.stdout


def test_criteria_with_params(runner, tmp_path):
    result = runner.invoke(
        main,
        [
            '--preset',
            'ex-B2',
            '--param',
            'alpha=5/2',
            '--m-max',
            '2',
            '--format',
            'json',
            '--out',
            str(tmp_path),
            'criteria',
        ],
    )
    assert result.exit_code == 0, result.output
    assert 'ex-B2(alpha=5/2)' in result.output
    assert not (tmp_path / 'criteria.csv').exists()
    assert (tmp_path / 'criteria.json').exists()


def test_output_dir_from_environment(runner, tmp_path, monkeypatch):
    monkeypatch.setenv('JACOBI_SPECTRA_OUT', str(tmp_path / 'env'))
    result = runner.invoke(main, ['--preset', 'free', '--m-max', '1', 'criteria'])
    assert result.exit_code == 0, result.output
    assert (tmp_path / 'env' / 'criteria.json').exists()


def test_spectrum(runner, small_config, tmp_path):
    result = runner.invoke(
        main, ['--config', str(small_config), '--out', str(tmp_path), 'spectrum']
    )
    assert result.exit_code == 0, result.output
    assert result.output.splitlines() == [
        'N=10: 10 eigenvalues, interlacing ok',
        'N=20: 20 eigenvalues, interlacing ok',
    ]
    doc = json.loads((tmp_path / 'spectrum.json').read_text(encoding='utf-8'))
    assert doc['truncations'] == [10, 20]
    assert len(doc['eigenvalues']['20']) == 20
    assert (tmp_path / 'spectrum.csv').exists()


def test_limits(runner, small_config, tmp_path):
    result = runner.invoke(main, ['--config', str(small_config), '--out', str(tmp_path), 'limits'])
    assert result.exit_code == 0, result.output
    assert result.output.splitlines()[0].endswith('candidates in [-5, 5]')
    doc = json.loads((tmp_path / 'limits.json').read_text(encoding='utf-8'))
    assert doc['N_list'] == [10, 20]


def test_cfrac(runner, small_config, tmp_path):
    result = runner.invoke(main, ['--config', str(small_config), '--out', str(tmp_path), 'cfrac'])
    assert result.exit_code == 0, result.output
    assert result.output.strip().endswith('grid points converged (N_max=30)')
    doc = json.loads((tmp_path / 'cfrac.json').read_text(encoding='utf-8'))
    assert len(doc['points']) == 4
    assert doc['N_max'] == 30


def test_verify_pass(runner, tmp_path):
    result = runner.invoke(main, ['--seed', '1', '--out', str(tmp_path), 'verify'])
    assert result.exit_code == 0, result.output
    assert 'FAILED' not in result.output
    doc = json.loads((tmp_path / 'verify.json').read_text(encoding='utf-8'))
    assert doc['passed'] is True


@pytest.mark.parametrize('args', [['--negative-control'], ['--rtol', '0']])
def test_verify_fail(runner, tmp_path, args):
    result = runner.invoke(main, ['--seed', '1', '--out', str(tmp_path), 'verify', *args])
    assert result.exit_code == 1
    assert 'FAILED' in result.output


@pytest.mark.parametrize(
    'args',
    [
        ['criteria'],
        ['--preset', 'no-such-preset', 'criteria'],
        ['--param', 'alpha=2', 'criteria'],
        ['--preset', 'ex-B1', '--param', 'alpha', 'criteria'],
        ['--preset', 'ex-B1', '--param', 'alpha=-1', 'criteria'],
        ['--preset', 'ex-B1', '--m-max', '0', 'criteria'],
        ['--preset', 'ex-B1', '--format', 'xml', 'criteria'],
        ['--config', 'does-not-exist.json', 'criteria'],
        ['no-such-command'],
    ],
)
def test_usage_errors(runner, tmp_path, args):
    result = runner.invoke(main, ['--out', str(tmp_path), *args])
    assert result.exit_code == 2


def test_invalid_config_file(runner, tmp_path):
    path = tmp_path / 'bad.json'
    path.write_text('{"m_max": "six"}', encoding='utf-8')
    result = runner.invoke(main, ['--config', str(path), '--out', str(tmp_path), 'criteria'])
    assert result.exit_code == 2
