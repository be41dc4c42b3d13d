# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Fixtures for the command-line tests."""

import json

import pytest
from click.testing import CliRunner

from jacobi_spectra._config import OUT_ENV_VAR


@pytest.fixture
def runner(monkeypatch):
    monkeypatch.delenv(OUT_ENV_VAR, raising=False)
    return CliRunner()


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / 'config.json'
    doc = {
        'preset': 'ex-B1',
        'm_max': 2,
        'numeric_range': [3, 200, 1],
        'truncations': [10, 20],
        'window': [-5, 5],
        'cf_grid': {'re_range': [-2, 2], 'im_range': [1, 2], 'counts': [2, 2], 'N_max': 30},
    }
    path.write_text(json.dumps(doc), encoding='utf-8')
    return path
