# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Limit points of truncation eigenvalues."""

import math

import numpy as np
import pytest

from jacobi_spectra import CoefficientSpec, LimitPointReport, limit_points


@pytest.fixture
def spec_separated():
    # a_n = 1, b_n = n^2: discrete spectrum close to the squares
    return CoefficientSpec.powers(0, 2)


def test_limit_points_discrete(spec_separated):
    report = limit_points(spec_separated, [10, 20, 30, 40], (0.0, 30.0))
    assert isinstance(report, LimitPointReport)
    locations = [c.location for c in report.candidates]
    assert len(locations) == 5
    assert np.allclose(locations, [1, 4, 9, 16, 25], atol=0.5)
    for c in report.candidates:
        assert c.support == (20, 30, 40)
        assert c.spread < 1e-9
        assert [n for n, _, _ in c.gencond_track] == [20, 30, 40]


def test_limit_points_gencond_decays(spec_separated):
    report = limit_points(spec_separated, [10, 20, 30, 40], (0.0, 30.0))
    for c in report.candidates:
        values = [v for _, v, _ in c.gencond_track]
        assert values == sorted(values, reverse=True)
        for _, v, log_v in c.gencond_track:
            assert v == pytest.approx(math.exp(log_v))


def test_limit_points_anchored_at_largest_truncation(spec_separated):
    cluster_tol = 0.2
    report = limit_points(spec_separated, [10, 20, 30, 40], (0.0, 30.0), cluster_tol=cluster_tol)
    assert report.candidates
    top = report.spectra[40]
    for c in report.candidates:
        anchor = top[np.argmin(np.abs(top - c.location))]
        for n in c.support:
            assert np.min(np.abs(report.spectra[n] - anchor)) <= cluster_tol / 2
        assert c.spread <= cluster_tol


def test_limit_points_spectra_kept(spec_separated):
    report = limit_points(spec_separated, [5, 8], (0.0, 30.0))
    assert set(report.spectra) == {5, 8}
    assert np.all((report.spectra[8] >= 0.0) & (report.spectra[8] < 30.0))


def test_limit_points_unstable_eigenvalue_dropped():
    # the eigenvalue near b_N moves with N and never stabilizes
    spec = CoefficientSpec.powers(0, 1)
    report = limit_points(spec, [10, 11, 12, 13], (9.5, 13.5), cluster_tol=1e-6)
    assert report.candidates == ()


def test_limit_points_threads(spec_separated):
    serial = limit_points(spec_separated, [10, 20, 30], (0.0, 30.0))
    pooled = limit_points(spec_separated, [10, 20, 30], (0.0, 30.0), threads=3)
    assert serial.to_mapping() == pooled.to_mapping()


def test_limit_points_mapping(spec_separated):
    doc = limit_points(spec_separated, [10, 20], (0.0, 5.0)).to_mapping()
    assert doc['window'] == [0.0, 5.0]
    assert doc['N_list'] == [10, 20]
    assert set(doc['candidates'][0]) == {'location', 'support', 'spread', 'gencond_track'}
    assert set(doc['candidates'][0]['gencond_track'][0]) == {'N', 'a_N_delta_N', 'log'}


@pytest.mark.parametrize(
    'N_list, window, cluster_tol',
    [
        ([], (0.0, 1.0), 1e-3),
        ([20, 10], (0.0, 1.0), 1e-3),
        ([10, 10], (0.0, 1.0), 1e-3),
        ([0, 10], (0.0, 1.0), 1e-3),
        ([10, 20], (1.0, 0.0), 1e-3),
        ([10, 20], (0.0, 1.0), 0.0),
    ],
)
def test_limit_points_valerr(spec_separated, N_list, window, cluster_tol):
    with pytest.raises(ValueError):
        limit_points(spec_separated, N_list, window, cluster_tol)
