# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Truncations and their eigenvalues."""

import math

import numpy as np
import pytest

from jacobi_spectra import (
    CoefficientDomainError,
    CoefficientSpec,
    Truncation,
    eigenvalue_count,
    eigenvalues,
    interlacing_check,
    truncate,
)


def test_truncate_pass(spec_discrete):
    t = truncate(spec_discrete, 4)
    assert t.N == 4
    assert t.diag.tolist() == [1.0, 4.0, 9.0, 16.0]
    assert t.offdiag.tolist() == [1.0, 2.0, 3.0]
    assert t.edge == 4.0
    assert t.a(0) == 0.0
    assert t.a(2) == 2.0
    assert t.a(4) == 4.0


def test_truncate_order_one(spec_discrete):
    t = truncate(spec_discrete, 1)
    assert t.offdiag.size == 0
    assert t.edge == 1.0
    assert t.to_dense().tolist() == [[1.0]]


@pytest.mark.parametrize('N', [0, -3, True, 2.0])
def test_truncate_valerr(spec_discrete, N):
    with pytest.raises(ValueError):
        truncate(spec_discrete, N)


def test_truncate_invalid_coefficient():
    spec = CoefficientSpec.tabulated([1.0, 1.0], [0.0, 0.0, 0.0])
    with pytest.raises(CoefficientDomainError):
        truncate(spec, 3)


def test_truncation_immutable(spec_discrete):
    t = truncate(spec_discrete, 3)
    with pytest.raises(ValueError):
        t.diag[0] = 5.0


@pytest.mark.parametrize(
    'diag, offdiag, edge',
    [
        ([], [], 1.0),
        ([1.0, 2.0], [], 1.0),
        ([1.0, 2.0], [1.0, 1.0], 1.0),
        ([1.0, 2.0], [0.0], 1.0),
        ([1.0, 2.0], [-1.0], 1.0),
        ([1.0, 2.0], [1.0], 0.0),
        ([1.0, math.nan], [1.0], 1.0),
        ([1.0, 2.0], [math.inf], 1.0),
    ],
)
def test_truncation_valerr(diag, offdiag, edge):
    with pytest.raises(ValueError):
        Truncation.from_arrays(diag, offdiag, edge)


def test_truncation_dense_and_matvec(random_truncations, rng):
    for t in random_truncations:
        dense = t.to_dense()
        assert np.array_equal(dense, dense.T)
        x = rng.normal(size=t.N)
        assert np.allclose(t.matvec(x), dense @ x, rtol=1e-14, atol=1e-12)
        assert t.scale >= np.abs(dense).sum(axis=1).max() - 1e-12
        assert t.scale >= 1.0


def test_eigenvalues_match_dense(random_truncations):
    for t in random_truncations:
        expected = np.linalg.eigvalsh(t.to_dense())
        got = eigenvalues(t)
        assert got.shape == (t.N,)
        assert np.allclose(got, expected, rtol=0.0, atol=1e-10 * t.scale)
        assert np.all(np.diff(got) > 0)


@pytest.mark.parametrize('N', [1, 2, 7, 50])
def test_eigenvalues_free_closed_form(spec_free, N):
    got = eigenvalues(truncate(spec_free, N))
    k = np.arange(N, 0, -1)
    assert np.allclose(got, 2 * np.cos(k * np.pi / (N + 1)), rtol=0.0, atol=1e-11)


def test_eigenvalues_tight_tolerance(spec_discrete):
    t = truncate(spec_discrete, 30)
    got = eigenvalues(t, 1e-30)
    assert np.allclose(got, np.linalg.eigvalsh(t.to_dense()), rtol=0.0, atol=1e-12 * t.scale)


def test_eigenvalues_window(random_truncations):
    t = random_truncations[-1]
    everything = eigenvalues(t)
    lo, hi = everything[5] - 1e-6, everything[20] + 1e-6
    windowed = eigenvalues(t, window=(lo, hi))
    assert np.allclose(windowed, everything[5:21], atol=1e-10 * t.scale)


def test_eigenvalues_empty_window(spec_discrete):
    assert eigenvalues(truncate(spec_discrete, 5), window=(1e6, 1e7)).size == 0


@pytest.mark.parametrize('kwargs', [{'tol': 0.0}, {'tol': -1.0}, {'window': (1.0, 1.0)}])
def test_eigenvalues_valerr(spec_discrete, kwargs):
    with pytest.raises(ValueError):
        eigenvalues(truncate(spec_discrete, 5), **kwargs)


def test_eigenvalue_count(random_truncations):
    for t in random_truncations:
        evs = np.linalg.eigvalsh(t.to_dense())
        probes = np.concatenate([[evs[0] - 1.0, evs[-1] + 1.0], 0.5 * (evs[:-1] + evs[1:])])
        for x in probes:
            assert eigenvalue_count(t, float(x)) == int(np.sum(evs < x))


def test_eigenvalue_count_zero_pivot():
    t = Truncation.from_arrays([0.0, 0.0], [3.0], 1.0)
    assert eigenvalue_count(t, 0.0) == 1
    assert eigenvalue_count(t, 3.0 + 1e-9) == 2


def test_interlacing(spec_free, spec_discrete):
    assert interlacing_check(spec_free, 3)
    for N in (1, 4, 25):
        assert interlacing_check(spec_discrete, N)


def test_interlacing_tabulated(rng):
    a = np.exp(rng.uniform(-1.0, 1.0, 30)).tolist()
    b = rng.normal(size=30).tolist()
    assert interlacing_check(CoefficientSpec.tabulated(a, b), 20)
