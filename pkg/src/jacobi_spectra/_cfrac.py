# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Jacobi continued fraction `K(lambda)`, truncated resolvents and convergence scans."""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, TypeAlias

import numpy as np
import numpy.typing as npt

from ._coeffseq import CoefficientSpec
from ._spectra import Truncation, eigenvalue_count, eigenvalues, truncate

logger = logging.getLogger(__name__)

FloatArray: TypeAlias = npt.NDArray[np.float64]
ComplexArray: TypeAlias = npt.NDArray[np.complex128]

POLE = complex(math.inf, 0.0)
"""Value returned at a pole of an approximant or a singular resolvent."""

_SINGULAR_RTOL = 1e-14
_PIVOT_RTOL = 1e-8
_RATE_FIT_MAX_RESIDUAL = 0.5


def _backward(t: Truncation, lam: complex) -> complex:
    # t_N = lam - b_N, t_k = lam - b_k - a_k^2 / t_{k+1}; a zero t_{k+1} makes t_k infinite,
    # and an infinite t_{k+1} drops the a_k^2 term.
    n = t.N
    cur: complex | None = lam - t.diag[n - 1]
    for k in range(n - 2, -1, -1):
        a = t.offdiag[k]
        if cur is None:
            cur = lam - t.diag[k]
        elif cur == 0:
            cur = None
        else:
            cur = lam - t.diag[k] - a * (a / cur)
    if cur is None:
        return 0j
    if cur == 0:
        return POLE
    return complex(1 / cur)


def approximant(spec: CoefficientSpec, N: int, lam: complex) -> complex:
    """The `N`-th approximant of the Jacobi continued fraction at `lam`.

    Parameters
    ----------
    spec : CoefficientSpec
    N : int
    lam : complex

    Returns
    -------
    complex
        `POLE` when `lam` is a pole of the approximant.

    Examples
    --------
    >>> free = CoefficientSpec.powers(0, 0, b_sign=0)
    >>> abs(approximant(free, 2, 3) - 3 / 8) < 1e-15
    True
    >>> approximant(free, 2, 1) == POLE
    True
    """
    return _backward(truncate(spec, N), complex(lam))


def _is_pole(t: Truncation, lam: complex, floor: float) -> bool:
    # lam lies within `floor` of an eigenvalue of J_N.
    if abs(lam.imag) > floor:
        return False
    return eigenvalue_count(t, lam.real + floor) > eigenvalue_count(t, lam.real - floor)


def _pivoted_11(t: Truncation, lam: complex) -> complex:
    shifted = lam * np.eye(t.N, dtype=np.complex128) - t.to_dense()
    rhs = np.zeros(t.N, dtype=np.complex128)
    rhs[0] = 1.0
    try:
        return complex(np.linalg.solve(shifted, rhs)[0])
    except np.linalg.LinAlgError:
        return POLE


def resolvent_11(t: Truncation, lam: complex) -> complex:
    """First diagonal entry of `(lam - J_N)^{-1}` by a tridiagonal solve of `(lam - J_N) y = e_1`.

    The unpivoted elimination breaks down where `lam` is an eigenvalue of a leading block `J_k`,
    `k < N`. A small pivot therefore hands over to a partially pivoted solve, unless a Sturm
    count places `lam` on the spectrum of `J_N` itself.

    Parameters
    ----------
    t : Truncation
    lam : complex

    Returns
    -------
    complex
        `POLE` when `lam` is within ``1e-14 * scale`` of an eigenvalue of `J_N`.

    Examples
    --------
    >>> free = Truncation.from_arrays([0.0, 0.0], [1.0], 1.0)
    >>> abs(resolvent_11(free, 3) - 3 / 8) < 1e-15
    True
    >>> resolvent_11(free, 0.0) == 0
    True
    >>> resolvent_11(free, 1.0) == POLE
    True
    """
    lam = complex(lam)
    n = t.N
    floor = _SINGULAR_RTOL * t.scale
    if _is_pole(t, lam, floor):
        logger.debug('resolvent of T_%d singular at %s', n, lam)
        return POLE
    handover = _PIVOT_RTOL * t.scale
    c = np.empty(n, dtype=np.complex128)
    r = np.empty(n, dtype=np.complex128)
    pivot = lam - t.diag[0]
    for k in range(n):
        if k > 0:
            a_prev = t.offdiag[k - 1]
            pivot = lam - t.diag[k] + a_prev * c[k - 1]
        if abs(pivot) <= handover:
            logger.debug('small pivot %d of T_%d at %s, using a pivoted solve', k + 1, n, lam)
            return _pivoted_11(t, lam)
        c[k] = -t.offdiag[k] / pivot if k < n - 1 else 0
        r[k] = 1 / pivot if k == 0 else a_prev * r[k - 1] / pivot
    y = r[n - 1]
    for k in range(n - 2, -1, -1):
        y = r[k] - c[k] * y
    return complex(y)


@dataclass(frozen=True, eq=False)
class CFEvaluation:
    """Approximants of `K(lam)` for `N = 1..N_max` with convergence diagnostics.

    `resolvent_match[N-1]` is the relative deviation between the `N`-th approximant and the
    truncated resolvent entry, ``nan`` when either is a pole. `tail_deviation` is the largest
    successive change over the last quarter of the approximants; `distance_to_spectrum` is the
    distance from `lam` to the eigenvalues of `T_{N_max}`. `rate` is the fitted geometric rate of
    the successive changes, reported only when the log-linear fit residual is below 0.5.
    """

    lam: complex
    approximants: ComplexArray
    resolvent_match: FloatArray
    converged: bool
    limit_estimate: complex | None
    rate: float | None
    rate_residual: float | None
    tail_deviation: float
    distance_to_spectrum: float
    pole_suspect: bool

    def to_mapping(self) -> dict[str, Any]:
        """Serialize the summary (not the approximant sequence) for the JSON report.

        Returns
        -------
        dict
        """
        finite = [x for x in self.resolvent_match if math.isfinite(x)]
        return {
            're_lambda': self.lam.real,
            'im_lambda': self.lam.imag,
            'N_max': int(self.approximants.size),
            'converged': self.converged,
            'limit_estimate': (
                None
                if self.limit_estimate is None
                else [self.limit_estimate.real, self.limit_estimate.imag]
            ),
            'rate': self.rate,
            'rate_residual': self.rate_residual,
            'tail_deviation': _json_float(self.tail_deviation),
            'distance_to_spectrum': _json_float(self.distance_to_spectrum),
            'pole_suspect': self.pole_suspect,
            'max_resolvent_deviation': max(finite) if finite else None,
        }


def _json_float(x: float) -> float | str:
    return float(x) if math.isfinite(x) else str(x)


def _leading(t: Truncation, n: int) -> Truncation:
    edge = t.edge if n == t.N else float(t.offdiag[n - 1])
    return Truncation(t.diag[:n], t.offdiag[: n - 1], edge)


def _relative(x: complex, y: complex) -> float:
    if cmath.isinf(x) or cmath.isinf(y):
        return math.nan
    scale = max(abs(x), abs(y))
    return abs(x - y) / scale if scale else 0.0


def _fit_rate(devs: FloatArray, ns: npt.NDArray[np.int64]) -> tuple[float | None, float | None]:
    mask = np.isfinite(devs) & (devs > 0)
    if mask.sum() < 3:
        return None, None
    x, y = ns[mask].astype(np.float64), np.log(devs[mask])
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    if residual >= _RATE_FIT_MAX_RESIDUAL:
        return None, residual
    return float(np.exp(slope)), residual


def _evaluate(
    big: Truncation, lam: complex, tail_tol: float, spectrum: FloatArray, pole_tol: float
) -> CFEvaluation:
    n_max = big.N
    approximants = np.empty(n_max, dtype=np.complex128)
    match = np.empty(n_max)
    for n in range(1, n_max + 1):
        t = _leading(big, n)
        approximants[n - 1] = _backward(t, lam)
        match[n - 1] = _relative(complex(approximants[n - 1]), resolvent_11(t, lam))

    with np.errstate(invalid='ignore'):
        devs = np.abs(np.diff(approximants))
    devs = np.where(np.isnan(devs), np.inf, devs)
    tail_len = max(1, devs.size // 4)
    tail = devs[-tail_len:]
    tail_deviation = float(tail.max())
    converged = bool(tail_deviation < tail_tol)
    rate, residual = _fit_rate(tail, np.arange(devs.size - tail_len, devs.size, dtype=np.int64))
    distance = float(np.min(np.abs(lam - spectrum))) if spectrum.size else math.inf
    last = complex(approximants[-1])
    return CFEvaluation(
        lam=lam,
        approximants=approximants,
        resolvent_match=match,
        converged=converged,
        limit_estimate=last if converged and not cmath.isinf(last) else None,
        rate=rate,
        rate_residual=residual,
        tail_deviation=tail_deviation,
        distance_to_spectrum=distance,
        pole_suspect=distance <= pole_tol,
    )


def convergence_scan(
    spec: CoefficientSpec,
    lambda_grid: Sequence[complex],
    N_max: int,
    tail_tol: float = 1e-8,
    *,
    eig_tol: float = 1e-12,
    pole_tol: float | None = None,
    threads: int = 1,
) -> list[CFEvaluation]:
    """Scan the convergence of the continued fraction over a grid of `lam`.

    Parameters
    ----------
    spec : CoefficientSpec
    lambda_grid : sequence of complex
    N_max : int
        At least 2.
    tail_tol : float, default ``1e-8``
        Bound on successive changes over the last quarter for convergence.
    eig_tol : float, default ``1e-12``
        Eigenvalue tolerance for the spectrum of `T_{N_max}`.
    pole_tol : float, optional
        Distance to the spectrum below which `lam` is a pole suspect; ``1e6 * eig_tol`` when
        omitted.
    threads : int, default ``1``

    Returns
    -------
    list of CFEvaluation
        In grid order.

    Raises
    ------
    ValueError
        If `N_max` < 2 or `tail_tol` is not positive.

    Examples
    --------
    >>> free = CoefficientSpec.powers(0, 0, b_sign=0)
    >>> (ev,) = convergence_scan(free, [3.0], 80)
    >>> ev.converged, abs(ev.limit_estimate - (3 - 5**0.5) / 2) < 1e-12
    (True, True)
    """
    if N_max < 2:
        raise ValueError('`N_max` should be at least 2')
    if not tail_tol > 0:
        raise ValueError('`tail_tol` should be positive')
    big = truncate(spec, N_max)
    spectrum = eigenvalues(big, eig_tol)
    tol = 1e6 * eig_tol if pole_tol is None else pole_tol
    grid = [complex(lam) for lam in lambda_grid]

    def run(lam: complex) -> CFEvaluation:
        return _evaluate(big, lam, tail_tol, spectrum, tol)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            out = list(pool.map(run, grid))
    else:
        out = [run(lam) for lam in grid]
    logger.info(
        'continued fraction scan: %d of %d points converged',
        sum(e.converged for e in out),
        len(out),
    )
    return out


def rectangular_grid(
    re_range: tuple[float, float], im_range: tuple[float, float], counts: tuple[int, int]
) -> list[complex]:
    """Points of a rectangular grid in the complex plane, real part varying fastest.

    Parameters
    ----------
    re_range, im_range : (float, float)
    counts : (int, int)

    Returns
    -------
    list of complex

    Examples
    --------
    >>> rectangular_grid((0, 1), (1, 1), (2, 1))
    [1j, (1+1j)]
    """
    re = np.linspace(re_range[0], re_range[1], counts[0])
    im = np.linspace(im_range[0], im_range[1], counts[1])
    return [complex(float(x), float(y)) for y in im for x in re]
