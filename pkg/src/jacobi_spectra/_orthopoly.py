# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Orthonormal polynomials and the Christoffel-Darboux diagnostics at `z = i`."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal, NamedTuple, TypeAlias

import numpy as np
import numpy.typing as npt

from ._coeffseq import CoefficientSpec
from ._exceptions import NumericalError
from ._spectra import eigenvalues, truncate

logger = logging.getLogger(__name__)

FloatArray: TypeAlias = npt.NDArray[np.float64]
ComplexArray: TypeAlias = npt.NDArray[np.complex128]

_RESCALE_ABOVE = 1e100
_RESCALE_BELOW = 1e-100
_CD_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class PolySequence:
    """Values `p_1(x)..p_n(x)` of the orthonormal polynomials at a fixed `x`.

    Each value is stored as a mantissa and a natural-log scale, `p_k = mantissa[k-1] *
    exp(scales[k-1])`, so the sequence stays representable for any growth of the coefficients.

    Parameters
    ----------
    x : complex
    mantissa : numpy.ndarray
    scales : numpy.ndarray
    """

    x: complex
    mantissa: ComplexArray
    scales: FloatArray

    def __len__(self) -> int:
        return int(self.mantissa.size)

    @property
    def scale_log(self) -> float:
        """Accumulated rescaling exponent at the last index.

        Returns
        -------
        float
        """
        return float(self.scales[-1])

    @property
    def values(self) -> ComplexArray:
        """Unscaled values `p_k(x)`; may overflow to infinity.

        Returns
        -------
        numpy.ndarray
        """
        with np.errstate(over='ignore', invalid='ignore'):
            return self.mantissa * np.exp(self.scales)

    @property
    def log_abs(self) -> FloatArray:
        """`log|p_k(x)|`, ``-inf`` at exact zeros.

        Returns
        -------
        numpy.ndarray
        """
        with np.errstate(divide='ignore'):
            return np.log(np.abs(self.mantissa)) + self.scales

    def signs(self) -> FloatArray:
        """Signs of the real parts of `p_k(x)`, meaningful for real `x`.

        Returns
        -------
        numpy.ndarray
        """
        return np.sign(self.mantissa.real)


def eval_poly(spec: CoefficientSpec, n_max: int, x: complex) -> PolySequence:
    """Evaluate `p_1(x)..p_{n_max}(x)` by the three-term recurrence.

    `p_{n+1} = ((x - b_n) p_n - a_{n-1} p_{n-1}) / a_n` with `p_0 = 0`, `p_1 = 1`. Coefficient
    ratios are formed in log space, and the running pair is rescaled whenever it leaves
    ``[1e-100, 1e100]``.

    Parameters
    ----------
    spec : CoefficientSpec
    n_max : int
    x : complex

    Returns
    -------
    PolySequence

    Raises
    ------
    ValueError
        If `n_max` < 1.

    Examples
    --------
    >>> free = CoefficientSpec.powers(0, 0, b_sign=0)
    >>> eval_poly(free, 3, 2.0).values.real.tolist()
    [1.0, 2.0, 3.0]
    >>> eval_poly(free, 3, 1j).values.tolist()
    [(1+0j), 1j, (-2+0j)]
    """
    if isinstance(n_max, bool) or not isinstance(n_max, int) or n_max < 1:
        raise ValueError('`n_max` should be a positive integer')
    x = complex(x)
    mantissa = np.empty(n_max, dtype=np.complex128)
    scales = np.empty(n_max, dtype=np.float64)
    mantissa[0], scales[0] = 1.0, 0.0
    prev, cur, scale = 0j, 1 + 0j, 0.0
    for n in range(1, n_max):
        _, _, log_a = spec.sample('a', n)
        b_sign, _, log_b = spec.sample('b', n)
        b_over_a = b_sign * math.exp(log_b - log_a) if b_sign else 0.0
        x_over_a = x * math.exp(-log_a) if log_a < 700 else 0j
        a_prev_over_a = math.exp(spec.sample('a', n - 1)[2] - log_a) if n > 1 else 0.0
        nxt = (x_over_a - b_over_a) * cur - a_prev_over_a * prev
        prev, cur = cur, nxt
        mag = max(abs(prev), abs(cur))
        if mag > _RESCALE_ABOVE or (0 < mag < _RESCALE_BELOW):
            prev, cur = prev / mag, cur / mag
            scale += math.log(mag)
        mantissa[n], scales[n] = cur, scale
    return PolySequence(x, mantissa, scales)


def recurrence_residuals(spec: CoefficientSpec, seq: PolySequence) -> FloatArray:
    """Relative residuals of the three-term recurrence at the interior indices.

    Entry `n - 1` is `|a_n p_{n+1} + b_n p_n + a_{n-1} p_{n-1} - x p_n|` divided by the sum of
    the magnitudes of those terms, for `n = 1..len(seq) - 1`.

    Parameters
    ----------
    spec : CoefficientSpec
    seq : PolySequence

    Returns
    -------
    numpy.ndarray
    """
    out = np.zeros(max(len(seq) - 1, 0))
    for n in range(1, len(seq)):
        ref = seq.scales[n]
        p_next = seq.mantissa[n]
        p_cur = seq.mantissa[n - 1] * math.exp(seq.scales[n - 1] - ref)
        p_prev = seq.mantissa[n - 2] * math.exp(seq.scales[n - 2] - ref) if n > 1 else 0j
        a_n = spec.eval_a(n)
        a_prev = spec.eval_a(n - 1) if n > 1 else 0.0
        terms = (a_n * p_next, spec.eval_b(n) * p_cur, a_prev * p_prev, -seq.x * p_cur)
        size = sum(abs(t) for t in terms)
        out[n - 1] = abs(sum(terms)) / size if size else 0.0
    return out


class CDCheck(NamedTuple):
    """Both sides of `sum_{k<=n} |v_k|^2 = a_n Im(v_{n+1} conj(v_n))` and whether they agree."""

    lhs: float
    rhs: float
    ok: bool


def _log_sumsq(seq: PolySequence) -> FloatArray:
    return np.logaddexp.accumulate(2 * seq.log_abs)


def cd_check(spec: CoefficientSpec, n: int) -> CDCheck:
    """Check the Christoffel-Darboux identity at `z = i` up to index `n`.

    Parameters
    ----------
    spec : CoefficientSpec
    n : int

    Returns
    -------
    CDCheck
        `ok` when the relative difference is at most ``1e-9``; the sides overflow to ``inf``
        for huge values, while `ok` is decided in log space.

    Examples
    --------
    >>> check = cd_check(CoefficientSpec.powers(0, 0, b_sign=0), 2)
    >>> round(check.lhs, 12), round(check.rhs, 12), check.ok
    (2.0, 2.0, True)
    """
    if n < 1:
        raise ValueError('`n` should be a positive integer')
    seq = eval_poly(spec, n + 1, 1j)
    log_lhs = float(_log_sumsq(seq)[n - 1])
    cross = (seq.mantissa[n] * np.conj(seq.mantissa[n - 1])).imag
    log_scale = spec.sample('a', n)[2] + seq.scales[n] + seq.scales[n - 1]
    # rhs / lhs without forming either side
    ratio = cross * math.exp(log_scale - log_lhs) if cross else 0.0
    ok = abs(ratio - 1.0) <= _CD_RTOL
    lhs = math.exp(log_lhs) if log_lhs < 700 else math.inf
    rhs = ratio * lhs if math.isfinite(lhs) else math.inf
    return CDCheck(float(lhs), float(rhs), bool(ok))


def cd0_check(spec: CoefficientSpec, n: int) -> bool:
    """Check `1 <= a_n |v_n| |v_{n+1}|`, with ``1e-9`` slack.

    Parameters
    ----------
    spec : CoefficientSpec
    n : int

    Returns
    -------
    bool

    Examples
    --------
    >>> cd0_check(CoefficientSpec.powers(1, 1), 1)
    True
    """
    if n < 1:
        raise ValueError('`n` should be a positive integer')
    seq = eval_poly(spec, n + 1, 1j)
    logs = seq.log_abs
    total = spec.sample('a', n)[2] + logs[n - 1] + logs[n]
    return bool(total >= math.log1p(-_CD_RTOL))


class PartialSums(NamedTuple):
    """Partial sums `S_n = sum_{k<=n} |v_k|^2` and their logarithms."""

    values: FloatArray
    logs: FloatArray


def sumsq_vi(spec: CoefficientSpec, n_max: int) -> PartialSums:
    """Partial sums of `|p_k(i)|**2` for `n = 1..n_max`.

    Parameters
    ----------
    spec : CoefficientSpec
    n_max : int

    Returns
    -------
    PartialSums
        Nondecreasing, with first entry exactly 1. `values` may overflow to ``inf``; `logs` stay
        finite.

    Examples
    --------
    >>> np.round(sumsq_vi(CoefficientSpec.powers(0, 0, b_sign=0), 3).values, 9).tolist()
    [1.0, 2.0, 6.0]
    """
    logs = _log_sumsq(eval_poly(spec, n_max, 1j))
    with np.errstate(over='ignore'):
        values = np.exp(logs)
    return PartialSums(values, logs)


def sumsq_trend(sums: PartialSums, *, rtol: float = 1e-12) -> Literal['saturating', 'growing']:
    """Label partial sums by their relative growth over the last decade of indices.

    Parameters
    ----------
    sums : PartialSums
        At least 10 entries.
    rtol : float, default ``1e-12``

    Returns
    -------
    {'saturating', 'growing'}

    Raises
    ------
    ValueError
        If fewer than 10 partial sums are given.
    """
    n = len(sums.logs)
    if n < 10:
        raise ValueError('`sums` should hold at least 10 entries')
    growth = -math.expm1(float(sums.logs[n // 10 - 1] - sums.logs[-1]))
    return 'saturating' if growth < rtol else 'growing'


def zero_count(spec: CoefficientSpec, N: int, lo: float, hi: float) -> int:
    """Number of zeros of `p_{N+1}` in ``(lo, hi]``, from sign changes of `p_1..p_{N+1}`.

    Parameters
    ----------
    spec : CoefficientSpec
    N : int
    lo, hi : float

    Returns
    -------
    int

    Examples
    --------
    >>> zero_count(CoefficientSpec.powers(0, 0, b_sign=0), 2, -2.0, 0.0)
    1
    """
    if not lo < hi:
        raise ValueError('`lo` should be below `hi`')
    return _sign_changes(spec, N, lo) - _sign_changes(spec, N, hi)


def _sign_changes(spec: CoefficientSpec, N: int, x: float) -> int:
    signs = eval_poly(spec, N + 1, x).signs()
    # an exact interior zero takes the sign opposite to its predecessor
    for k in range(1, signs.size):
        if signs[k] == 0:
            signs[k] = -signs[k - 1]
    return int(np.sum(signs[1:] != signs[:-1]))


def zeros_p(spec: CoefficientSpec, N: int, tol: float = 1e-12) -> FloatArray:
    """Zeros of `p_{N+1}`, i.e. the eigenvalues of `T_N`.

    The eigenvalues are cross-checked against the sign pattern of `p_{N+1}` between them.

    Parameters
    ----------
    spec : CoefficientSpec
    N : int
    tol : float, default ``1e-12``

    Returns
    -------
    numpy.ndarray

    Raises
    ------
    NumericalError
        If `p_{N+1}` does not alternate in sign between consecutive eigenvalues.

    Examples
    --------
    >>> np.round(zeros_p(CoefficientSpec.powers(0, 0, b_sign=0), 2), 12).tolist()
    [-1.0, 1.0]
    """
    zeros = eigenvalues(truncate(spec, N), tol)
    if zeros.size > 1:
        probes = np.concatenate(
            ([zeros[0] - 1.0], 0.5 * (zeros[1:] + zeros[:-1]), [zeros[-1] + 1.0])
        )
        signs = np.array([eval_poly(spec, N + 1, float(x)).signs()[-1] for x in probes])
        if np.any(signs == 0) or np.any(signs[1:] == signs[:-1]):
            raise NumericalError(
                f'sign pattern of p_{N + 1} disagrees with the eigenvalues of T_{N}'
            )
    logger.debug('zeros of p_%d cross-checked', N + 1)
    return zeros
