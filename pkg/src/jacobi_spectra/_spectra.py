# Copyright 2025 The jacobi-spectra developers
# This file is part of the `jacobi-spectra` package, which is released under
# the Apache Licence, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

"""Finite truncations `T_N`, their eigenpairs, coordinate identities and limit points."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, NamedTuple, TypeAlias

import numpy as np
import numpy.typing as npt

from ._coeffseq import CoefficientSpec
from ._exceptions import DegeneratePivotError, NumericalError
from ._multiindex import generate

logger = logging.getLogger(__name__)

FloatArray: TypeAlias = npt.NDArray[np.float64]

_EPS = float(np.finfo(np.float64).eps)
_TINY = float(np.finfo(np.float64).tiny)
_MAX_BISECTIONS = 2000
_RAYLEIGH_STEPS = 3


@dataclass(frozen=True, eq=False)
class Truncation:
    """The `N x N` principal submatrix `J_N` with the first neglected off-diagonal `a_N`.

    Parameters
    ----------
    diag : numpy.ndarray
        `b_1..b_N`.
    offdiag : numpy.ndarray
        `a_1..a_{N-1}`, strictly positive.
    edge : float
        `a_N`.

    Raises
    ------
    ValueError
        If lengths are inconsistent or entries are invalid.

    Examples
    --------
    >>> t = Truncation.from_arrays([1.0, 4.0], [1.0], 2.0)
    >>> t.N, t.to_dense().tolist()
    (2, [[1.0, 1.0], [1.0, 4.0]])
    """

    diag: FloatArray
    offdiag: FloatArray
    edge: float

    def __post_init__(self) -> None:
        if self.diag.ndim != 1 or self.diag.size < 1:
            raise ValueError('`diag` should be a nonempty 1-D array')
        if self.offdiag.shape != (self.diag.size - 1,):
            raise ValueError('`offdiag` should hold exactly one entry fewer than `diag`')
        if not (np.all(np.isfinite(self.diag)) and np.all(np.isfinite(self.offdiag))):
            raise ValueError('entries of a truncation should be finite')
        if np.any(self.offdiag <= 0) or not self.edge > 0:
            raise ValueError('off-diagonal entries and `edge` should be strictly positive')
        self.diag.setflags(write=False)
        self.offdiag.setflags(write=False)

    @classmethod
    def from_arrays(
        cls, diag: Sequence[float] | FloatArray, offdiag: Sequence[float] | FloatArray, edge: float
    ) -> Truncation:
        """Build a truncation from plain sequences.

        Parameters
        ----------
        diag, offdiag : sequence of float
        edge : float

        Returns
        -------
        Truncation
        """
        return cls(
            np.array(diag, dtype=np.float64),
            np.array(offdiag, dtype=np.float64),
            float(edge),
        )

    @property
    def N(self) -> int:
        """Order of the truncation.

        Returns
        -------
        int
        """
        return int(self.diag.size)

    @property
    def scale(self) -> float:
        """Infinity norm of `J_N`, at least 1, used for relative tolerances.

        Returns
        -------
        float
        """
        radius = np.abs(self.diag).copy()
        radius[:-1] += self.offdiag
        radius[1:] += self.offdiag
        return max(1.0, float(radius.max()))

    def a(self, i: int) -> float:
        """Off-diagonal `a_i` of the underlying operator, with `a_i = 0` for `i <= 0`.

        Parameters
        ----------
        i : int
            At most `N`.

        Returns
        -------
        float
        """
        if i <= 0:
            return 0.0
        if i == self.N:
            return self.edge
        return float(self.offdiag[i - 1])

    def matvec(self, x: FloatArray) -> FloatArray:
        """Apply `J_N` to a vector.

        Parameters
        ----------
        x : numpy.ndarray

        Returns
        -------
        numpy.ndarray
        """
        out = self.diag * x
        out[:-1] += self.offdiag * x[1:]
        out[1:] += self.offdiag * x[:-1]
        return out

    def to_dense(self) -> FloatArray:
        """Dense symmetric matrix of `J_N`.

        Returns
        -------
        numpy.ndarray
        """
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def truncate(spec: CoefficientSpec, N: int) -> Truncation:
    """Principal submatrix of order `N` of the Jacobi matrix of `spec`.

    Parameters
    ----------
    spec : CoefficientSpec
    N : int

    Returns
    -------
    Truncation

    Raises
    ------
    ValueError
        If `N` < 1.
    CoefficientDomainError
        If a coefficient is invalid.

    Examples
    --------
    >>> t = truncate(CoefficientSpec.powers(1, 2), 2)
    >>> t.diag.tolist(), t.offdiag.tolist(), t.edge
    ([1.0, 4.0], [1.0], 2.0)
    """
    if isinstance(N, bool) or not isinstance(N, int) or N < 1:
        raise ValueError('`N` should be a positive integer')
    diag = spec.b_array(1, N)
    offdiag = spec.a_array(1, N - 1) if N > 1 else np.empty(0)
    return Truncation(diag, offdiag, spec.eval_a(N))


# Eigenvalues
# -----------


def _sturm_counts(t: Truncation, xs: FloatArray) -> npt.NDArray[np.int64]:
    # Negative pivots of the LDL^T factorization of J_N - x count eigenvalues below x.
    floor = _TINY / _EPS
    d = t.diag[0] - xs
    d = np.where(d == 0.0, -floor, d)
    counts = (d < 0).astype(np.int64)
    with np.errstate(over='ignore'):
        for k in range(1, t.N):
            a = t.offdiag[k - 1]
            d = t.diag[k] - xs - a * (a / d)
            d = np.where(d == 0.0, -floor, d)
            counts += d < 0
    return counts


def eigenvalue_count(t: Truncation, x: float) -> int:
    """Number of eigenvalues of `J_N` strictly below `x` (Sturm count).

    Parameters
    ----------
    t : Truncation
    x : float

    Returns
    -------
    int

    Examples
    --------
    >>> eigenvalue_count(Truncation.from_arrays([0.0, 0.0], [3.0], 1.0), 0.0)
    1
    """
    return int(_sturm_counts(t, np.array([x], dtype=np.float64))[0])


def _gershgorin(t: Truncation) -> tuple[float, float]:
    radius = np.zeros(t.N)
    radius[:-1] += t.offdiag
    radius[1:] += t.offdiag
    lo = float(np.min(t.diag - radius))
    hi = float(np.max(t.diag + radius))
    pad = _EPS * t.scale
    return lo - pad, hi + pad


def eigenvalues(
    t: Truncation,
    tol: float = 1e-12,
    *,
    window: tuple[float, float] | None = None,
) -> FloatArray:
    """Eigenvalues of `J_N` by simultaneous bisection on Sturm counts.

    Every eigenvalue is bracketed to width `tol`, or to a few ulps when `tol` lies below the
    floating-point spacing at its magnitude.

    Parameters
    ----------
    t : Truncation
    tol : float, default ``1e-12``
    window : (float, float), optional
        Return only eigenvalues in ``[lo, hi)``.

    Returns
    -------
    numpy.ndarray
        Strictly increasing.

    Raises
    ------
    ValueError
        If `tol` is not positive.

    Examples
    --------
    >>> free = Truncation.from_arrays([0.0] * 4, [1.0] * 3, 1.0)
    >>> np.round(eigenvalues(free), 6).tolist()
    [-1.618034, -0.618034, 0.618034, 1.618034]
    >>> eigenvalues(Truncation.from_arrays([7.0], [], 1.0)).tolist()
    [7.0]
    """
    if not tol > 0:
        raise ValueError('`tol` should be positive')
    g_lo, g_hi = _gershgorin(t)
    first, last = 0, t.N
    if window is not None:
        w_lo, w_hi = window
        if not w_lo < w_hi:
            raise ValueError('`window` should satisfy lo < hi')
        first = eigenvalue_count(t, w_lo) if w_lo > g_lo else 0
        last = eigenvalue_count(t, w_hi) if w_hi < g_hi else t.N
        g_lo, g_hi = max(g_lo, w_lo), min(g_hi, w_hi)
    if last <= first:
        return np.empty(0)

    ks = np.arange(first, last)
    lo = np.full(ks.size, g_lo)
    hi = np.full(ks.size, g_hi)
    for step in range(_MAX_BISECTIONS):
        width = hi - lo
        active = width > np.maximum(tol, 4 * _EPS * np.maximum(np.abs(lo), np.abs(hi)))
        if not active.any():
            break
        mid = lo + 0.5 * width
        below = _sturm_counts(t, mid) >= ks + 1
        hi = np.where(active & below, mid, hi)
        lo = np.where(active & ~below, mid, lo)
    else:
        raise NumericalError(f'bisection did not converge in {_MAX_BISECTIONS} steps')
    logger.debug('bisection of %d eigenvalues of T_%d took %d steps', ks.size, t.N, step)
    return 0.5 * (lo + hi)


# Eigenvectors
# ------------


@dataclass(frozen=True, eq=False)
class EigenPair:
    """Eigenvalue `lambda_N` with unit eigenvector `x_N` of a truncation.

    The vector is normalized with a positive first component, so `vector[k-1]` carries the sign of
    `p_k(lambda_N)`. `log_abs_last` is `log|delta_N|`, exact even when `last_coord` underflows.
    """

    lam: float
    vector: FloatArray
    last_coord: float
    log_abs_last: float
    residual: float = field(default=0.0)


def _pivots(t: Truncation, lam: float) -> tuple[FloatArray, FloatArray]:
    # Forward pivots D+ of J - lam = L D+ L^T and backward pivots D- of the U D- U^T factorization.
    n = t.N
    floor = _EPS * t.scale
    shifted = t.diag - lam
    fwd = np.empty(n)
    bwd = np.empty(n)
    with np.errstate(over='ignore'):
        fwd[0] = shifted[0]
        for k in range(1, n):
            prev = fwd[k - 1] if fwd[k - 1] != 0.0 else floor
            a = t.offdiag[k - 1]
            fwd[k] = shifted[k] - a * (a / prev)
        bwd[n - 1] = shifted[n - 1]
        for k in range(n - 2, -1, -1):
            nxt = bwd[k + 1] if bwd[k + 1] != 0.0 else floor
            a = t.offdiag[k]
            bwd[k] = shifted[k] - a * (a / nxt)
    return fwd, bwd


def _twisted_vector(t: Truncation, lam: float) -> tuple[FloatArray, FloatArray]:
    # Signs and log-magnitudes of the eigenvector solved from both ends.
    n = t.N
    fwd, bwd = _pivots(t, lam)
    gamma = fwd + bwd - (t.diag - lam)
    twist = int(np.argmin(np.abs(gamma)))
    floor = _EPS * t.scale
    signs = np.ones(n)
    logs = np.zeros(n)
    for k in range(twist - 1, -1, -1):
        d = fwd[k] if fwd[k] != 0.0 else floor
        ratio = -t.offdiag[k] / d
        signs[k] = signs[k + 1] * np.sign(ratio)
        logs[k] = logs[k + 1] + math.log(t.offdiag[k]) - math.log(abs(d))
    for k in range(twist + 1, n):
        d = bwd[k] if bwd[k] != 0.0 else floor
        ratio = -t.offdiag[k - 1] / d
        signs[k] = signs[k - 1] * np.sign(ratio)
        logs[k] = logs[k - 1] + math.log(t.offdiag[k - 1]) - math.log(abs(d))
    return signs, logs


def _normalize(signs: FloatArray, logs: FloatArray) -> tuple[FloatArray, float]:
    top = float(logs.max())
    mags = np.exp(logs - top)
    log_norm = 0.5 * math.log(float(np.sum(mags**2)))
    vector = signs * mags / math.exp(log_norm)
    if vector[0] < 0 or (vector[0] == 0 and signs[0] < 0):
        vector = -vector
    return vector, float(logs[-1] - top - log_norm)


def eigenvector(t: Truncation, lam: float) -> EigenPair:
    """Unit eigenvector of `J_N` at an eigenvalue, with `delta_N` kept in log space.

    The eigen-equation is solved from both ends and spliced where the twisted pivot is smallest;
    a few Rayleigh-quotient steps refine `lam`. The returned `EigenPair.lam` is the refined value
    and generally differs from the argument in the last digits; pass `pair.lam` on to
    `residual_split` and `delta_expansion` when the pair itself is the reference.

    Parameters
    ----------
    t : Truncation
    lam : float
        An eigenvalue of `t`, to bisection accuracy.

    Returns
    -------
    EigenPair

    Raises
    ------
    NumericalError
        If the residual `||J_N x - lam x||` exceeds `1e-9 (1 + |lam|)` beyond the rounding floor.

    Examples
    --------
    >>> free = Truncation.from_arrays([0.0] * 3, [1.0] * 2, 1.0)
    >>> bool(np.allclose(eigenvector(free, 0.0).vector, [2**-0.5, 0.0, -(2**-0.5)]))
    True
    """
    if t.N == 1:
        return EigenPair(float(t.diag[0]), np.ones(1), 1.0, 0.0, 0.0)

    best: tuple[float, float, FloatArray, float] | None = None
    current = float(lam)
    for step in range(_RAYLEIGH_STEPS + 1):
        vector, log_last = _normalize(*_twisted_vector(t, current))
        residual = float(np.linalg.norm(t.matvec(vector) - current * vector))
        if best is None or residual < best[0]:
            best = (residual, current, vector, log_last)
        if residual <= _EPS * t.scale:
            break
        rayleigh = float(vector @ t.matvec(vector))
        if rayleigh == current:
            break
        current = rayleigh
    assert best is not None
    residual, current, vector, log_last = best
    logger.debug(
        'eigenvector of T_%d at %.17g: residual %.3e after %d steps', t.N, current, residual, step
    )
    threshold = 1e-9 * (1.0 + abs(current)) + 64 * _EPS * t.scale
    if residual > threshold:
        raise NumericalError(
            f'eigenvector residual {residual:.3e} at lambda={current:.17g} exceeds {threshold:.3e}'
        )
    return EigenPair(current, vector, float(vector[-1]), log_last, residual)


def eigenpairs(t: Truncation, tol: float = 1e-12) -> list[EigenPair]:
    """All eigenpairs of a truncation, in increasing order of eigenvalue.

    Parameters
    ----------
    t : Truncation
    tol : float, default ``1e-12``

    Returns
    -------
    list of EigenPair
    """
    return [eigenvector(t, float(lam)) for lam in eigenvalues(t, tol)]


# Coordinate identities
# ---------------------


class ResidualSplit(NamedTuple):
    """Both terms of `||(T - lam) x_N||^2 = (lam - lambda_N)^2 + a_N^2 delta_N^2`."""

    total: float
    term1: float
    term2: float


def residual_split(t: Truncation, pair: EigenPair, lambda_target: float) -> ResidualSplit:
    """Split `||(T - lambda_target) x_N||**2` into the eigenvalue gap and the boundary leak.

    Parameters
    ----------
    t : Truncation
    pair : EigenPair
    lambda_target : float

    Returns
    -------
    ResidualSplit

    Examples
    --------
    >>> free = Truncation.from_arrays([0.0, 0.0], [1.0], 1.0)
    >>> round(residual_split(free, eigenvector(free, 1.0), 1.0).total, 12)
    0.5
    """
    term1 = (lambda_target - pair.lam) ** 2
    log_leak = math.log(t.edge) + pair.log_abs_last
    term2 = math.exp(2 * log_leak) if log_leak < 350 else math.inf
    return ResidualSplit(term1 + term2, term1, term2)


def _check_pivots(t: Truncation, lam: float, m: int) -> None:
    floor = 1e-12 * t.scale
    for j in range(min(m, t.N)):
        if abs(lam - t.diag[t.N - 1 - j]) <= floor:
            raise DegeneratePivotError(
                j, f'pivot `lambda - b_{{N-j}}` vanishes at j={j} (lambda={lam:.17g})'
            )


def delta_expansion(t: Truncation, pair: EigenPair, m: int) -> float:
    """Expand `delta_N` over `I^_m+` through `m` rows of the eigen-equation.

    Returns the sum of `prod_s a_{N-k_s} / (lambda_N - b_{N-j_s}) * delta_{N-j_{m+1}}`, which
    equals `delta_N`.

    Parameters
    ----------
    t : Truncation
    pair : EigenPair
    m : int
        1 through `N`.

    Returns
    -------
    float

    Raises
    ------
    ValueError
        If `m` lies outside 1..`N`.
    DegeneratePivotError
        If `lambda_N` is within `1e-12 * scale` of some `b_{N-j}`, `j < m`.
    """
    n = t.N
    if not 1 <= m <= n:
        raise ValueError(f'`m` should lie in 1..{n}')
    lam = pair.lam
    _check_pivots(t, lam, m)
    total = 0.0
    for p in generate('I_hat_plus', m):
        term = 1.0
        for s in range(m):
            term *= t.a(n - p.k[s]) / (lam - t.diag[n - 1 - p.j[s]])
            if term == 0.0:
                break
        last = n - p.j[m]
        total += term * (pair.vector[last - 1] if last >= 1 else 0.0)
    return float(total)


def F_bound(t: Truncation, lam: float, m: int) -> float:
    """Bound `F_{m,N}` on `|delta_N|`: the sum over `I_m+` of `prod a_{N-k_s}/|lam - b_{N-j_s}|`.

    Parameters
    ----------
    t : Truncation
    lam : float
    m : int
        0 gives the trivial bound 1.

    Returns
    -------
    float
        ``inf`` when a touched `|lam - b|` vanishes exactly.

    Raises
    ------
    DegeneratePivotError
        If a touched `|lam - b|` is nonzero but within `1e-12 * scale`.

    Examples
    --------
    >>> free = Truncation.from_arrays([0.0] * 3, [1.0] * 2, 1.0)
    >>> round(F_bound(free, 2**0.5, 1), 12) == round(2**-0.5, 12)
    True
    >>> F_bound(free, 0.0, 1)
    inf
    """
    if m == 0:
        return 1.0
    n = t.N
    if not 1 <= m <= n:
        raise ValueError(f'`m` should lie in 0..{n}')
    gaps = np.abs(lam - t.diag[::-1][:m])
    if np.any(gaps == 0.0):
        return math.inf
    _check_pivots(t, lam, m)
    total = 0.0
    for p in generate('I_plus', m):
        term = 1.0
        for s in range(m):
            term *= t.a(n - p.k[s]) / gaps[p.j[s]]
        total += term
    return float(total)


# Limit points
# ------------


@dataclass(frozen=True)
class LimitCandidate:
    """A stabilized eigenvalue chain across truncations.

    `gencond_track` holds `(N, a_N |delta_N|, log(a_N |delta_N|))` along the chain.
    """

    location: float
    support: tuple[int, ...]
    spread: float
    gencond_track: tuple[tuple[int, float, float], ...]


@dataclass(frozen=True)
class LimitPointReport:
    """Estimated limit points of truncation eigenvalues inside a window.

    `spectra` keeps the raw eigenvalues in the window per `N` for re-clustering; `candidates`
    come from the anchored rule of `limit_points`, not from single-linkage clustering.
    """

    window: tuple[float, float]
    cluster_tol: float
    N_list: tuple[int, ...]
    candidates: tuple[LimitCandidate, ...]
    spectra: dict[int, FloatArray] = field(repr=False)

    def to_mapping(self) -> dict[str, Any]:
        """Serialize for the JSON report.

        Returns
        -------
        dict
        """
        return {
            'window': list(self.window),
            'cluster_tol': self.cluster_tol,
            'N_list': list(self.N_list),
            'candidates': [
                {
                    'location': c.location,
                    'support': list(c.support),
                    'spread': c.spread,
                    'gencond_track': [
                        {'N': n, 'a_N_delta_N': v if math.isfinite(v) else str(v), 'log': lg}
                        for n, v, lg in c.gencond_track
                    ],
                }
                for c in self.candidates
            ],
        }


def _check_n_list(N_list: Sequence[int]) -> tuple[int, ...]:
    ns = tuple(int(n) for n in N_list)
    if not ns:
        raise ValueError('`N_list` should be nonempty')
    if ns[0] < 1 or any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError('`N_list` should be strictly increasing positive integers')
    return ns


def limit_points(
    spec: CoefficientSpec,
    N_list: Sequence[int],
    window: tuple[float, float],
    cluster_tol: float = 1e-3,
    *,
    tol: float = 1e-12,
    threads: int = 1,
) -> LimitPointReport:
    """Estimate the limit points `Lambda(T)` inside a window from truncation spectra.

    Clustering is anchored, not single-linkage: every eigenvalue of the largest truncation is an
    anchor, and a candidate is kept when each of the last `ceil(3/4 * len(N_list))` truncations
    has an eigenvalue within `cluster_tol / 2` of the anchor. The reported spread is therefore at
    most `cluster_tol`. Re-clustering the raw `spectra` of the report with another rule can give
    different candidates.

    Parameters
    ----------
    spec : CoefficientSpec
    N_list : sequence of int
        Strictly increasing.
    window : (float, float)
    cluster_tol : float, default ``1e-3``
    tol : float, default ``1e-12``
        Eigenvalue tolerance.
    threads : int, default ``1``

    Returns
    -------
    LimitPointReport

    Raises
    ------
    ValueError
        On an empty or unsorted `N_list`, an empty window or a nonpositive tolerance.
    """
    ns = _check_n_list(N_list)
    lo, hi = float(window[0]), float(window[1])
    if not lo < hi:
        raise ValueError('`window` should satisfy lo < hi')
    if not cluster_tol > 0:
        raise ValueError('`cluster_tol` should be positive')

    def solve(n: int) -> tuple[Truncation, FloatArray]:
        t = truncate(spec, n)
        return t, eigenvalues(t, tol, window=(lo, hi))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            solved = list(pool.map(solve, ns))
    else:
        solved = [solve(n) for n in ns]
    spectra = {n: evs for n, (_, evs) in zip(ns, solved)}

    tail = solved[len(ns) - math.ceil(3 * len(ns) / 4) :]
    tail_ns = ns[len(ns) - len(tail) :]
    candidates = []
    for anchor in spectra[ns[-1]]:
        chain: list[float] = []
        for _, evs in tail:
            if evs.size == 0:
                break
            nearest = float(evs[np.argmin(np.abs(evs - anchor))])
            if abs(nearest - anchor) > cluster_tol / 2:
                break
            chain.append(nearest)
        else:
            track = []
            for (t, _), n, lam in zip(tail, tail_ns, chain):
                pair = eigenvector(t, lam)
                log_val = math.log(t.edge) + pair.log_abs_last
                track.append((n, math.exp(log_val) if log_val < 700 else math.inf, log_val))
            candidates.append(
                LimitCandidate(
                    location=float(np.median(chain)),
                    support=tail_ns,
                    spread=max(chain) - min(chain),
                    gencond_track=tuple(track),
                )
            )
    logger.info('%d limit-point candidates in [%g, %g]', len(candidates), lo, hi)
    return LimitPointReport((lo, hi), cluster_tol, ns, tuple(candidates), spectra)


def interlacing_check(spec: CoefficientSpec, N: int, tol: float = 1e-12) -> bool:
    """Whether the eigenvalues of `T_N` strictly interlace those of `T_{N+1}`.

    Parameters
    ----------
    spec : CoefficientSpec
    N : int
    tol : float, default ``1e-12``

    Returns
    -------
    bool

    Examples
    --------
    >>> interlacing_check(CoefficientSpec.powers(0, 0, b_sign=0), 3)
    True
    """
    inner = eigenvalues(truncate(spec, N), tol)
    outer = eigenvalues(truncate(spec, N + 1), tol)
    return bool(np.all(outer[:-1] < inner) and np.all(inner < outer[1:]))
