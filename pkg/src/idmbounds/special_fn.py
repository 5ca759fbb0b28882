"""Digamma/trigamma kernel and the expected-entropy summand.

The expected Shannon entropy of a Dirichlet posterior decomposes into a sum
of the concave scalar function

    h(u) = u * (psi(T + 1) - psi(T * u + 1)),        T = n + s,

whose exact value at integer arguments reduces to rational harmonic sums.
This module provides ``psi`` (digamma) and ``psi'`` (trigamma) with exact
closed forms at integer arguments and a recurrence-plus-asymptotic scheme
elsewhere, the summand ``h`` with its derivative, exact ``Fraction``
versions for golden values, and the Gaussian credible multiplier
``kappa(alpha)`` obtained from an integrated error function.

All float kernels accept scalars or numpy arrays and operate elementwise.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

#: Euler's constant, stored to full double precision.
EULER_GAMMA = 0.57721566490153286

_PI2_OVER_6 = math.pi**2 / 6.0

# Arguments within this distance of an integer take the exact closed form.
_INT_SNAP_TOL = 1e-9

# Recurrence targets: shift arguments at least this far up before applying
# the truncated asymptotic series, keeping its error below ~1e-12.
_DIGAMMA_SHIFT = 49.0
_TRIGAMMA_SHIFT = 33.0


class _PartialSumTable:
    """Compensated running partial sums ``sum_{i<=k} term(i)``.

    Neumaier summation keeps every stored prefix within one ulp of the
    exact value, which the integer closed forms below rely on.
    """

    def __init__(self, term):
        self._term = term
        self._lock = threading.Lock()
        self._sums = np.zeros(1)
        self._count = 1  # number of valid entries (index 0 holds the empty sum)
        self._s = 0.0
        self._c = 0.0

    def _grow(self, upto: int) -> None:
        if upto < self._count:
            return
        with self._lock:
            if upto + 1 > self._sums.size:
                new = np.zeros(max(upto + 1, 2 * self._sums.size))
                new[: self._count] = self._sums[: self._count]
                self._sums = new
            for i in range(self._count, upto + 1):
                x = self._term(i)
                t = self._s + x
                if abs(self._s) >= abs(x):
                    self._c += (self._s - t) + x
                else:
                    self._c += (x - t) + self._s
                self._s = t
                self._sums[i] = self._s + self._c
                self._count = i + 1

    def take(self, ks: np.ndarray) -> np.ndarray:
        ks = np.asarray(ks, dtype=np.int64)
        if ks.size:
            self._grow(int(ks.max()))
        return self._sums[: self._count].take(ks)


_HARMONIC = _PartialSumTable(lambda i: 1.0 / i)
_INV_SQUARES = _PartialSumTable(lambda i: 1.0 / (i * i))


def _as_positive_array(x, name: str):
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    if np.any(arr <= 0):
        raise ValueError(f"{name} must be strictly positive")
    return np.atleast_1d(np.array(arr, dtype=float)), scalar, arr.shape


def _compensated_reciprocal_shift(values: np.ndarray, shift: float, power: int):
    """Accumulate ``sum 1/(x+j)**power`` while shifting ``x`` above ``shift``."""
    steps = np.ceil(shift - values)
    np.clip(steps, 0.0, None, out=steps)
    max_steps = int(steps.max())
    if max_steps == 0:
        return np.zeros_like(values), values.copy()
    if values.size * max_steps <= 2_000_000:
        # One shot: a (N, max_steps) grid of shifted arguments, summed
        # pairwise.  Cheaper than ~shift masked passes for small inputs.
        grid = values[:, None] + np.arange(max_steps)[None, :]
        terms = 1.0 / grid if power == 1 else 1.0 / (grid * grid)
        terms[np.arange(max_steps)[None, :] >= steps[:, None]] = 0.0
        return terms.sum(axis=1), values + steps
    acc = np.zeros_like(values)
    comp = np.zeros_like(values)
    cur = values.copy()
    while True:
        mask = cur < shift
        if not mask.any():
            break
        term = 1.0 / cur[mask] if power == 1 else 1.0 / (cur[mask] * cur[mask])
        a = acc[mask]
        t = a + term
        comp[mask] += np.where(np.abs(a) >= np.abs(term), (a - t) + term, (term - t) + a)
        acc[mask] = t
        cur[mask] += 1.0
    return acc + comp, cur


def _digamma_general(x: np.ndarray) -> np.ndarray:
    shifted_sum, cur = _compensated_reciprocal_shift(x, _DIGAMMA_SHIFT, power=1)
    z = cur - 1.0
    z2 = z * z
    tail = np.log(z) + 1.0 / (2.0 * z) - 1.0 / (12.0 * z2) + 1.0 / (120.0 * z2 * z2)
    return tail - shifted_sum


def _trigamma_general(x: np.ndarray) -> np.ndarray:
    shifted_sum, w = _compensated_reciprocal_shift(x, _TRIGAMMA_SHIFT, power=2)
    iw = 1.0 / w
    iw2 = iw * iw
    tail = iw + 0.5 * iw2 + iw * iw2 * (1.0 / 6.0 - iw2 * (1.0 / 30.0 - iw2 / 42.0))
    return tail + shifted_sum


def digamma(x):
    """Digamma ``psi(x)`` for ``x > 0``, elementwise on arrays.

    Arguments within 1e-9 of a positive integer use the exact closed form
    ``psi(k) = -gamma + H_{k-1}`` with a compensated harmonic table.  All
    other arguments are shifted upward by the recurrence ``psi(x) =
    psi(x+1) - 1/x`` and finished with a four-term asymptotic series;
    absolute error is below ~1e-12 for arguments of moderate size.

    Raises ``ValueError`` for arguments at or below zero (poles).
    """
    arr, scalar, shape = _as_positive_array(x, "x")
    out = np.empty_like(arr)
    nearest = np.rint(arr)
    is_int = (np.abs(arr - nearest) <= _INT_SNAP_TOL) & (nearest >= 1.0)
    if is_int.any():
        k = nearest[is_int].astype(np.int64)
        out[is_int] = _HARMONIC.take(k - 1) - EULER_GAMMA
    rest = ~is_int
    if rest.any():
        out[rest] = _digamma_general(arr[rest])
    return float(out[0]) if scalar else out.reshape(shape)


def trigamma(x):
    """Trigamma ``psi'(x)`` for ``x > 0``, elementwise on arrays.

    Integer arguments use ``psi'(k) = pi^2/6 - sum_{i<k} 1/i^2`` exactly;
    others use the recurrence ``psi'(x) = psi'(x+1) + 1/x^2`` up to ~33
    followed by an asymptotic series, accurate to well below 1e-12.
    """
    arr, scalar, shape = _as_positive_array(x, "x")
    out = np.empty_like(arr)
    nearest = np.rint(arr)
    is_int = (np.abs(arr - nearest) <= _INT_SNAP_TOL) & (nearest >= 1.0)
    if is_int.any():
        k = nearest[is_int].astype(np.int64)
        out[is_int] = _PI2_OVER_6 - _INV_SQUARES.take(k - 1)
    rest = ~is_int
    if rest.any():
        out[rest] = _trigamma_general(arr[rest])
    return float(out[0]) if scalar else out.reshape(shape)


def digamma_asymptotic(z):
    """Three-term large-argument approximation to ``psi(z + 1)``.

    Returns ``log z + 1/(2z) - 1/(12 z^2)``; the error is O(z^-4), so this
    is adequate on its own only for ``z >= 6`` or so.  It is the documented
    non-integer fallback inside :func:`digamma`, which first shifts small
    arguments upward and adds one further correction term.
    """
    arr, scalar, shape = _as_positive_array(z, "z")
    z2 = arr * arr
    out = np.log(arr) + 1.0 / (2.0 * arr) - 1.0 / (12.0 * z2)
    return float(out[0]) if scalar else out.reshape(shape)


@dataclass(frozen=True)
class EntropyKernel:
    """The posterior weight ``total = n + s`` parameterizing ``h``."""

    total: float

    def __post_init__(self):
        total = float(self.total)
        if not (np.isfinite(total) and total > 0):
            raise ValueError("total must be a positive finite real")
        object.__setattr__(self, "total", total)


def _as_unit_interval(u, name: str = "u"):
    arr = np.asarray(u, dtype=float)
    scalar = arr.ndim == 0
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    if np.any(arr < -1e-12) or np.any(arr > 1.0 + 1e-12):
        raise ValueError(f"{name} must lie in [0, 1]")
    clipped = np.clip(np.atleast_1d(np.array(arr, dtype=float)), 0.0, 1.0)
    return clipped, scalar, arr.shape


def h(u, kernel: EntropyKernel):
    """Expected-entropy summand ``h(u) = u * (psi(T+1) - psi(T*u + 1))``.

    ``T`` is ``kernel.total``.  ``h(0) = h(1) = 0`` exactly, and for
    integral ``T`` and ``T*u`` the value equals the rational
    ``u * sum_{k=T*u+1}^{T} 1/k`` (see :func:`h_fraction`).  Elementwise on
    arrays of any shape.
    """
    arr, scalar, shape = _as_unit_interval(u)
    total = kernel.total
    base = digamma(total + 1.0)
    out = arr * (base - digamma(total * arr + 1.0))
    return float(out[0]) if scalar else out.reshape(shape)


def h_prime(u, kernel: EntropyKernel):
    """Derivative of the entropy summand.

    ``h'(u) = psi(T+1) - psi(T*u+1) - T*u * psi'(T*u+1)``; monotonically
    decreasing on [0, 1] (``h`` is strictly concave).
    """
    arr, scalar, shape = _as_unit_interval(u)
    total = kernel.total
    x = total * arr + 1.0
    out = digamma(total + 1.0) - digamma(x) - total * arr * trigamma(x)
    return float(out[0]) if scalar else out.reshape(shape)


def harmonic_fraction(k: int) -> Fraction:
    """Exact harmonic number ``H_k = sum_{i=1}^{k} 1/i``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return sum((Fraction(1, i) for i in range(1, k + 1)), Fraction(0))


def h_fraction(numer: int, total: int) -> Fraction:
    """Exact rational ``h(numer/total)`` for integer arguments.

    Equals ``(numer/total) * sum_{k=numer+1}^{total} 1/k``.  Intended for
    golden values at desk scale; cost grows with ``total``.
    """
    if total < 1:
        raise ValueError("total must be a positive integer")
    if not 0 <= numer <= total:
        raise ValueError("numer must lie in [0, total]")
    tail = sum((Fraction(1, k) for k in range(numer + 1, total + 1)), Fraction(0))
    return Fraction(numer, total) * tail


def _gauss_density(t: float) -> float:
    return math.exp(-t * t)


def _adaptive_simpson(f, a, b, tol, fa, fm, fb, whole, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    return _adaptive_simpson(f, a, m, tol / 2.0, fa, flm, fm, left, depth - 1) + _adaptive_simpson(
        f, m, b, tol / 2.0, fm, frm, fb, right, depth - 1
    )


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-11) -> float:
    """Adaptive Simpson quadrature of ``f`` on ``[a, b]``."""
    if b < a:
        raise ValueError("integration bounds out of order")
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _adaptive_simpson(f, a, b, tol, fa, fm, fb, whole, depth=48)


def erf_by_quadrature(y: float) -> float:
    """Error function via adaptive Simpson integration of exp(-t^2).

    Deliberately self-contained (no special-function library); adequate to
    ~1e-12, which is all the bisection in :func:`kappa_from_alpha` needs.
    """
    if y == 0.0:
        return 0.0
    if y < 0.0:
        return -erf_by_quadrature(-y)
    if y >= 6.0:
        return 1.0
    return 2.0 / math.sqrt(math.pi) * adaptive_simpson(_gauss_density, 0.0, y, 1e-13)


def kappa_from_alpha(alpha: float) -> float:
    """Gaussian credible multiplier: the ``kappa`` with erf(kappa/sqrt 2) = alpha.

    Solved by bisection on [0, 40] to 1e-10.  Monotone in ``alpha``;
    ``alpha`` near 0.9545 gives ``kappa`` near 2.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly between 0 and 1")
    sqrt2 = math.sqrt(2.0)
    lo, hi = 0.0, 40.0
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if erf_by_quadrature(mid / sqrt2) < alpha:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
