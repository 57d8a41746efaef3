"""Shared numeric substrate: bracketed root finding, sign-change scanning,
and small dense complex determinants.

Everything here is pure and reentrant; no shared mutable state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "NumericError",
    "ToleranceConfig",
    "Bracket",
    "DEFAULT_TOL",
    "find_root",
    "scan_sign_changes",
    "det_complex",
]

_MAX_ITERATIONS = 200


class NumericError(RuntimeError):
    """An iterative routine exhausted its iteration budget."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Numeric tolerances shared across the library.

    root_abs: absolute accuracy of refined roots, in the scan variable.
    residual_zero: threshold below which a function value counts as zero.
    degenerate_width: energy width below which a band counts as a point.
    scan_density: grid points per oscillation of the fastest cosine.
    """

    root_abs: float = 1e-12
    residual_zero: float = 1e-9
    degenerate_width: float = 1e-8
    scan_density: int = 16

    def __post_init__(self) -> None:
        if self.root_abs <= 0.0 or self.residual_zero <= 0.0 or self.degenerate_width <= 0.0:
            raise ValueError("tolerances must be strictly positive")
        if self.scan_density < 4:
            raise ValueError("scan_density must be at least 4")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class Bracket:
    """A sign-change interval: f(lo) and f(hi) have opposite (or zero) sign."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"bracket requires lo < hi, got [{self.lo}, {self.hi}]")
        if self.f_lo * self.f_hi > 0.0:
            raise ValueError("bracket endpoints must not have the same sign")


def find_root(f: Callable[[float], float], bracket: Bracket, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Locate a sign change of ``f`` inside ``bracket`` to ``tol.root_abs``.

    Secant steps accelerate convergence, but every other iteration bisects,
    so convergence is guaranteed for any continuous sign-changing function.
    """
    lo, hi = bracket.lo, bracket.hi
    f_lo, f_hi = bracket.f_lo, bracket.f_hi
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    use_secant = True
    for _ in range(_MAX_ITERATIONS):
        width = hi - lo
        if width <= 2.0 * tol.root_abs:
            return 0.5 * (lo + hi)
        x = 0.5 * (lo + hi)
        if use_secant and f_hi != f_lo and math.isfinite(f_lo) and math.isfinite(f_hi):
            xs = hi - f_hi * width / (f_hi - f_lo)
            # keep the step strictly interior so the interval always shrinks
            guard = 0.01 * width
            if lo + guard < xs < hi - guard:
                x = float(xs)
        fx = float(f(x))
        if fx == 0.0:
            return x
        if (fx > 0.0) == (f_lo > 0.0):
            lo, f_lo = x, fx
        else:
            hi, f_hi = x, fx
        use_secant = not use_secant
    raise NumericError(f"root refinement did not converge on [{bracket.lo}, {bracket.hi}]")


def scan_sign_changes(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    n: int,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> list[Bracket]:
    """Brackets between consecutive points of an ``n``-point grid on [lo, hi].

    A grid cell qualifies when f changes sign across it or touches zero
    (|f| <= residual_zero) at either end; touched values are clamped to 0
    so tangential zeros (no sign change) are still reported.
    """
    if not lo < hi:
        raise ValueError("scan requires lo < hi")
    if n < 2:
        raise ValueError("scan requires at least 2 grid points")
    xs = np.linspace(lo, hi, n)
    fs = np.array([f(float(x)) for x in xs], dtype=float)
    fs[np.abs(fs) <= tol.residual_zero] = 0.0
    out: list[Bracket] = []
    for i in range(n - 1):
        if fs[i] * fs[i + 1] <= 0.0:
            out.append(Bracket(float(xs[i]), float(xs[i + 1]), float(fs[i]), float(fs[i + 1])))
    return out


def det_complex(m: np.ndarray) -> complex:
    """Determinant of a small dense complex matrix via pivoted elimination.

    Dimensions 1 and 2 are evaluated directly (exactly); larger matrices,
    up to 8x8, use Gaussian elimination with partial pivoting.  A singular
    matrix yields a value on the order of rounding error.
    """
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    dim = a.shape[0]
    if dim > 8:
        raise ValueError("matrices beyond dimension 8 are not supported")
    if dim == 1:
        return complex(a[0, 0])
    if dim == 2:
        return complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    det = 1.0 + 0.0j
    for col in range(dim):
        pivot = col + int(np.argmax(np.abs(a[col:, col])))
        if a[pivot, col] == 0.0:
            return 0.0 + 0.0j
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            det = -det
        det *= a[col, col]
        factors = a[col + 1 :, col] / a[col, col]
        a[col + 1 :, col:] -= np.outer(factors, a[col, col:])
    return complex(det)
