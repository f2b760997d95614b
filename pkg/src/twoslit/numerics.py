"""Root finding for ``y + sin(y) = x`` and the clamped arcsine.

``f(y) = y + sin(y)`` is nondecreasing with ``f'(y) = 1 + cos(y)``, which
vanishes at odd multiples of pi. Plain Newton can stall there, so every
step is kept inside a shrinking bracket and falls back to bisection when
the Newton iterate leaves it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class SolverError(RuntimeError):
    """Raised when the bracketed iteration fails to converge."""


@dataclass(frozen=True)
class SolverSettings:
    abs_tolerance: float = 1e-12
    max_iterations: int = 200

    def __post_init__(self):
        if not self.abs_tolerance > 0:
            raise ValueError("abs_tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


DEFAULT_SETTINGS = SolverSettings()
_STEP_EPS = 4 * np.finfo(float).eps


def solve_displacement(x: float, settings: SolverSettings = DEFAULT_SETTINGS) -> float:
    """Return the unique ``y >= 0`` with ``y + sin(y) = x``.

    Parameters
    ----------
    x : float
        Nonnegative, finite right-hand side.
    settings : SolverSettings
        Residual tolerance and iteration cap.

    Returns
    -------
    float
        ``y`` with ``|y + sin(y) - x| <= settings.abs_tolerance`` and a
        Newton correction below a few ulps.
    """
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise ValueError(f"solve_displacement needs finite x >= 0, got {x}")
    tol = settings.abs_tolerance
    if x == 0.0:
        return 0.0
    # f(0) = 0 <= x and f(x) = x + sin(x) >= x for x in [0, pi]; beyond pi
    # f(x + 1) >= x, so [0, x + 1] always brackets the root.
    lo, hi = 0.0, x if x <= math.pi else x + 1.0
    y = 0.5 * x  # f(y) ~ 2y near 0
    for _ in range(settings.max_iterations):
        r = (y - x) + math.sin(y)
        if r == 0.0:
            return y
        if r > 0:
            hi = y
        else:
            lo = y
        d = 1.0 + math.cos(y)
        step = y - r / d if d > 0 else math.nan
        if not (lo < step < hi):
            step = 0.5 * (lo + hi)
        # near odd multiples of pi a tiny residual still leaves y far off,
        # so also wait for the iterate to stop moving
        if abs(r) <= tol and abs(step - y) <= _STEP_EPS * max(1.0, y):
            return y
        if step == y:
            break
        y = step
    r = (y - x) + math.sin(y)
    if abs(r) <= tol:
        return y
    raise SolverError(f"no convergence for x={x!r}: y={y!r}, residual={r!r}")


def solve_displacement_array(x, settings: SolverSettings = DEFAULT_SETTINGS) -> np.ndarray:
    """Elementwise :func:`solve_displacement` for an array of ``x``."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(x < 0):
        raise ValueError("solve_displacement_array needs finite x >= 0")
    tol = settings.abs_tolerance
    lo = np.zeros_like(x)
    hi = np.where(x <= np.pi, x, x + 1.0)
    y = 0.5 * x
    active = np.ones(x.shape, dtype=bool)
    for _ in range(settings.max_iterations):
        r = (y - x) + np.sin(y)
        active &= r != 0.0
        hi = np.where(active & (r > 0), y, hi)
        lo = np.where(active & (r < 0), y, lo)
        d = 1.0 + np.cos(y)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = y - r / d
        bad = ~((lo < step) & (step < hi))
        step = np.where(bad, 0.5 * (lo + hi), step)
        settled = (np.abs(r) <= tol) & (np.abs(step - y) <= _STEP_EPS * np.maximum(1.0, y))
        active &= ~settled & (step != y)
        if not active.any():
            break
        y = np.where(active, step, y)
    r = (y - x) + np.sin(y)
    if np.any(np.abs(r) > tol):
        worst = int(np.argmax(np.abs(r)))
        raise SolverError(f"no convergence for x={x.flat[worst]!r}, residual={r.flat[worst]!r}")
    return y


def bisect_displacement(x: float, steps: int = 200) -> float:
    """Plain interval halving on ``[0, x + 1]``; the slow reference solver."""
    lo, hi = 0.0, x + 1.0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if mid + math.sin(mid) < x:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def arcsin_clamped(p: float) -> float:
    p = float(p)
    if not math.isfinite(p):
        raise ValueError(f"arcsin_clamped needs a finite argument, got {p}")
    return math.asin(min(1.0, max(-1.0, p)))
