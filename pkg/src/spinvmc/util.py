"""Small numeric helpers shared across modules."""

from __future__ import annotations

import numpy as np

__all__ = ["log2cosh", "principal_branch", "blocking_analysis"]


def log2cosh(theta):
    """log(2*cosh(theta)) for complex theta, stable for large |Re theta|.

    Returns -inf real part where cosh vanishes exactly; callers treat that as
    a zero amplitude rather than doing arithmetic with it.
    """
    theta = np.asarray(theta, dtype=complex)
    t = np.where(theta.real < 0, -theta, theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = t + np.log(1.0 + np.exp(-2.0 * t))
    return out


def principal_branch(logvalue: complex) -> complex:
    """Reduce the imaginary part of a log to (-pi, pi]."""
    im = np.angle(np.exp(1j * logvalue.imag))
    return complex(logvalue.real, im)


def blocking_analysis(series: np.ndarray) -> tuple[float, float, float]:
    """Mean, blocking error estimate and effective sample size of a 1D series.

    Successively pairs samples (block sizes 2^k) and takes the largest
    naive error over block sizes that still carry at least 16 blocks,
    which sits on or above the plateau for desk-scale runs.
    """
    x = np.asarray(series, dtype=float)
    n = len(x)
    if n == 0:
        raise ValueError("empty series")
    mean = float(x.mean())
    if n == 1:
        return mean, float("inf"), 1.0
    best = x.std(ddof=1) / np.sqrt(n)
    work = x.copy()
    while len(work) // 2 >= 16:
        half = len(work) // 2
        work = 0.5 * (work[: 2 * half : 2] + work[1 : 2 * half : 2])
        err = work.std(ddof=1) / np.sqrt(len(work))
        best = max(best, err)
    naive_var = x.var(ddof=1) / n
    ess = n * naive_var / best**2 if best > 0 else float(n)
    return mean, float(best), float(min(ess, n))
