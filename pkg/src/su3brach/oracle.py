"""Reference integrator for ``i dU/dt = H(t) U``.

Exponential midpoint rule: each step multiplies by ``exp(-i h H(t_mid))``.
Every step factor is exactly unitary, so no drift accumulates over long
horizons; the global error is O(h^2).  Nothing here knows about the
closed-form propagators it is used to check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .linalg import ComplexMatrix, UnitaryMatrix, expm_hermitian

DEFAULT_STEPS = 2**16


@dataclass(frozen=True)
class SampledGenerator:
    """A time-dependent Hamiltonian on ``[t0, t1]``.

    ``fn`` must accept a 1-D array of times and return a stack of
    Hermitian matrices; set ``vectorized=False`` for a scalar-only callable.
    """

    fn: Callable
    t0: float
    t1: float
    vectorized: bool = True

    def sample(self, times: np.ndarray) -> np.ndarray:
        times = np.asarray(times, dtype=float)
        if self.vectorized:
            return np.asarray(self.fn(times), dtype=np.complex128)
        return np.stack([np.asarray(self.fn(float(t)), dtype=np.complex128) for t in times])


def _ordered_product(factors: np.ndarray) -> np.ndarray:
    """``F[n-1] @ ... @ F[0]`` along axis -3 by pairwise reduction."""
    while factors.shape[-3] > 1:
        n = factors.shape[-3]
        if n % 2:
            tail = factors[..., -1:, :, :]
            factors = factors[..., :-1, :, :]
        else:
            tail = None
        factors = factors[..., 1::2, :, :] @ factors[..., 0::2, :, :]
        if tail is not None:
            # the unpaired factor is the latest one, so it goes last
            factors = np.concatenate([factors, tail], axis=-3)
    return factors[..., 0, :, :]


def _step_factors(g: SampledGenerator, t0: float, h: float, steps: int) -> np.ndarray:
    mids = t0 + (np.arange(steps) + 0.5) * h
    return expm_hermitian(g.sample(mids), h)


def numeric_propagator(
    g: SampledGenerator, t0: float | None = None, t1: float | None = None, steps: int = DEFAULT_STEPS
) -> UnitaryMatrix:
    """Midpoint-exponential approximation of ``U(t1, t0)``."""
    t0 = g.t0 if t0 is None else t0
    t1 = g.t1 if t1 is None else t1
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if not t1 > t0:
        raise ValueError("t1 must exceed t0")
    h = (t1 - t0) / steps
    return _ordered_product(_step_factors(g, t0, h, steps))


def numeric_trajectory(
    g: SampledGenerator, times, steps: int = DEFAULT_STEPS
) -> np.ndarray:
    """``U(t, times[0])`` at every entry of an increasing, uniform ``times``.

    ``steps`` is the total over the whole span; it is rounded up so every
    sampling interval gets the same whole number of midpoint steps.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 2:
        raise ValueError("need at least two sample times")
    intervals = times.size - 1
    per = max(1, math.ceil(steps / intervals))
    h = (times[-1] - times[0]) / (intervals * per)
    factors = _step_factors(g, times[0], h, intervals * per)
    segments = _ordered_product(factors.reshape((intervals, per) + factors.shape[-2:]))
    dim = segments.shape[-1]
    out = np.empty((times.size, dim, dim), dtype=np.complex128)
    out[0] = np.eye(dim)
    for j in range(intervals):
        out[j + 1] = segments[j] @ out[j]
    return out


def convergence_order(
    g: SampledGenerator, t0: float | None = None, t1: float | None = None, base_steps: int = 64
) -> float:
    """Observed order from three resolutions (n, 2n, 4n).

    Returns ``nan`` when the successive differences sit at round-off
    level, so no order can be read off (e.g. a constant generator).
    """
    if base_steps < 64:
        raise ValueError("base_steps must be >= 64")
    u = [numeric_propagator(g, t0, t1, base_steps * 2**j) for j in range(3)]
    d1 = np.linalg.norm(u[0] - u[1])
    d2 = np.linalg.norm(u[1] - u[2])
    if d1 < 1e-13 or d2 < 1e-13:
        return float("nan")
    return float(math.log2(d1 / d2))


def central_difference(m: Callable[[float], ComplexMatrix], t: float, h: float) -> ComplexMatrix:
    """``(m(t + h) - m(t - h)) / (2h)``."""
    if not h > 0:
        raise ValueError("h must be positive")
    return (np.asarray(m(t + h)) - np.asarray(m(t - h))) / (2.0 * h)
