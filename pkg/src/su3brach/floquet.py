"""Floquet-frame factorisation of the propagator over one period.

The closed matrices here (``u1f_closed``, ``u2f_closed``, ``s_integral``)
follow the displayed formulas literally.  Several of them are not exactly
what a direct computation produces, so :func:`floquet_claims` measures
them rather than trusting them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .claims import ClaimResult, judge
from .linalg import HermitianMatrix, UnitaryMatrix, dagger, expm_hermitian
from .problem import BrachistochroneProblem, constraint
from .propagators import (
    DEFAULT_PANELS,
    NotResonant,
    fundamental_period,
    initial_generator,
    integrated_hamiltonian,
    schrodinger_propagator,
)

SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class FloquetDecomposition:
    y: UnitaryMatrix
    u_f: UnitaryMatrix
    delta: float
    period: float


def y_isometry(theta: float) -> UnitaryMatrix:
    e = np.exp(-1j * theta) * SQRT_HALF
    return np.array(
        [[e, -e, 0], [0, 0, 1], [SQRT_HALF, SQRT_HALF, 0]], dtype=np.complex128
    )


def floquet_diagonal(p: BrachistochroneProblem, T: float) -> UnitaryMatrix:
    x = T * p.delta
    return np.diag([np.exp(-1j * x), np.exp(1j * x), 1.0 + 0j])


def decomposition(p: BrachistochroneProblem, T: float | None = None) -> FloquetDecomposition:
    period = fundamental_period(p) if T is None else T
    return FloquetDecomposition(y_isometry(p.theta), floquet_diagonal(p, period), p.delta, period)


def averaged_generator(
    p: BrachistochroneProblem, T: float, quadrature_steps: int = DEFAULT_PANELS
) -> HermitianMatrix:
    """``(1/T) int_0^T (H(s) + F) ds``."""
    if not T > 0:
        raise ValueError("T must be positive")
    b = integrated_hamiltonian(p, T, quadrature_steps) / T + constraint(p)
    return 0.5 * (b + dagger(b))


def _s_of_t(p: BrachistochroneProblem, t: float) -> np.ndarray:
    d, th = p.delta, p.theta
    m = np.zeros((3, 3), dtype=np.complex128)
    m[0, 2] = np.exp(1j * (t * d + th))
    m[1, 2] = -np.exp(-1j * (t * d - th))
    m[2, 0] = np.exp(-1j * (t * d + th))
    m[2, 1] = -np.exp(1j * (t * d - th))
    return m * (p.R / (2.0 * d))


def s_integral(p: BrachistochroneProblem, T: float) -> np.ndarray:
    """``S(T) - S(0)`` from the closed antiderivative."""
    return _s_of_t(p, T) - _s_of_t(p, 0.0)


def u1f_closed(p: BrachistochroneProblem, T: float) -> np.ndarray:
    """The displayed ``U_1F`` with ``u = cos(T Delta)``, ``v = sin(T Delta)``.

    Not exactly unitary at generic T; see :func:`floquet_claims`.
    """
    k, r, d, th = p.k, p.R, p.delta, p.theta
    u, v = math.cos(T * d), math.sin(T * d)
    ep, em = np.exp(1j * th), np.exp(-1j * th)
    return np.array(
        [
            [u, r * k * (u - 1) * ep / d**2, -1j * k * ep * v / d],
            [r * k * (u - 1) * em / d**2, 1, -1j * r * v / d],
            [-1j * k * em * v / d, -1j * r * v / d, u],
        ],
        dtype=np.complex128,
    )


def u2f_closed(p: BrachistochroneProblem, T: float) -> UnitaryMatrix:
    c, s = math.cos(p.k * T), math.sin(p.k * T)
    ep = np.exp(1j * p.theta)
    return np.array(
        [[c, 0, 1j * ep * s], [0, 1, 0], [1j * np.conj(ep) * s, 0, c]],
        dtype=np.complex128,
    )


def _forced(p: BrachistochroneProblem, T: float) -> bool:
    """True when T is a whole number of fundamental periods (0 included)."""
    try:
        t0 = fundamental_period(p)
    except NotResonant:
        return T == 0
    n = round(T / t0)
    return abs(T - n * t0) <= 1e-12 * max(1.0, abs(T))


def y_offdiagonal_norm(p: BrachistochroneProblem) -> float:
    """Off-diagonal Frobenius norm of ``Y (H(0) + F) Y^dagger``."""
    y = y_isometry(p.theta)
    m = y @ initial_generator(p) @ dagger(y)
    return float(np.linalg.norm(m - np.diag(np.diag(m))))


def floquet_claims(p: BrachistochroneProblem, T: float, tol: float = 1e-8) -> list[ClaimResult]:
    anchor = "Floquet Representation: U(T,0) = U1 U2 = Y^dag U1F U2F Y"
    forced = _forced(p, T)
    y = y_isometry(p.theta)
    yd = dagger(y)

    lhs = yd @ u1f_closed(p, T) @ u2f_closed(p, T) @ y
    res_a = np.linalg.norm(lhs - schrodinger_propagator(p, T))

    if T > 0:
        b = averaged_generator(p, T)
        res_b = np.linalg.norm(yd @ floquet_diagonal(p, T) @ y - expm_hermitian(b, T))
    else:
        res_b = np.linalg.norm(yd @ floquet_diagonal(p, T) @ y - np.eye(3))

    return [
        judge("F-a", "Y^dag U1F U2F Y equals the Schrodinger propagator", anchor,
              res_a, tol, required=forced),
        judge("F-b", "Y^dag U_F Y equals exp(-i B T)", anchor,
              res_b, tol, required=forced),
        judge("F-c", "Y diagonalises H(0) + F (off-diagonal norm)",
              "Floquet Representation: isometry Y",
              y_offdiagonal_norm(p), tol, required=False),
        judge("F-d", "U1F as printed is unitary",
              "Floquet Representation: U1F with u = cos(T Delta), v = sin(T Delta)",
              np.linalg.norm(dagger(u1f_closed(p, T)) @ u1f_closed(p, T) - np.eye(3)),
              tol, required=False),
    ]
