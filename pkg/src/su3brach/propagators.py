"""Closed-form propagators for the solved SU(3) problem.

Two different unitaries appear:

* the Schrodinger propagator ``U(t) = exp(iFt) exp(-i(H0 + F)t)``, which
  solves ``i dU/dt = H(t) U``;
* the frame transport ``Q(t) Q(s)^dagger``, which carries ``H(s)`` to
  ``H(t)`` by conjugation but does *not* solve the Schrodinger equation.

They are kept apart on purpose.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .linalg import ComplexMatrix, UnitaryMatrix, dagger, expm_hermitian
from .problem import (
    BrachistochroneProblem,
    constraint,
    control_fields,
    hamiltonian_at,
)

TWO_PI = 2.0 * math.pi
DEFAULT_PANELS = 256


class NotResonant(ValueError):
    """Delta/k is not a (small-denominator) rational: the motion is aperiodic."""


@dataclass(frozen=True)
class ResonanceRatio:
    m: int
    n: int

    def __post_init__(self):
        if self.m <= 0 or self.n <= 0 or math.gcd(self.m, self.n) != 1 or self.m <= self.n:
            raise ValueError(f"invalid resonance ratio {self.m}/{self.n}")


@dataclass(frozen=True)
class DiagonalFactorization:
    q: ComplexMatrix
    l: np.ndarray

    def reconstruct(self) -> ComplexMatrix:
        return self.q @ np.diag(self.l) @ dagger(self.q)


@dataclass(frozen=True)
class PropagatorBundle:
    t: float
    u_schrodinger: UnitaryMatrix
    u_plus: UnitaryMatrix
    u_minus: UnitaryMatrix
    u_frame: UnitaryMatrix
    u1: UnitaryMatrix
    u2: UnitaryMatrix


def initial_generator(p: BrachistochroneProblem) -> ComplexMatrix:
    """``H(0) + F``, the constant generator of the backward factor."""
    return hamiltonian_at(p, 0.0) + constraint(p)


def u_plus(p: BrachistochroneProblem, t: float) -> UnitaryMatrix:
    """``exp(iFt)``: a rotation of the (1,3) plane by ``kt``."""
    c, s = math.cos(p.k * t), math.sin(p.k * t)
    phase = p.kappa / p.k
    return np.array(
        [[c, 0, 1j * phase * s], [0, 1, 0], [1j * phase.conjugate() * s, 0, c]],
        dtype=np.complex128,
    )


def u_minus(p: BrachistochroneProblem, t: float) -> UnitaryMatrix:
    """``exp(-i(H0 + F)t)`` written out entrywise, with ``Phi = t Delta``."""
    k, r, d = p.k, p.R, p.delta
    kap = p.kappa
    kb = kap.conjugate()
    phi = t * d
    c, s = math.cos(phi), math.sin(phi)
    d2 = d * d
    return np.array(
        [
            [c, -1j * r * s / d, -1j * kap * s / d],
            [-1j * r * s / d, (k * k + r * r * c) / d2, r * kap * (c - 1) / d2],
            [-1j * kb * s / d, r * kb * (c - 1) / d2, (r * r + k * k * c) / d2],
        ],
        dtype=np.complex128,
    )


def schrodinger_propagator(p: BrachistochroneProblem, t: float) -> UnitaryMatrix:
    return u_plus(p, t) @ u_minus(p, t)


def _q_matrix(eps1: complex, eps2: complex, r: float) -> ComplexMatrix:
    if r <= 0:
        raise ValueError("R must be positive to normalise Q")
    e1, e2 = complex(eps1), complex(eps2)
    a = 1.0 / (math.sqrt(2.0) * r)
    return np.array(
        [
            [e1 * a, -e1 * a, -e2 / r],
            [1 / math.sqrt(2.0), 1 / math.sqrt(2.0), 0],
            [e2.conjugate() * a, -e2.conjugate() * a, e1.conjugate() / r],
        ],
        dtype=np.complex128,
    )


def printed_q_matrix(eps1: complex, eps2: complex, r: float) -> ComplexMatrix:
    """Q as displayed, with ``conj(eps2)/R`` in the (3,3) slot.

    That column is not orthogonal to the others and vanishes at t=0;
    kept only so the defect can be measured.
    """
    q = _q_matrix(eps1, eps2, r)
    q[2, 2] = complex(eps2).conjugate() / r
    return q


def diagonal_factorization(p: BrachistochroneProblem, t: float) -> DiagonalFactorization:
    """``H(t) = Q L Q^dagger`` with ``L = diag(R, -R, 0)``.

    The null column is ``(-eps2, 0, conj eps1)/R``, the zero-eigenvector
    of the tridiagonal Hamiltonian.
    """
    f = control_fields(p, t)
    return DiagonalFactorization(_q_matrix(f.eps1, f.eps2, p.R), np.array([p.R, -p.R, 0.0]))


def frame_transport(p: BrachistochroneProblem, t: float, s: float) -> UnitaryMatrix:
    """``Q(t) Q(s)^dagger``."""
    return diagonal_factorization(p, t).q @ dagger(diagonal_factorization(p, s).q)


def frame_transport_closed(p: BrachistochroneProblem, t: float, s: float) -> UnitaryMatrix:
    """The displayed closed form of the frame transport (depends on t - s only)."""
    c, sn = math.cos(p.k * (t - s)), math.sin(p.k * (t - s))
    em = np.exp(-1j * p.theta)
    return np.array(
        [[c, 0, 1j * em * sn], [0, 1, 0], [1j * em.conjugate() * sn, 0, c]],
        dtype=np.complex128,
    )


def simpson(f, a: float, b: float, panels: int) -> np.ndarray:
    """Composite Simpson rule for a vectorised (array-valued) integrand."""
    if panels < 2 or panels % 2:
        raise ValueError("Simpson's rule needs an even number of panels >= 2")
    x = np.linspace(a, b, panels + 1)
    w = np.ones(panels + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    y = np.asarray(f(x))
    return np.tensordot(w, y, axes=(0, 0)) * ((b - a) / (3.0 * panels))


def integrated_hamiltonian(p: BrachistochroneProblem, t: float, panels: int = DEFAULT_PANELS) -> ComplexMatrix:
    if t == 0:
        return np.zeros((3, 3), dtype=np.complex128)
    return simpson(lambda s: hamiltonian_at(p, s), 0.0, t, panels)


def conservation_split(
    p: BrachistochroneProblem, t: float, quadrature_steps: int = DEFAULT_PANELS
) -> tuple[UnitaryMatrix, UnitaryMatrix]:
    """``U1 = exp(-i[F t + int_0^t H])`` and ``U2 = exp(iFt)``."""
    if quadrature_steps < 16:
        raise ValueError("quadrature_steps must be >= 16")
    f = constraint(p)
    u1 = expm_hermitian(f * t + integrated_hamiltonian(p, t, quadrature_steps), 1.0)
    u2 = expm_hermitian(f, -t)
    return u1, u2


def resonance(p: BrachistochroneProblem, max_denominator: int = 1000, tol: float = 1e-9) -> ResonanceRatio:
    """Reduced ``(m, n)`` with ``Delta/k = m/n``.

    Raises :class:`NotResonant` when no fraction with denominator up to
    ``max_denominator`` matches within ``tol``.
    """
    ratio = p.delta / p.k
    frac = Fraction(ratio).limit_denominator(max_denominator)
    if abs(ratio - frac.numerator / frac.denominator) > tol:
        raise NotResonant(f"Delta/k = {ratio!r} is not rational within {tol:g}")
    return ResonanceRatio(frac.numerator, frac.denominator)


def fundamental_period(p: BrachistochroneProblem) -> float:
    """Smallest T > 0 with both kT and Delta T multiples of 2 pi."""
    return TWO_PI * resonance(p).n / p.k


def horizon(p: BrachistochroneProblem) -> float:
    """The fundamental period if resonant, else the Hamiltonian's period."""
    try:
        return fundamental_period(p)
    except NotResonant:
        return TWO_PI / p.k


def evolve_state(p: BrachistochroneProblem, psi0, t: float, method: str = "schrodinger") -> np.ndarray:
    psi0 = np.asarray(psi0, dtype=np.complex128)
    if psi0.shape != (3,):
        raise ValueError("state must be a 3-vector")
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-12:
        raise ValueError("state must be normalised")
    if method == "schrodinger":
        u = schrodinger_propagator(p, t)
    elif method == "frame":
        u = frame_transport(p, t, 0.0)
    else:
        raise ValueError(f"unknown method {method!r}")
    return u @ psi0


def bundle(p: BrachistochroneProblem, t: float, quadrature_steps: int = DEFAULT_PANELS) -> PropagatorBundle:
    up, um = u_plus(p, t), u_minus(p, t)
    u1, u2 = conservation_split(p, t, quadrature_steps)
    return PropagatorBundle(
        t=t,
        u_schrodinger=up @ um,
        u_plus=up,
        u_minus=um,
        u_frame=frame_transport(p, t, 0.0),
        u1=u1,
        u2=u2,
    )


def q_time_derivative(p: BrachistochroneProblem, t: float, h: float = 1e-5) -> ComplexMatrix:
    f = lambda s: diagonal_factorization(p, s).q  # noqa: E731
    return (f(t + h) - f(t - h)) / (2 * h)

