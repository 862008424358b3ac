"""The SU(3) time-optimal control problem and its closed-form solution.

The Hamiltonian couples levels 1-2 and 2-3 with fields

    eps1(t) = R cos(kt),   eps2(t) = -i R exp(-i theta) sin(kt)

and the constraint couples levels 1-3 with strength k.  Together they
satisfy ``i d/dt (H + F) = [H, F]`` with ``F`` constant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .linalg import ComplexMatrix, HermitianMatrix, as_scalar, commutator
from .oracle import central_difference

Convention = Literal["self-consistent", "plus-theta"]
CONVENTIONS = ("self-consistent", "plus-theta")

TWO_PI = 2.0 * math.pi
P_GROUND = np.diag([1.0, 0.0, 0.0]).astype(np.complex128)


@dataclass(frozen=True)
class BrachistochroneProblem:
    """Parameter record for the SU(3) brachistochrone.

    ``R=None`` selects the resonant amplitude ``sqrt(3) k``.  ``theta`` is
    reduced into ``[0, 2 pi)``.  ``convention`` picks the phase of the
    constraint's (1,3) entry: ``k e^{-i theta}`` for ``"self-consistent"``
    (the one for which the Hamiltonian orbit is generated by the
    constraint) and ``k e^{+i theta}`` for ``"plus-theta"``.
    """

    k: float
    theta: float = 0.0
    R: float | None = None
    convention: Convention = "self-consistent"

    def __post_init__(self):
        if not (math.isfinite(self.k) and self.k > 0):
            raise ValueError(f"k must be positive and finite, got {self.k!r}")
        if self.R is None:
            object.__setattr__(self, "R", math.sqrt(3.0) * self.k)
        if not (math.isfinite(self.R) and self.R > 0):
            raise ValueError(f"R must be positive and finite, got {self.R!r}")
        if not math.isfinite(self.theta):
            raise ValueError("theta must be finite")
        object.__setattr__(self, "theta", math.fmod(self.theta, TWO_PI) % TWO_PI)
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")

    @property
    def delta(self) -> float:
        """Rotation rate ``sqrt(R^2 + k^2)`` of the combined generator."""
        return math.hypot(self.R, self.k)

    @property
    def kappa(self) -> complex:
        """The constraint's (1,3) entry."""
        sign = -1.0 if self.convention == "self-consistent" else 1.0
        return self.k * complex(math.cos(self.theta), sign * math.sin(self.theta))

    def with_(self, **changes) -> "BrachistochroneProblem":
        fields = dict(k=self.k, theta=self.theta, R=self.R, convention=self.convention)
        fields.update(changes)
        return BrachistochroneProblem(**fields)

    def to_json(self) -> dict:
        return {"k": self.k, "theta": self.theta, "R": self.R, "convention": self.convention}

    @classmethod
    def from_json(cls, obj: dict) -> "BrachistochroneProblem":
        if not isinstance(obj, dict) or "k" not in obj:
            raise ValueError("problem JSON must be an object with at least 'k'")
        r = obj.get("R", "auto")
        return cls(
            k=float(obj["k"]),
            theta=float(obj.get("theta", 0.0)),
            R=None if r == "auto" or r is None else float(r),
            convention=obj.get("convention", "self-consistent"),
        )


@dataclass(frozen=True)
class ControlFields:
    eps1: complex
    eps2: complex

    def __post_init__(self):
        object.__setattr__(self, "eps1", as_scalar(self.eps1))
        object.__setattr__(self, "eps2", as_scalar(self.eps2))

    def as_vector(self) -> np.ndarray:
        """The 4-vector ``(eps1, conj eps1, eps2, conj eps2)``."""
        e1, e2 = self.eps1, self.eps2
        return np.array([e1, e1.conjugate(), e2, e2.conjugate()], dtype=np.complex128)

    @property
    def intensity(self) -> float:
        return abs(self.eps1) ** 2 + abs(self.eps2) ** 2


def control_fields(p: BrachistochroneProblem, t: float) -> ControlFields:
    kt = p.k * t
    return ControlFields(
        p.R * math.cos(kt),
        -1j * p.R * np.exp(-1j * p.theta) * math.sin(kt),
    )


def field_hamiltonian(eps1: complex, eps2: complex) -> HermitianMatrix:
    """The tridiagonal Hamiltonian with couplings ``eps1`` (1-2) and ``eps2`` (2-3)."""
    e1, e2 = complex(eps1), complex(eps2)
    return np.array(
        [[0, e1, 0], [e1.conjugate(), 0, e2], [0, e2.conjugate(), 0]],
        dtype=np.complex128,
    )


def hamiltonian_at(p: BrachistochroneProblem, t) -> HermitianMatrix:
    """H(t); ``t`` may be an array, giving shape ``t.shape + (3, 3)``."""
    t = np.asarray(t, dtype=float)
    c = p.R * np.cos(p.k * t)
    s = p.R * np.sin(p.k * t)
    phase = np.exp(-1j * p.theta)
    h = np.zeros(t.shape + (3, 3), dtype=np.complex128)
    h[..., 0, 1] = c
    h[..., 1, 0] = c
    h[..., 1, 2] = -1j * phase * s
    h[..., 2, 1] = 1j * np.conj(phase) * s
    return h


def constraint(p: BrachistochroneProblem) -> HermitianMatrix:
    kap = p.kappa
    return np.array(
        [[0, 0, kap], [0, 0, 0], [kap.conjugate(), 0, 0]], dtype=np.complex128
    )


def constraint_with_diagonals(
    p: BrachistochroneProblem, omega1: float, omega2: float
) -> HermitianMatrix:
    """Constraint with diagonal ``(w1, -(w1 + w2), w2)`` added."""
    return constraint(p) + np.diag([omega1, -(omega1 + omega2), omega2]).astype(np.complex128)


def upsilon(p: BrachistochroneProblem) -> ComplexMatrix:
    """Generator of the field equations ``i d(xi)/dt = Upsilon xi``."""
    kap = p.kappa
    kb = kap.conjugate()
    return np.array(
        [
            [0, 0, 0, -kap],
            [0, 0, kb, 0],
            [0, kap, 0, 0],
            [-kb, 0, 0, 0],
        ],
        dtype=np.complex128,
    )


def field_propagator(p: BrachistochroneProblem, t: float) -> ComplexMatrix:
    """``exp(-i t Upsilon) = cos(kt) 1 - i (Upsilon/k) sin(kt)``."""
    kt = p.k * t
    return math.cos(kt) * np.eye(4) - 1j * upsilon(p) * (math.sin(kt) / p.k)


def printed_field_propagator(p: BrachistochroneProblem, t: float) -> ComplexMatrix:
    """The field propagator as displayed in the source text (no ``-i`` factors)."""
    c, s = math.cos(p.k * t), math.sin(p.k * t)
    em, ep = np.exp(-1j * p.theta), np.exp(1j * p.theta)
    return np.array(
        [
            [c, 0, 0, -em * s],
            [0, c, ep * s, 0],
            [0, em * s, c, 0],
            [-ep * s, 0, 0, c],
        ],
        dtype=np.complex128,
    )


def propagate_fields(p: BrachistochroneProblem, eps0, t: float) -> ControlFields:
    """Evolve the initial fields with ``exp(-i t Upsilon)``.

    ``eps0`` is a :class:`ControlFields` or the 4-vector
    ``(eps1, conj eps1, eps2, conj eps2)``.
    """
    if isinstance(eps0, ControlFields):
        xi0 = eps0.as_vector()
    else:
        xi0 = np.asarray(eps0, dtype=np.complex128)
        if xi0.shape != (4,):
            raise ValueError("field vector must have 4 components")
        if not (
            np.isclose(xi0[1], np.conj(xi0[0]), rtol=0, atol=1e-12)
            and np.isclose(xi0[3], np.conj(xi0[2]), rtol=0, atol=1e-12)
        ):
            raise ValueError("field vector violates the conjugate-pair structure")
    xi = field_propagator(p, t) @ xi0
    return ControlFields(xi[0], xi[2])


def boundary_operator(
    p: BrachistochroneProblem, eps0: ControlFields, omega1: float, omega2: float
) -> HermitianMatrix:
    """``G = (H + F) - Tr(P (H + F)) P`` at t=0 for the state ``(1, 0, 0)``."""
    a = field_hamiltonian(eps0.eps1, eps0.eps2) + constraint_with_diagonals(p, omega1, omega2)
    return a - np.trace(P_GROUND @ a) * P_GROUND


def anticommutator_residual(g: ComplexMatrix, proj: ComplexMatrix = P_GROUND) -> float:
    """``|| G - {G, P} ||_F``; zero iff G is a fixed point of the boundary map."""
    return float(np.linalg.norm(g - (g @ proj + proj @ g)))


def ode_residual(hamiltonian, f: ComplexMatrix, t: float, h: float) -> float:
    """Residual of ``d/dt (H + F) = -i [H, F]`` for constant ``F``."""
    if not h > 0:
        raise ValueError("step h must be positive")
    lhs = central_difference(lambda s: hamiltonian(s) + f, t, h)
    return float(np.linalg.norm(lhs + 1j * commutator(hamiltonian(t), f)))


def brachistochrone_residual(p: BrachistochroneProblem, t: float, h: float) -> float:
    return ode_residual(lambda s: hamiltonian_at(p, s), constraint(p), t, h)


def back_action_residual(p: BrachistochroneProblem, s: float) -> float:
    """``|| [H(s), F] - i k H(s + pi/(2k)) ||_F``.

    The commutator with the constraint is the time derivative of H up to
    ``i``, and H'(s) is H advanced a quarter period, scaled by k.
    """
    lhs = commutator(hamiltonian_at(p, s), constraint(p))
    return float(np.linalg.norm(lhs - 1j * p.k * hamiltonian_at(p, s + math.pi / (2 * p.k))))

