"""Catalog of the degenerate-eigenspace matrices.

Angular-momentum matrices, the three solution-matrix families X_Q, X_J,
X_D with their column-shift rotations, the qutrit DFT and its swap gate,
the evolved constraint and the swapped (Hamiltonian <-> constraint)
problem.  Matrices are reproduced as printed, including the ones that
turn out not to be unitary; callers measure, they do not assume.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .claims import ClaimResult, judge
from .linalg import (
    HermitianMatrix,
    UnitaryMatrix,
    as_scalar,
    dagger,
    expm_rank_reduced,
)
from .problem import BrachistochroneProblem, constraint_with_diagonals
from .propagators import u_plus

SQRT_HALF = 1.0 / math.sqrt(2.0)
L_DIAG = np.diag([1.0, -1.0, 0.0]).astype(np.complex128)


class SolutionMatrixKind(enum.Enum):
    Q = "Q"
    J = "J"
    D = "D"


# (kind, index) -> the printed matrix it equals
_ALIASES = {
    (SolutionMatrixKind.D, 2): (SolutionMatrixKind.D, 1),
    (SolutionMatrixKind.D, 3): (SolutionMatrixKind.D, 1),
    (SolutionMatrixKind.J, 3): (SolutionMatrixKind.J, 2),
}


@dataclass(frozen=True)
class RotationFamily:
    kind: SolutionMatrixKind
    index: int

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", SolutionMatrixKind(self.kind))
        if self.index not in (1, 2, 3):
            raise ValueError("rotation index must be 1, 2 or 3")

    def canonical(self) -> "RotationFamily":
        kind, index = _ALIASES.get((self.kind, self.index), (self.kind, self.index))
        return RotationFamily(kind, index)

    def __str__(self) -> str:
        return f"R_{self.kind.value.lower()}{self.index}"


def angular_momentum() -> tuple[HermitianMatrix, HermitianMatrix, HermitianMatrix]:
    """The three spin-1 matrices as printed (no 1/sqrt(2) normalisation)."""
    lx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.complex128)
    ly = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=np.complex128)
    lz = np.diag([1.0, 0.0, -1.0]).astype(np.complex128)
    return lx, ly, lz


def l_squared() -> HermitianMatrix:
    return sum(m @ m for m in angular_momentum())


PRINTED_L_SQUARED = 3.0 * np.diag([1.0, 0.0, 1.0]).astype(np.complex128)


def l_squared_integer() -> np.ndarray:
    """``sum L_i^2`` in integer arithmetic; every square is real here."""
    lx_re = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    ly_im = np.array([[0, -1, 0], [1, 0, -1], [0, 1, 0]])
    lz_re = np.diag([1, 0, -1])
    # (i A)^2 = -A^2 for real A
    re = lx_re @ lx_re - ly_im @ ly_im + lz_re @ lz_re
    return re


def spinor_square(n) -> ClaimResult:
    """Residual of ``(n.L)^2 = |n|^2 L^2 / 3`` using the computed L^2."""
    n = np.asarray(n, dtype=float)
    if n.shape != (3,) or not np.linalg.norm(n) > 0:
        raise ValueError("n must be a nonzero real 3-vector")
    nl = sum(c * m for c, m in zip(n, angular_momentum()))
    res = np.linalg.norm(nl @ nl - (n @ n) * l_squared() / 3.0)
    return judge(
        "spinor-square",
        f"(n.L)^2 = |n|^2 L^2/3 for n={n.tolist()}",
        "Eigenspace Degeneracy: (n.L)^2",
        res, 1e-12, required=False,
    )


def solution_matrix(kind, t: float, theta: float = 0.0) -> np.ndarray:
    """X_Q, X_J or X_D exactly as printed (X_Q is not quite unitary)."""
    kind = SolutionMatrixKind(kind)
    c, s = math.cos(t), math.sin(t)
    h = SQRT_HALF
    if kind is SolutionMatrixKind.Q:
        ep, em = np.exp(1j * theta), np.exp(-1j * theta)
        rows = [
            [h * c, -h * c, 1j * em * s],
            [h, h, 0],
            [1j * h * ep * s, -1j * h * ep * s, c],
        ]
    elif kind is SolutionMatrixKind.J:
        rows = [
            [h * c, -h * c, -s],
            [h, h, 0],
            [1j * h * s, -1j * h * s, 1j * c],
        ]
    else:
        rows = [
            [-1j * h * c, 1j * h * c, 1j * s],
            [h, h, 0],
            [1j * h * s, -1j * h * s, 1j * c],
        ]
    return np.array(rows, dtype=np.complex128)


def isometric_image(kind, t: float, theta: float = 0.0) -> np.ndarray:
    """``X diag(1, -1, 0) X^dagger``."""
    x = solution_matrix(kind, t, theta)
    return x @ L_DIAG @ dagger(x)


def printed_isometric_target(kind, t: float, theta: float = 0.0) -> HermitianMatrix:
    kind = SolutionMatrixKind(kind)
    c, s = math.cos(t), math.sin(t)
    if kind is SolutionMatrixKind.Q:
        ep, em = np.exp(1j * theta), np.exp(-1j * theta)
        rows = [[0, c, 0], [c, 0, -1j * em * s], [0, 1j * ep * s, 0]]
    elif kind is SolutionMatrixKind.J:
        rows = [[0, c, 0], [c, 0, -1j * s], [0, 1j * s, 0]]
    else:
        rows = [[0, -1j * c, 0], [1j * c, 0, -1j * s], [0, 1j * s, 0]]
    return np.array(rows, dtype=np.complex128)


def _plane_rotation(a13: complex, a31: complex, c: float) -> np.ndarray:
    return np.array([[c, 0, a13], [0, 1, 0], [a31, 0, c]], dtype=np.complex128)


def rotation(family, sigma: float, theta: float = 0.0) -> np.ndarray:
    """The printed (1,3)-plane rotation of a family; aliases resolved."""
    if isinstance(family, tuple):
        family = RotationFamily(*family)
    fam = family.canonical()
    c, s = math.cos(sigma), math.sin(sigma)
    ep, em = np.exp(1j * theta), np.exp(-1j * theta)
    kind, i = fam.kind, fam.index
    if kind is SolutionMatrixKind.Q:
        if i == 1:
            return _plane_rotation(-1j * em * s, 1j * ep * s, c)
        if i == 2:
            return _plane_rotation(-1j * em * s, -1j * ep * s, c)
        return _plane_rotation(1j * em * s, -1j * ep * s, c)
    if kind is SolutionMatrixKind.J:
        if i == 1:
            return _plane_rotation(1j * s, 1j * s, c)
        return _plane_rotation(-1j * s, 1j * s, c)
    return np.array([[c, 0, s], [0, 1, 0], [-s, 0, c]], dtype=np.complex128)


ALL_FAMILIES = tuple(
    RotationFamily(k, i) for k in SolutionMatrixKind for i in (1, 2, 3)
)


def shift_residual(family, kind, column: int, t: float, sigma: float, theta: float = 0.0) -> float:
    """``|| R(sigma) a_i(t) - a_i(t + sigma) ||_2`` for column ``i`` of X_kind."""
    if column not in (1, 2, 3):
        raise ValueError("column must be 1, 2 or 3")
    j = column - 1
    before = solution_matrix(kind, t, theta)[:, j]
    after = solution_matrix(kind, t + sigma, theta)[:, j]
    return float(np.linalg.norm(rotation(family, sigma, theta) @ before - after))


def z_root() -> complex:
    """``z = -(1 - i sqrt 3)/2``, a primitive cube root of unity."""
    return -0.5 * (1 - 1j * math.sqrt(3.0))


def qutrit_dft() -> UnitaryMatrix:
    z = z_root()
    return np.array(
        [[1, 1, 1], [1, z, z**2], [1, z**2, z**4]], dtype=np.complex128
    ) / math.sqrt(3.0)


SWAP23 = np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=np.complex128)


def dft_swap_gate(tol: float = 1e-13) -> UnitaryMatrix:
    """``Pi^T Pi``, checked against the 2<->3 swap permutation."""
    pi = qutrit_dft()
    g = pi.T @ pi
    res = np.linalg.norm(g - SWAP23)
    if res > tol:
        raise AssertionError(f"Pi^T Pi is not the swap gate (residual {res:.3e})")
    return g


def evolved_constraint(
    p: BrachistochroneProblem, omega1: float, omega2: float, t: float
) -> HermitianMatrix:
    """``U+(t) F(0) U+(t)^dagger`` for the constraint with diagonals."""
    u = u_plus(p, t)
    return u @ constraint_with_diagonals(p, omega1, omega2) @ dagger(u)


def printed_evolved_constraint(
    p: BrachistochroneProblem, omega1: float, omega2: float, t: float
) -> np.ndarray:
    """The displayed closed form built from Lambda1, Lambda2 and Xi."""
    lam1 = 2 * omega1 + omega2
    lam2 = omega1 + omega2
    kt = p.k * t
    xi = 0.5 * (p.k * math.cos(2 * kt) + 1j * omega2 * math.sin(2 * kt))
    diag = lam1 * math.cos(kt) ** 2 - lam2
    ep = np.exp(1j * p.theta)
    return np.array(
        [
            [diag, 0, ep * xi],
            [0, omega2, 0],
            [-np.conj(ep) * np.conj(xi), 0, -diag],
        ],
        dtype=np.complex128,
    )


def swapped_generator(omega1: float, kappa: complex) -> HermitianMatrix:
    kappa = as_scalar(kappa)
    return np.array(
        [[omega1, 0, kappa], [0, 0, 0], [kappa.conjugate(), 0, -omega1]],
        dtype=np.complex128,
    )


def swapped_problem_state(omega1: float, kappa: complex, t: float) -> np.ndarray:
    """Evolve ``(1, 0, 0)`` under the constant swapped Hamiltonian."""
    h = swapped_generator(omega1, kappa)
    nu = math.sqrt(omega1**2 + abs(complex(kappa)) ** 2)
    if nu == 0:
        raise ValueError("nu = sqrt(omega1^2 + |kappa|^2) must be positive")
    return expm_rank_reduced(h, nu, t)[:, 0]


def printed_swapped_state(omega1: float, kappa: complex, t: float) -> np.ndarray:
    """The displayed state, reading its ``n_z`` as ``omega1``."""
    kappa = complex(kappa)
    nu = math.sqrt(omega1**2 + abs(kappa) ** 2)
    return np.array(
        [
            math.cos(nu * t) - 1j * omega1 * math.sin(nu * t) / nu,
            0,
            -1j * kappa.conjugate() * math.sin(nu * t) / nu,
        ],
        dtype=np.complex128,
    )

