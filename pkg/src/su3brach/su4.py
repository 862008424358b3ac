"""An SU(3) Hamiltonian embedded as the lower block of a 4x4 problem.

The brachistochrone equation ``i d/dt (H + F) = [H, F]`` splits into
three printed subsystems: the diagonal and ``kappa`` entries are
constant, the ``eta`` column is driven by the fields, and the fields obey
a 4x4 linear system with ``w+ = w3 - w2`` and ``w- = w4 - w3``.  Each
subsystem is checked by probing ``[H, F]`` one unknown at a time.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .claims import ClaimResult, judge
from .linalg import as_scalar

ANCHOR = "SU(4) embedding: i d/dt (H + F) = [H, F]"

# (row, col) of each unknown in the 4x4 matrices (0-based)
ETA_POS = ((0, 1), (0, 2), (0, 3))
EPS_POS = ((1, 2), (2, 3))
OMEGA_POS = ((0, 0), (1, 1), (2, 2), (3, 3))
KAPPA_POS = (1, 3)


@dataclass(frozen=True)
class Su4Problem:
    eps1: complex
    eps2: complex
    omegas: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    etas: tuple[complex, complex, complex] = (0j, 0j, 0j)
    kappa: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "eps1", as_scalar(self.eps1))
        object.__setattr__(self, "eps2", as_scalar(self.eps2))
        object.__setattr__(self, "kappa", as_scalar(self.kappa))
        if len(self.omegas) != 4 or len(self.etas) != 3:
            raise ValueError("need 4 omegas and 3 etas")
        object.__setattr__(self, "omegas", tuple(float(w) for w in self.omegas))
        object.__setattr__(self, "etas", tuple(as_scalar(e) for e in self.etas))

    @property
    def omega_plus(self) -> float:
        return self.omegas[2] - self.omegas[1]

    @property
    def omega_minus(self) -> float:
        return self.omegas[3] - self.omegas[2]

    @classmethod
    def demo(cls) -> "Su4Problem":
        return cls(
            eps1=0.8 - 0.3j,
            eps2=-0.2 + 0.6j,
            omegas=(0.3, -0.7, 0.5, 1.1),
            etas=(0.4 + 0.1j, -0.6 + 0.2j, 0.25 - 0.9j),
            kappa=0.35 + 0.45j,
        )

    @classmethod
    def random(cls, rng: np.random.Generator) -> "Su4Problem":
        c = lambda: complex(rng.normal(), rng.normal())  # noqa: E731
        return cls(c(), c(), tuple(rng.normal(size=4)), (c(), c(), c()), c())


def _hermitian_from_upper(entries: dict, diag) -> np.ndarray:
    m = np.diag(np.asarray(diag, dtype=np.complex128))
    for (i, j), z in entries.items():
        m[i, j] = z
        m[j, i] = np.conj(z)
    return m


def embedded_hamiltonian(p4: Su4Problem) -> np.ndarray:
    """``0 (+) H3`` with couplings eps1 on (2,3) and eps2 on (3,4)."""
    return _hermitian_from_upper({EPS_POS[0]: p4.eps1, EPS_POS[1]: p4.eps2}, [0, 0, 0, 0])


def su4_constraint(p4: Su4Problem) -> np.ndarray:
    entries = dict(zip(ETA_POS, p4.etas))
    entries[KAPPA_POS] = p4.kappa
    return _hermitian_from_upper(entries, p4.omegas)


def brachistochrone_rhs(p4: Su4Problem) -> np.ndarray:
    """``[H, F]``, which equals ``i d/dt (H + F)``."""
    h, f = embedded_hamiltonian(p4), su4_constraint(p4)
    return h @ f - f @ h


def printed_eta_matrix(p4: Su4Problem) -> np.ndarray:
    e1, e2 = p4.eps1, p4.eps2
    return np.array(
        [[0, e1.conjugate(), 0], [e1, 0, e2.conjugate()], [0, e2, 0]], dtype=np.complex128
    )


def printed_eps_matrix(p4: Su4Problem) -> np.ndarray:
    wp, wm, k = p4.omega_plus, p4.omega_minus, p4.kappa
    kb = k.conjugate()
    return np.array(
        [
            [wp, 0, 0, -k],
            [0, -wp, kb, 0],
            [0, k, wm, 0],
            [-kb, 0, 0, -wm],
        ],
        dtype=np.complex128,
    )


def _split_linear(z_one, z_i):
    """Coefficients (a, b) of ``f(z) = a z + b conj(z)`` from f(1), f(i)."""
    return 0.5 * (z_one - 1j * z_i), 0.5 * (z_one + 1j * z_i)


def probe_eta_coefficients(p4: Su4Problem) -> tuple[np.ndarray, np.ndarray]:
    """Matrices (A, B) with ``i d(eta)/dt = A eta + B conj(eta)``, by probing."""
    a = np.zeros((3, 3), dtype=np.complex128)
    b = np.zeros((3, 3), dtype=np.complex128)
    base = dict(eps1=p4.eps1, eps2=p4.eps2, omegas=p4.omegas, kappa=0j)
    for j in range(3):
        outs = []
        for z in (1.0 + 0j, 1j):
            etas = [0j, 0j, 0j]
            etas[j] = z
            rhs = brachistochrone_rhs(Su4Problem(etas=tuple(etas), **base))
            outs.append(np.array([rhs[pos] for pos in ETA_POS]))
        a[:, j], b[:, j] = _split_linear(*outs)
    return a, b


def _eps_vector(e1: complex, e2: complex) -> np.ndarray:
    return np.array([e1, np.conj(e1), e2, np.conj(e2)])


def probe_eps_coefficients(p4: Su4Problem) -> np.ndarray:
    """The 4x4 matrix M with ``i d/dt (e1, e1*, e2, e2*) = M (e1, e1*, e2, e2*)``."""
    m = np.zeros((4, 4), dtype=np.complex128)
    base = dict(omegas=p4.omegas, etas=(0j, 0j, 0j), kappa=p4.kappa)
    for which in range(2):
        outs = []
        for z in (1.0 + 0j, 1j):
            fields = [0j, 0j]
            fields[which] = z
            rhs = brachistochrone_rhs(Su4Problem(eps1=fields[0], eps2=fields[1], **base))
            (r1, c1), (r2, c2) = EPS_POS
            outs.append(np.array([rhs[r1, c1], rhs[c1, r1], rhs[r2, c2], rhs[c2, r2]]))
        coef, coef_conj = _split_linear(*outs)
        # rows are (e1, e1*, e2, e2*); e1* entries of rhs are conjugate equations
        m[:, 2 * which] = coef
        m[:, 2 * which + 1] = coef_conj
    return m


def _assemble_velocity(p4: Su4Problem, eta_dot, eps_dot) -> np.ndarray:
    """``d/dt (H + F)`` from parameter velocities; omegas and kappa fixed."""
    entries = dict(zip(ETA_POS, eta_dot))
    entries[EPS_POS[0]] = eps_dot[0]
    entries[EPS_POS[1]] = eps_dot[1]
    return _hermitian_from_upper(entries, [0, 0, 0, 0])


def fd_residual(p4: Su4Problem, eta_matrix: np.ndarray, h: float) -> float:
    """Residual of ``i d/dt (H + F) - [H, F]`` along a parameter trajectory.

    Parameters move linearly with the velocities the printed systems
    predict; ``d/dt`` is a central difference of step ``h``.
    """
    eta = np.array(p4.etas)
    eta_dot = -1j * (eta_matrix @ eta)
    xi_dot = -1j * (printed_eps_matrix(p4) @ _eps_vector(p4.eps1, p4.eps2))
    vel = _assemble_velocity(p4, eta_dot, (xi_dot[0], xi_dot[2]))

    def at(t):
        q = Su4Problem(
            eps1=p4.eps1 + t * xi_dot[0],
            eps2=p4.eps2 + t * xi_dot[2],
            omegas=p4.omegas,
            etas=tuple(eta + t * eta_dot),
            kappa=p4.kappa,
        )
        return embedded_hamiltonian(q) + su4_constraint(q)

    deriv = (at(h) - at(-h)) / (2 * h)
    # the trajectory is linear, so the difference quotient is exact up to round-off
    assert np.allclose(deriv, vel, atol=1e-8 * max(1.0, np.abs(vel).max()))
    return float(np.linalg.norm(1j * deriv - brachistochrone_rhs(p4)))


def su4_ode_check(p4: Su4Problem, h: float = 1e-3, tol: float = 1e-10) -> list[ClaimResult]:
    if not h > 0:
        raise ValueError("h must be positive")
    rhs = brachistochrone_rhs(p4)
    conserved = float(np.sqrt(
        sum(abs(rhs[i, i]) ** 2 for i, _ in OMEGA_POS)
        + abs(rhs[KAPPA_POS]) ** 2 + abs(rhs[KAPPA_POS[::-1]]) ** 2
    ))
    eps_m = probe_eps_coefficients(p4)
    eta_a, eta_b = probe_eta_coefficients(p4)
    printed_eta = printed_eta_matrix(p4)
    eta_scale = max(1.0, float(np.linalg.norm(printed_eta)))
    eps_scale = max(1.0, float(np.linalg.norm(printed_eps_matrix(p4))))
    return [
        judge("S4-conserved", "omega_j and kappa are constants of the motion", ANCHOR,
              conserved, tol),
        judge("S4-corner", "[H,F] has a zero (1,1) entry", ANCHOR, abs(rhs[0, 0]), 1e-13),
        judge("S4-eps", "field system coefficients incl. w+=w3-w2, w-=w4-w3 placement",
              "SU(4) embedding: w+ = w3 - w2, w- = w4 - w3",
              np.linalg.norm(eps_m - printed_eps_matrix(p4)) / eps_scale, tol),
        judge("S4-eta-printed", "eta system coefficients as printed", ANCHOR,
              (np.linalg.norm(eta_a - printed_eta) + np.linalg.norm(eta_b)) / eta_scale,
              tol, required=False),
        judge("S4-eta-corrected", "eta system with the overall sign flipped: i eta' = -M eta",
              ANCHOR,
              (np.linalg.norm(eta_a + printed_eta) + np.linalg.norm(eta_b)) / eta_scale, tol),
        judge("S4-fd-printed", "i d/dt(H+F) - [H,F] along the printed flow", ANCHOR,
              fd_residual(p4, printed_eta, h), 1e-8, required=False),
        judge("S4-fd-corrected", "i d/dt(H+F) - [H,F] along the sign-corrected flow", ANCHOR,
              fd_residual(p4, -printed_eta, h), 1e-8),
    ]
