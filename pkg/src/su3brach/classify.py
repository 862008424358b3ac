"""Characteristic-polynomial invariants of 3x3 Hermitian matrices.

Every 3x3 matrix obeys ``H^3 - Tr(H) H^2 - dE2 H - det(H) 1 = 0`` with
``dE2 = (Tr(H^2) - Tr(H)^2) / 2``.  The triple (trace, dE2, det) is
invariant under unitary conjugation and under relabelling of the basis,
so it labels equivalence classes directly.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .linalg import as_hermitian

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class RootClass:
    trace: float
    delta_e_sq: float
    det: float
    eigenvalues: tuple[float, float, float]
    traceless: bool
    det_sign: str

    def invariants(self) -> tuple[float, float, float]:
        return (self.trace, self.delta_e_sq, self.det)

    def to_json(self) -> dict:
        d = asdict(self)
        d["eigenvalues"] = list(self.eigenvalues)
        return d


def _as_3x3(h) -> np.ndarray:
    h = as_hermitian(h)
    if h.shape != (3, 3):
        raise ValueError("classification is defined for 3x3 matrices")
    return h


def char_poly_invariants(h, zero_tol: float = 1e-12) -> RootClass:
    h = _as_3x3(h)
    tr = float(np.trace(h).real)
    de2 = 0.5 * (float(np.trace(h @ h).real) - tr * tr)
    det = float(np.linalg.det(h).real)
    ev = tuple(float(x) for x in np.linalg.eigvalsh(h))
    scale = max(1.0, float(np.linalg.norm(h)) ** 3)
    if abs(det) <= zero_tol * scale:
        sign = "0"
    else:
        sign = "+" if det > 0 else "-"
    return RootClass(tr, de2, det, ev, abs(tr) < zero_tol, sign)


def cayley_hamilton_residual(h) -> float:
    h = _as_3x3(h)
    c = char_poly_invariants(h)
    lhs = h @ h @ h - c.trace * (h @ h) - c.delta_e_sq * h - c.det * np.eye(3)
    return float(np.linalg.norm(lhs))


def same_class(a, b, tol: float = DEFAULT_TOL) -> bool:
    ia = char_poly_invariants(a).invariants()
    ib = char_poly_invariants(b).invariants()
    return all(abs(x - y) <= tol for x, y in zip(ia, ib))


def example_hamiltonian(w1: float, w2: float, w3: float, eps1: complex, eps2: complex) -> np.ndarray:
    """The non-zero-determinant example: diagonal w's, eps1 on (1,2), eps2 on (1,3)."""
    e1, e2 = complex(eps1), complex(eps2)
    return np.array(
        [[w1, e1, e2], [e1.conjugate(), w2, 0], [e2.conjugate(), 0, w3]],
        dtype=np.complex128,
    )


def example_determinant(w1: float, w2: float, w3: float, eps1: complex, eps2: complex) -> float:
    return w1 * w2 * w3 - w3 * abs(eps1) ** 2 - w2 * abs(eps2) ** 2
