"""Small dense complex matrix helpers.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` with shape
``(3, 3)`` or ``(4, 4)``.  The ``HermitianMatrix`` / ``UnitaryMatrix``
names are aliases used for documentation; the ``as_*`` functions enforce
the corresponding invariants at module boundaries.
"""
from __future__ import annotations

import numpy as np

ComplexMatrix = np.ndarray
HermitianMatrix = np.ndarray
UnitaryMatrix = np.ndarray

HERMITIAN_RTOL = 1e-12
UNITARY_TOL = 1e-10
ALLOWED_DIMS = (3, 4)


class PreconditionError(ValueError):
    """Raised when an input violates an operation's algebraic precondition."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


def as_scalar(z) -> complex:
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValueError(f"non-finite complex scalar: {z!r}")
    return z


def as_matrix(a) -> ComplexMatrix:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in ALLOWED_DIMS:
        raise ValueError(f"expected a 3x3 or 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def dagger(a: ComplexMatrix) -> ComplexMatrix:
    return np.conj(np.swapaxes(a, -1, -2))


def hermiticity_residual(a: ComplexMatrix) -> float:
    return float(np.linalg.norm(a - dagger(a)))


def unitarity_residual(u: ComplexMatrix) -> float:
    return float(np.linalg.norm(dagger(u) @ u - np.eye(u.shape[-1])))


def as_hermitian(a) -> HermitianMatrix:
    m = as_matrix(a)
    if hermiticity_residual(m) > HERMITIAN_RTOL * max(1.0, np.linalg.norm(m)):
        raise ValueError("matrix is not Hermitian")
    return m


def as_unitary(u) -> UnitaryMatrix:
    m = as_matrix(u)
    res = unitarity_residual(m)
    if res > UNITARY_TOL:
        raise ValueError(f"matrix is not unitary (residual {res:.3e})")
    return m


def _check_same_dim(a: ComplexMatrix, b: ComplexMatrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")


def commutator(a, b) -> ComplexMatrix:
    """Return ``a @ b - b @ a``."""
    a, b = as_matrix(a), as_matrix(b)
    _check_same_dim(a, b)
    return a @ b - b @ a


def frobenius_distance(a, b) -> float:
    a, b = as_matrix(a), as_matrix(b)
    _check_same_dim(a, b)
    return float(np.linalg.norm(a - b))


def conjugate_by(u, a) -> ComplexMatrix:
    """Return ``u a u^dagger``."""
    u, a = as_matrix(u), as_matrix(a)
    _check_same_dim(u, a)
    return u @ a @ dagger(u)


def expm_hermitian(h, scale: float) -> UnitaryMatrix:
    """Return ``exp(-i * scale * h)`` for Hermitian ``h``.

    Uses LAPACK's Hermitian eigensolver, which is stable on the
    degenerate spectra ({+x, -x, 0}) that appear throughout this package.
    Accepts a stack of matrices with shape ``(..., n, n)``.
    """
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim == 2:
        h = as_hermitian(h)
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise PreconditionError(f"eigen-solver did not converge: {exc}") from exc
    phases = np.exp(-1j * scale * w)
    return (v * phases[..., None, :]) @ dagger(v)


def rank_reduced_residual(a, nu: float) -> float:
    """Frobenius norm of ``a^3 - nu^2 a``."""
    a = as_matrix(a)
    return float(np.linalg.norm(a @ a @ a - nu**2 * a))


def expm_rank_reduced(a, nu: float, scale: float) -> UnitaryMatrix:
    """Closed-form ``exp(-i * scale * a)`` for ``a`` with ``a^3 = nu^2 a``.

    Such a matrix has spectrum inside {nu, -nu, 0}, so the exponential
    truncates to three terms::

        1 - i a sin(nu s)/nu + (cos(nu s) - 1) a^2 / nu^2
    """
    a = as_hermitian(a)
    if not nu > 0:
        raise PreconditionError(f"nu must be positive, got {nu}")
    res = rank_reduced_residual(a, nu)
    if res > 1e-10 * max(1.0, nu**3):
        raise PreconditionError(
            f"a^3 != nu^2 a (residual {res:.3e})", residual=res
        )
    x = nu * scale
    eye = np.eye(a.shape[0], dtype=np.complex128)
    return eye - 1j * a * (np.sin(x) / nu) + (a @ a) * ((np.cos(x) - 1.0) / nu**2)


def matrix_to_json(m) -> dict:
    """Encode as ``{"dim": n, "entries": [[re, im], ...]}`` (row-major)."""
    m = as_matrix(m)
    return {
        "dim": int(m.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_json(obj) -> ComplexMatrix:
    """Inverse of :func:`matrix_to_json`; errors name the offending position."""
    if not isinstance(obj, dict) or "dim" not in obj or "entries" not in obj:
        raise ValueError("matrix JSON must be an object with 'dim' and 'entries'")
    dim = obj["dim"]
    if dim not in ALLOWED_DIMS:
        raise ValueError(f"'dim' must be 3 or 4, got {dim!r}")
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != dim * dim:
        raise ValueError(f"'entries' must be a list of {dim * dim} [re, im] pairs")
    out = np.empty(dim * dim, dtype=np.complex128)
    for i, pair in enumerate(entries):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise ValueError(
                f"entry {i} (row {i // dim + 1}, col {i % dim + 1}) is not a [re, im] pair: {pair!r}"
            )
        out[i] = complex(pair[0], pair[1])
    return as_matrix(out.reshape(dim, dim))
