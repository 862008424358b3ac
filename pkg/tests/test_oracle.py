import math

import numpy as np
import pytest
import scipy.linalg
from scipy.integrate import solve_ivp

from su3brach.oracle import (
    SampledGenerator,
    _ordered_product,
    central_difference,
    convergence_order,
    numeric_propagator,
    numeric_trajectory,
)
from su3brach.problem import BrachistochroneProblem, hamiltonian_at

from conftest import random_hermitian, random_unitary


def _solved(k=1.0, theta=0.0):
    p = BrachistochroneProblem(k, theta)
    return p, SampledGenerator(lambda t: hamiltonian_at(p, t), 0.0, 2 * math.pi / k)


def test_ordered_product_order(rng):
    fs = np.stack([random_unitary(rng) for _ in range(7)])
    expected = np.eye(3)
    for f in fs:
        expected = f @ expected
    assert np.allclose(_ordered_product(fs), expected, atol=1e-13)


def test_constant_generator_is_exact(rng):
    h = random_hermitian(rng)
    g = SampledGenerator(lambda t: np.broadcast_to(h, np.shape(t) + (3, 3)), 0.0, 1.3)
    assert np.allclose(numeric_propagator(g, steps=64), scipy.linalg.expm(-1.3j * h), atol=1e-13)
    assert math.isnan(convergence_order(g))


def test_scalar_sampler():
    p, _ = _solved()
    g = SampledGenerator(lambda t: hamiltonian_at(p, t), 0.0, 1.0, vectorized=False)
    gv = SampledGenerator(lambda t: hamiltonian_at(p, t), 0.0, 1.0)
    assert np.allclose(numeric_propagator(g, steps=32), numeric_propagator(gv, steps=32))


def test_matches_independent_ode_solver():
    p, g = _solved(1.0, 0.4)

    def rhs(t, y):
        return (-1j * hamiltonian_at(p, t) @ y.reshape(3, 3)).ravel()

    sol = solve_ivp(rhs, (0.0, 2.0), np.eye(3, dtype=complex).ravel(), rtol=1e-12, atol=1e-12)
    u_ref = sol.y[:, -1].reshape(3, 3)
    assert np.linalg.norm(numeric_propagator(g, 0.0, 2.0, 2**14) - u_ref) < 1e-7


def test_period_is_identity():
    _, g = _solved()
    assert np.linalg.norm(numeric_propagator(g, steps=2**16) - np.eye(3)) < 1e-8


def test_second_order():
    _, g = _solved()
    assert abs(convergence_order(g, 0.0, 2.0, 64) - 2.0) < 0.1


def test_rough_sampler_is_low_order():
    # a square-root cusp; piecewise-constant jumps are useless here because
    # the midpoint rule counts them exactly at most resolutions
    def cusp(t):
        t = np.asarray(t)
        h = np.zeros(t.shape + (3, 3), complex)
        h[..., 0, 1] = h[..., 1, 0] = np.sqrt(abs(t - 0.3137))
        h[..., 1, 2] = h[..., 2, 1] = 1.0
        return h

    g = SampledGenerator(cusp, 0.0, 1.0)
    assert convergence_order(g, base_steps=64) < 1.9


def test_unitarity_growth_bound():
    _, g = _solved()
    u = numeric_propagator(g, steps=4096)
    assert np.linalg.norm(u.conj().T @ u - np.eye(3)) < 4096 * 1e-15


def test_trajectory_endpoints_match_propagator():
    _, g = _solved()
    times = np.linspace(0.0, 3.0, 7)
    traj = numeric_trajectory(g, times, 6 * 128)
    assert np.allclose(traj[0], np.eye(3))
    assert np.allclose(traj[-1], numeric_propagator(g, 0.0, 3.0, 6 * 128), atol=1e-13)


def test_preconditions():
    _, g = _solved()
    with pytest.raises(ValueError):
        numeric_propagator(g, steps=1)
    with pytest.raises(ValueError):
        numeric_propagator(g, 1.0, 0.5)
    with pytest.raises(ValueError):
        convergence_order(g, base_steps=32)
    with pytest.raises(ValueError):
        central_difference(lambda t: np.eye(3), 0.0, 0.0)


def test_central_difference_exact_on_linear(rng):
    a = random_hermitian(rng)
    assert np.allclose(central_difference(lambda t: t * a, 0.7, 1e-3), a, atol=1e-12)
    assert np.allclose(central_difference(lambda t: a, 0.7, 1e-3), 0)


def test_central_difference_of_hamiltonian():
    p = BrachistochroneProblem(1.0, 0.0)
    t = 0.4
    exact = p.R * np.array(
        [[0, -math.sin(t), 0], [-math.sin(t), 0, -1j * math.cos(t)], [0, 1j * math.cos(t), 0]]
    )
    errs = [np.linalg.norm(central_difference(lambda s: hamiltonian_at(p, s), t, h) - exact)
            for h in (1e-2, 5e-3)]
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.01)
