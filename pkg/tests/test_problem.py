import math

import numpy as np
import pytest
from hypothesis import given

from su3brach.linalg import commutator, dagger
from su3brach.problem import (
    BrachistochroneProblem,
    ControlFields,
    anticommutator_residual,
    back_action_residual,
    boundary_operator,
    brachistochrone_residual,
    constraint,
    constraint_with_diagonals,
    control_fields,
    field_hamiltonian,
    field_propagator,
    hamiltonian_at,
    printed_field_propagator,
    propagate_fields,
    upsilon,
)

from conftest import angles, positive_k, times

SQ3 = math.sqrt(3.0)


def test_defaults():
    p = BrachistochroneProblem(1.0)
    assert p.R == pytest.approx(SQ3, abs=1e-15)
    assert p.delta == pytest.approx(2.0, abs=1e-15)
    assert p.kappa == 1.0
    assert BrachistochroneProblem(1.0, 7.0).theta == pytest.approx(7.0 - 2 * math.pi)


@pytest.mark.parametrize("kw", [dict(k=0.0), dict(k=-1.0), dict(k=math.inf),
                                dict(k=1.0, R=0.0), dict(k=1.0, theta=math.nan),
                                dict(k=1.0, convention="other")])
def test_invalid(kw):
    with pytest.raises(ValueError):
        BrachistochroneProblem(**kw)


def test_json_round_trip():
    p = BrachistochroneProblem(1.5, 0.3, R=2.0, convention="plus-theta")
    assert BrachistochroneProblem.from_json(p.to_json()) == p
    assert BrachistochroneProblem.from_json({"k": 2, "R": "auto"}).R == pytest.approx(2 * SQ3)
    with pytest.raises(ValueError):
        BrachistochroneProblem.from_json({"theta": 1})


def test_kappa_conventions():
    p = BrachistochroneProblem(2.0, 0.5)
    assert p.kappa == pytest.approx(2 * np.exp(-0.5j))
    assert p.with_(convention="plus-theta").kappa == pytest.approx(2 * np.exp(0.5j))


def test_fields_at_zero_and_quarter_period():
    p = BrachistochroneProblem(1.0, 0.0)
    assert np.allclose(hamiltonian_at(p, 0.0), SQ3 * np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]]))
    f = control_fields(p, math.pi / 2)
    assert f.eps1 == pytest.approx(0, abs=1e-15)
    assert f.eps2 == pytest.approx(-1j * SQ3)


@given(positive_k, angles, times)
def test_isotropy_and_trace_orthogonality(k, theta, t):
    p = BrachistochroneProblem(k, theta)
    h = hamiltonian_at(p, t)
    assert np.trace(h @ h).real / 2 == pytest.approx(p.R**2, rel=1e-12)
    assert abs(np.trace(h @ constraint(p))) < 1e-12 * p.R * p.k
    assert control_fields(p, t).intensity == pytest.approx(p.R**2, rel=1e-12)
    assert np.allclose(h, field_hamiltonian(*control_fields(p, t).as_vector()[[0, 2]]))


def test_hamiltonian_vectorised():
    p = BrachistochroneProblem(1.3, 0.2)
    ts = np.linspace(0, 3, 5)
    stack = hamiltonian_at(p, ts)
    assert stack.shape == (5, 3, 3)
    for t, h in zip(ts, stack):
        assert np.array_equal(h, hamiltonian_at(p, t))


def test_constraint_with_diagonals_is_traceless():
    p = BrachistochroneProblem(1.0, 0.3)
    f = constraint_with_diagonals(p, 0.4, -1.1)
    assert abs(np.trace(f)) < 1e-15
    assert np.allclose(f, dagger(f))


def test_upsilon_squares_to_k2():
    p = BrachistochroneProblem(1.7, 1.1)
    u = upsilon(p)
    assert np.allclose(u @ u, p.k**2 * np.eye(4))
    assert np.allclose(u, dagger(u))


@given(positive_k, angles, times)
def test_field_propagator_reproduces_fields(k, theta, t):
    p = BrachistochroneProblem(k, theta)
    got = propagate_fields(p, control_fields(p, 0.0), t)
    want = control_fields(p, t)
    assert abs(got.eps1 - want.eps1) < 1e-12 * p.R
    assert abs(got.eps2 - want.eps2) < 1e-12 * p.R


def test_field_propagator_vector_input():
    p = BrachistochroneProblem(1.0, 0.0)
    xi = np.array([1.0, 1.0, 0.5j, -0.5j])
    assert propagate_fields(p, xi, 0.0) == ControlFields(1.0, 0.5j)
    with pytest.raises(ValueError):
        propagate_fields(p, np.array([1.0, 2.0, 0, 0]), 0.1)
    with pytest.raises(ValueError):
        propagate_fields(p, np.zeros(3), 0.1)


def test_printed_field_propagator_differs():
    p = BrachistochroneProblem(1.0, 0.0)
    assert np.allclose(printed_field_propagator(p, 0.0), field_propagator(p, 0.0))
    assert np.linalg.norm(printed_field_propagator(p, 0.5) - field_propagator(p, 0.5)) > 0.1


def test_boundary_operator_fixed_point():
    # with omega1 = 0 the generator has no (1,1) entry and no 2-3 block
    p = BrachistochroneProblem(1.0, 0.0)
    eps0 = ControlFields(1.0, 0.0)
    g = boundary_operator(p, eps0, 0.0, 0.0)
    assert anticommutator_residual(g) < 1e-15
    assert anticommutator_residual(boundary_operator(p, ControlFields(1.0, 0.5), 0.2, 0.3)) > 0.1


def test_ode_residual_order_two():
    p = BrachistochroneProblem(1.0, 0.0)
    r = [brachistochrone_residual(p, 0.3, h) for h in (1e-2, 5e-3, 2.5e-3)]
    orders = [math.log2(r[0] / r[1]), math.log2(r[1] / r[2])]
    assert all(abs(o - 2.0) < 0.1 for o in orders)
    assert r[2] < 1e-5


@given(positive_k, angles, times)
def test_back_action_plus_quarter_period(k, theta, s):
    p = BrachistochroneProblem(k, theta)
    assert back_action_residual(p, s) < 1e-12 * max(1.0, p.R * p.k)
    # the same identity with a minus shift carries an extra sign
    lhs = commutator(hamiltonian_at(p, s), constraint(p))
    rhs = -1j * p.k * hamiltonian_at(p, s - math.pi / (2 * p.k))
    assert np.linalg.norm(lhs - rhs) < 1e-12 * max(1.0, p.R * p.k)


def test_ode_fails_in_other_convention_for_generic_theta():
    p = BrachistochroneProblem(1.0, 0.7, convention="plus-theta")
    assert brachistochrone_residual(p, 0.3, 1e-3) > 0.1
    assert brachistochrone_residual(p.with_(theta=0.0), 0.3, 1e-3) < 1e-5
