"""Acceptance criteria 1-12.

Each test records one PASS/FAIL line in ``RESULTS``; ``conftest.py``
prints them in the terminal summary.  Criteria 5 and 11 are checked in
their literal form and are expected to fail (strict xfail): the literal
back-action shift has the wrong sign, and the printed eta-system has the
opposite overall sign to the commutator.  The corrected forms are
asserted separately and pass.
"""
import math
import time

import numpy as np
import pytest

from su3brach import degeneracy as dg
from su3brach.classify import cayley_hamilton_residual
from su3brach.ledger import LedgerConfig, run_all
from su3brach.linalg import commutator, dagger, unitarity_residual
from su3brach.oracle import SampledGenerator, numeric_trajectory
from su3brach.problem import (
    BrachistochroneProblem,
    back_action_residual,
    brachistochrone_residual,
    constraint,
    hamiltonian_at,
)
from su3brach.propagators import (
    conservation_split,
    fundamental_period,
    frame_transport,
    resonance,
    schrodinger_propagator,
)
from su3brach.su4 import (
    Su4Problem,
    printed_eps_matrix,
    printed_eta_matrix,
    probe_eps_coefficients,
    probe_eta_coefficients,
)

RESULTS: dict[int, str] = {}
SEED = 20240917


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def test_criterion_01_resonance_constants():
    t0 = time.perf_counter()
    p = BrachistochroneProblem(1.0)
    ratio = resonance(p)
    T0 = fundamental_period(p)
    elapsed = time.perf_counter() - t0
    ok = (abs(p.R - math.sqrt(3)) <= 1e-12 and abs(p.delta - 2) <= 1e-12
          and (ratio.m, ratio.n) == (2, 1) and abs(T0 - 2 * math.pi) <= 1e-12 and elapsed < 1e-3)
    record(1, ok, f"R={p.R!r} Delta={p.delta!r} m/n={ratio.m}/{ratio.n} T0={T0!r} ({elapsed * 1e3:.3f} ms)")
    assert ok


def test_criterion_02_closed_form_vs_oracle():
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(20):
        p = BrachistochroneProblem(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2 * math.pi))
        T = fundamental_period(p)
        times = np.linspace(0.0, T, 64)
        g = SampledGenerator(lambda t, p=p: hamiltonian_at(p, t), 0.0, T)
        traj = numeric_trajectory(g, times, 2**16)
        worst = max(worst, max(np.linalg.norm(schrodinger_propagator(p, t) - u)
                               for t, u in zip(times, traj)))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-8 and elapsed < 30
    record(2, ok, f"max ||U_closed - U_oracle||_F = {worst:.3e} over 20 problems ({elapsed:.1f} s)")
    assert ok


def test_criterion_03_periodicity():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED + 3)
    resonant = []
    for k, R in [(1.0, None), (2.0, None), (0.5, None), (1.0, 0.75), (1.3, 1.3 * 0.75)]:
        p = BrachistochroneProblem(k, rng.uniform(0, 2 * math.pi), R=R)
        resonant.append(np.linalg.norm(schrodinger_propagator(p, fundamental_period(p)) - np.eye(3)))
    control = np.linalg.norm(
        schrodinger_propagator(BrachistochroneProblem(1.0, 0.0, R=1.0), 2 * math.pi) - np.eye(3))
    elapsed = time.perf_counter() - start
    ok = max(resonant) < 1e-8 and control > 0.1 and elapsed < 5
    record(3, ok, f"resonant max {max(resonant):.3e}, R=k control {control:.3f} ({elapsed * 1e3:.1f} ms)")
    assert ok


def test_criterion_04_brachistochrone_ode():
    p = BrachistochroneProblem(1.0)
    hs = (1e-2, 5e-3, 2.5e-3)
    ts = np.random.default_rng(SEED + 4).uniform(0, 2 * math.pi, 8)
    res = [max(brachistochrone_residual(p, t, h) for t in ts) for h in hs]
    orders = [math.log2(res[0] / res[1]), math.log2(res[1] / res[2])]
    ok = all(abs(o - 2.0) <= 0.1 for o in orders) and res[2] < 1e-5
    record(4, ok, f"residuals {res[0]:.2e}, {res[1]:.2e}, {res[2]:.2e}; orders "
                  f"{orders[0]:.3f}, {orders[1]:.3f}")
    assert ok


def _back_action_samples():
    rng = np.random.default_rng(SEED + 5)
    return [(BrachistochroneProblem(rng.uniform(0.5, 2.0), rng.uniform(0, 2 * math.pi)),
             rng.uniform(-10, 10)) for _ in range(100)]


@pytest.mark.xfail(strict=True, reason="literal shift s - pi/(2k) has the wrong sign; "
                                       "the identity holds with s + pi/(2k)")
def test_criterion_05_back_action_literal():
    worst = max(
        np.linalg.norm(commutator(hamiltonian_at(p, s), constraint(p))
                       - 1j * p.k * hamiltonian_at(p, s - math.pi / (2 * p.k)))
        for p, s in _back_action_samples()
    )
    corrected = max(back_action_residual(p, s) for p, s in _back_action_samples())
    ok = worst < 1e-12
    record(5, ok, f"literal form residual {worst:.3f} (corrected +pi/(2k) form: {corrected:.2e})")
    assert ok


def test_criterion_05_back_action_corrected():
    worst = max(back_action_residual(p, s) for p, s in _back_action_samples())
    assert worst < 1e-12


def test_criterion_06_frame_transport():
    rng = np.random.default_rng(SEED + 6)
    p = BrachistochroneProblem(1.0, 0.7)
    group = conj = 0.0
    for t, s, r in rng.uniform(-10, 10, size=(50, 3)):
        w = lambda a, b: frame_transport(p, a, b)  # noqa: E731
        group = max(group, np.linalg.norm(w(t, s) @ w(s, r) - w(t, r)))
        conj = max(conj, np.linalg.norm(w(t, s) @ hamiltonian_at(p, s) @ dagger(w(t, s))
                                        - hamiltonian_at(p, t)))
    ok = group < 1e-12 and conj < 1e-12
    record(6, ok, f"groupoid {group:.2e}, conjugation {conj:.2e}")
    assert ok


def test_criterion_07_gates():
    pi = dg.qutrit_dft()
    u = unitarity_residual(pi)
    swap = np.linalg.norm(pi.T @ pi - dg.SWAP23)
    z3 = abs(dg.z_root() ** 3 - 1)
    ok = u < 1e-14 and swap < 1e-13 and z3 < 1e-15
    record(7, ok, f"Pi unitarity {u:.2e}, Pi^T Pi - swap {swap:.2e}, |z^3 - 1| {z3:.2e}")
    assert ok


def test_criterion_08_cayley_hamilton():
    rng = np.random.default_rng(SEED + 8)
    p = BrachistochroneProblem(1.0, 0.7)
    orbit = max(np.linalg.norm(np.linalg.matrix_power(hamiltonian_at(p, t), 3) - p.R**2 * hamiltonian_at(p, t))
                for t in rng.uniform(0, 2 * math.pi, 32))
    rand = 0.0
    for _ in range(100):
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        h = 0.5 * (a + dagger(a))
        rand = max(rand, cayley_hamilton_residual(h) / np.linalg.norm(h) ** 3)
    ok = orbit < 1e-10 and rand < 1e-9
    record(8, ok, f"orbit {orbit:.2e}, random (scaled) {rand:.2e}")
    assert ok


def test_criterion_09_l_squared():
    integer_ok = np.array_equal(dg.l_squared_integer(), np.diag([3, 4, 3]))
    report = run_all(config=LedgerConfig(claims=("C09-l-squared",)))
    c = {x.id: x for x in report.claims}
    printed = c["C09-l-squared-printed"]
    ok = integer_ok and printed.status == "report-only" and printed.residual == pytest.approx(4.0)
    record(9, ok, f"sum L_i^2 = diag(3,4,3): {integer_ok}; printed 3 diag(1,0,1) recorded "
                  f"{printed.status}, residual {printed.residual:g}")
    assert ok


def test_criterion_10_conservation_split():
    p = BrachistochroneProblem(1.0, 0.7)
    u1, u2 = conservation_split(p, fundamental_period(p), 256)
    res = np.linalg.norm(u1 @ u2 - np.eye(3))
    generic = next(c for c in run_all(p, LedgerConfig(claims=("C15",))).claims)
    ok = res < 1e-9 and generic.status == "report-only"
    record(10, ok, f"||U1 U2 - 1|| at T0 = {res:.2e}; generic t recorded {generic.status} "
                   f"({generic.residual:.3f})")
    assert ok


def _su4_samples():
    rng = np.random.default_rng(SEED + 11)
    return [Su4Problem.demo()] + [Su4Problem.random(rng) for _ in range(10)]


@pytest.mark.xfail(strict=True, reason="printed eta-system has the opposite overall sign to [H, F]")
def test_criterion_11_su4_structure_literal():
    eps = eta = 0.0
    for p4 in _su4_samples():
        eps = max(eps, np.abs(probe_eps_coefficients(p4) - printed_eps_matrix(p4)).max())
        a, b = probe_eta_coefficients(p4)
        eta = max(eta, np.abs(a - printed_eta_matrix(p4)).max(), np.abs(b).max())
    ok = eps < 1e-10 and eta < 1e-10
    record(11, ok, f"eps-system {eps:.2e}; eta-system as printed {eta:.3f} (sign flip)")
    assert ok


def test_criterion_11_su4_structure_corrected():
    for p4 in _su4_samples():
        assert np.abs(probe_eps_coefficients(p4) - printed_eps_matrix(p4)).max() < 1e-10
        a, b = probe_eta_coefficients(p4)
        assert np.abs(a + printed_eta_matrix(p4)).max() < 1e-10
        assert np.abs(b).max() < 1e-10


def test_criterion_12_full_verify():
    start = time.perf_counter()
    first = run_all()
    elapsed = time.perf_counter() - start
    second = run_all()
    s = first.summary
    deterministic = first.to_json() == second.to_json()
    ok = s["fail"] == 0 and elapsed < 60 and deterministic
    record(12, ok, f"pass={s['pass']} fail={s['fail']} report-only={s['report_only']}, "
                   f"{elapsed:.2f} s, deterministic={deterministic}")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
