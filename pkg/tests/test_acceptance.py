"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS`` / ``FAIL`` line (visible without ``-s``)
before asserting, so the whole table is readable from one pytest run:

    pytest tests/test_acceptance.py -v
"""

import dataclasses
import functools
import time

import numpy as np
import pytest
from scipy.linalg import expm

from dqdcorr.bath import complex_trigamma, kernel_closed_form, kernel_quadrature
from dqdcorr.measures import classical_correlation, entanglement_of_formation, quantum_discord
from dqdcorr.model import ModelParams, closed_form_propagator, max_entanglement_time, system_hamiltonian
from dqdcorr.qcore import PAULIS, kron, project_to_physical
from dqdcorr.redfield import evolve
from dqdcorr.scenario import DELTA, figure_preset, kelvin_to_beta, list_presets, run_scenario
from dqdcorr.bath import BathParams

from conftest import werner

pytestmark = pytest.mark.slow

FIG1 = dict(zip("abcdef", [DELTA / 8, DELTA / 4, DELTA / 2, 4 * DELTA, 8 * DELTA, 16 * DELTA]))


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    return emit


@functools.lru_cache(maxsize=None)
def scenario(name, **overrides):
    cfg = figure_preset(name)
    if overrides:
        cfg = cfg.replace(output=dataclasses.replace(cfg.output, **overrides))
    start = time.perf_counter()
    result = run_scenario(cfg)
    return result, time.perf_counter() - start


@functools.lru_cache(maxsize=None)
def trajectory(name, dt_factor=1.0):
    cfg = figure_preset(name)
    integ = dataclasses.replace(cfg.integrator, dt=cfg.integrator.dt * dt_factor,
                                positivity_tol=np.inf)
    return evolve(cfg.initial_matrix(), cfg.model, cfg.bath_params(), integ)


def eof_first_maximum(name):
    from dqdcorr.scenario import first_maximum_time
    tr = trajectory(name)
    eof = np.array([entanglement_of_formation(r) for r in tr.rho_s])
    return first_maximum_time(tr.t, eof)


def test_criterion_1_pure_state_coincidence(report):
    start = time.perf_counter()
    worst = {}
    for letter in FIG1:
        # stride 10 at dt = 0.005 samples every 0.05 tau
        res, _ = scenario(f"fig1{letter}", stride=10)
        assert res.rows[-1].t == pytest.approx(20.0)
        worst[letter] = float(np.max(np.abs(res.column("discord") - res.column("eof"))))
    elapsed = time.perf_counter() - start
    gap = max(worst.values())
    ok = gap <= 1e-3 and elapsed < 120
    report(1, ok, f"max |discord - EoF| = {gap:.2e} (tol 1e-3) over six J values, "
                  f"runtime {elapsed:.1f} s (target < 120 s)")
    assert ok


def test_criterion_2_max_entanglement_times(report):
    cases = [("fig1d", "strong"), ("fig1b", "weak")]
    lines, ok = [], True
    for name, regime in cases:
        formula = max_entanglement_time(figure_preset(name).model, regime)
        scanned = eof_first_maximum(name)
        rel = abs(scanned - formula) / formula
        ok &= rel <= 0.05
        lines.append(f"J={figure_preset(name).model.j / DELTA:g}D scan {scanned:.4f} "
                     f"vs formula {formula:.4f} ({100 * rel:.1f}%)")
    report(2, ok, "; ".join(lines) + " (tol 5%)")
    assert ok


def test_criterion_3_matched_regimes(report):
    lines, ok = [], True
    for weak, strong in [("fig1a", "fig1f"), ("fig1b", "fig1e")]:
        tw, ts = eof_first_maximum(weak), eof_first_maximum(strong)
        rel = abs(tw - ts) / min(tw, ts)
        ok &= rel <= 0.10
        lines.append(f"{weak}/{strong}: {tw:.3f} vs {ts:.3f} ({100 * rel:.1f}%)")
    report(3, ok, "; ".join(lines) + " (tol 10%)")
    assert ok


def test_criterion_4_kernel(report):
    worst = 0.0
    for temperature in (0.1, 0.5, 2.0):
        b = BathParams(1 / 600, 200.0, kelvin_to_beta(temperature))
        for dt in (0.0, 0.01, 0.1, 1.0, 5.0):
            ref = kernel_quadrature(b, dt)
            worst = max(worst, abs(kernel_closed_form(b, dt) - ref) / abs(ref))
    e1 = abs(complex_trigamma(1.0) - np.pi**2 / 6)
    e2 = abs(complex_trigamma(0.5) - np.pi**2 / 2)
    ok = worst <= 1e-6 and e1 <= 1e-10 and e2 <= 1e-10
    report(4, ok, f"kernel rel err {worst:.1e} (tol 1e-6); trigamma errors "
                  f"{e1:.1e}, {e2:.1e} (tol 1e-10)")
    assert ok


def test_criterion_5_propagator(report):
    times = np.linspace(0.0, 20.0, 401)
    worst = 0.0
    for j in FIG1.values():
        p = ModelParams(DELTA, j)
        h = system_hamiltonian(p)
        u = closed_form_propagator(p, times)
        worst = max(worst, max(np.abs(u[k] - expm(-1j * h * t)).max()
                               for k, t in enumerate(times)))
    ok = worst <= 1e-10
    report(5, ok, f"max |U_closed - expm| = {worst:.1e} over t <= 20 tau, six J values (tol 1e-10)")
    assert ok


def _halving_gap(name):
    coarse, fine = trajectory(name), trajectory(name, 0.5)
    gap = 0.0
    for k in range(0, len(coarse), 100):
        a = project_to_physical(coarse.rho_s[k], tol=np.inf)
        b = project_to_physical(fine.rho_s[2 * k], tol=np.inf)
        ra, rb = quantum_discord(a), quantum_discord(b)
        gap = max(gap, abs(ra.eof - rb.eof), abs(ra.discord - rb.discord))
    return gap


def test_criterion_6_integrator_hygiene(report):
    failures, stats = [], dict(trace=0.0, herm=0.0, mineig=0.0, halving=0.0)
    for name in list_presets():
        tr = trajectory(name)
        trace, herm, mineig = tr.trace_error.max(), tr.hermiticity_error.max(), tr.min_eigenvalue.min()
        halving = _halving_gap(name)
        stats = dict(trace=max(stats["trace"], trace), herm=max(stats["herm"], herm),
                     mineig=min(stats["mineig"], mineig), halving=max(stats["halving"], halving))
        if trace > 1e-8 or herm > 1e-10 or mineig < -1e-3 or halving > 1e-4:
            failures.append(f"{name} (min eig {mineig:.2e}, halving {halving:.1e})")
    ok = not failures
    detail = (f"{len(list_presets())} presets: max trace err {stats['trace']:.1e}, "
              f"max hermiticity err {stats['herm']:.1e}, min eigenvalue {stats['mineig']:.2e}, "
              f"max step-halving change {stats['halving']:.1e}")
    if failures:
        detail += "; out of bounds: " + ", ".join(failures)
    report(6, ok, detail)
    assert ok


def test_criterion_7_bath_topology(report):
    common, _ = scenario("fig6_common")
    indep, _ = scenario("fig6_independent")
    c_eof, plateau = common.summary.final_eof, common.summary.discord_plateau
    i_eof, i_qd = indep.summary.final_eof, indep.summary.final_discord
    ratio = plateau / i_qd if i_qd > 0 else np.inf
    ok = i_eof < 0.01 and i_qd < 0.01 and c_eof < 0.01 and plateau > 0.05 and ratio >= 10
    report(7, ok, f"t=50: independent EoF {i_eof:.4f}, discord {i_qd:.4f} (both < 0.01); "
                  f"common EoF {c_eof:.4f} (< 0.01), discord plateau {plateau:.4f} (> 0.05); "
                  f"plateau ratio {ratio:.1f} (>= 10)")
    assert ok


def test_criterion_8_temperature_ordering(report):
    finals = {}
    for letter, temperature in zip("abc", (0.1, 0.5, 2.0)):
        rho = project_to_physical(trajectory(f"fig2{letter}").rho_s[-1])
        r = quantum_discord(rho)
        finals[temperature] = (r.eof, r.discord)
    robust = all(qd >= eof for eof, qd in finals.values())
    ordered = finals[2.0][0] < finals[0.1][0]
    ok = robust and ordered
    table = ", ".join(f"T={t:g}K EoF {e:.4f} QD {q:.4f}" for t, (e, q) in finals.items())
    report(8, ok, f"t=20: {table}")
    assert ok


def _bell_diagonal(c):
    rho = np.eye(4, dtype=complex)
    for ci, s in zip(c, PAULIS):
        rho += ci * kron(s, s)
    return rho / 4


def _bell_diagonal_classical(c):
    m = max(abs(x) for x in c)
    xlogx = lambda x: 0.0 if x <= 0 else x * np.log2(x)
    return 0.5 * xlogx(1 - m) + 0.5 * xlogx(1 + m)


def test_criterion_9_discord_optimizer(report):
    states = [((-z, -z, -z), f"Werner z={z}") for z in (0.3, 0.5, 0.7, 1.0)]
    states += [((0.2, -0.6, 0.1), "c=(0.2,-0.6,0.1)"), ((0.5, 0.3, -0.4), "c=(0.5,0.3,-0.4)"),
               ((0.9, -0.1, 0.05), "c=(0.9,-0.1,0.05)"), ((-0.2, 0.15, -0.6), "c=(-0.2,0.15,-0.6)")]
    worst = max(abs(classical_correlation(_bell_diagonal(c))[0] - _bell_diagonal_classical(c))
                for c, _ in states)
    r = quantum_discord(werner(0.5))
    triple = (r.mutual_info, r.classical_corr, r.discord)
    triple_err = max(abs(a - b) for a, b in zip(triple, (0.4512, 0.1887, 0.2625)))
    ok = worst <= 1e-4 and triple_err <= 1e-3
    report(9, ok, f"Bell-diagonal classical correlation err {worst:.1e} (tol 1e-4); "
                  f"Werner 0.5 (I, J, D) = ({triple[0]:.4f}, {triple[1]:.4f}, {triple[2]:.4f}), "
                  f"err {triple_err:.1e} (tol 1e-3)")
    assert ok


def test_criterion_10_runtime(report):
    cfg = figure_preset("fig2a")
    assert (cfg.integrator.t_final, cfg.integrator.dt, cfg.output.stride) == (20.0, 0.005, 4)
    start = time.perf_counter()
    run_scenario(cfg)
    elapsed = time.perf_counter() - start
    ok = elapsed < 60
    report(10, ok, f"fig2a preset ran in {elapsed:.1f} s (target < 60 s)")
    assert ok
