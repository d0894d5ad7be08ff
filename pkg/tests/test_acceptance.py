"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line with the measured numbers.

Known limitations (kept as honest failures, not loosened):
 * criterion 1: the exact dark-doublet splitting deviates from 2*lambda by
   (G/delta)^2 ~ 3%, so the Rabi interval misses the 2% target around 8*pi;
 * criterion 4: the unequal-coupling configuration at high initial phonon
   number peaks at E_N ~ 1.03, not the quoted 0.90.
"""

import numpy as np
import pytest
from scipy.linalg import expm

from photonlink import (
    DriveCase,
    QuadratureDynamics,
    SystemSpec,
    analytic_propagator_a,
    build_mode_dynamics,
    build_quadrature_dynamics,
    coherent_state,
    effective_params,
    logarithmic_negativity,
    occupation,
    propagate,
    stability,
    steady_state,
    symplectic_eigenvalues,
    tensor,
    thermal_state,
    transfer_fidelity_closed_form,
    transfer_fidelity_exact,
    vacuum,
)
from photonlink.cli import _en_trace, _fig4_spec, _occupation_traces, ScenarioConfig

from conftest import quad_to_amps, random_physical_state


def report(num, desc, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num}: {tag} - {desc} {detail}")
    return ok


def fig2_init():
    return tensor([coherent_state(1.0 + 0.0j), thermal_state(3.0), vacuum(1)])


def test_criterion_1_rabi_oscillation():
    spec = SystemSpec()
    ts, occ = _occupation_traces(spec, 1.0 + 0.0j, 3.0, 16.0 * np.pi, 4001)
    n1 = occ[:, 0]
    lows = [
        i
        for i in range(1, len(n1) - 1)
        if n1[i] < n1[i - 1] and n1[i] < n1[i + 1] and n1[i] < 0.1
    ]
    deep, cluster = [], [lows[0]]
    for i in lows[1:]:
        if ts[i] - ts[cluster[-1]] > 3.0:
            deep.append(ts[min(cluster, key=lambda j: n1[j])])
            cluster = []
        cluster.append(i)
    deep.append(ts[min(cluster, key=lambda j: n1[j])])
    interval = deep[1] - deep[0]
    target = 8.0 * np.pi
    ok_interval = abs(interval - target) < 0.02 * target

    t0 = 4.0 * np.pi
    out = propagate(build_quadrature_dynamics(spec), fig2_init(), t0)
    n2 = occupation(out, 2)
    envelope = np.exp(-0.025 * t0)
    ok_peak = abs(n2 - envelope) < 0.03 * envelope

    ok = report(
        1,
        "Rabi interval within 2% of 8*pi and N2 peak within 3% of decay envelope",
        ok_interval and ok_peak,
        f"(interval={interval:.4f} vs {target:.4f}, N2={n2:.4f} vs {envelope:.4f})",
    )
    assert ok_peak
    assert ok_interval  # documented honest failure: deviation is ~3%


def test_criterion_2_thermal_insensitivity():
    spec = SystemSpec()
    lam = effective_params(spec).lam
    omega = spec.delta1 + 4.0 * lam
    dyn_hot = build_quadrature_dynamics(spec.with_(n_th=150.0))
    dyn_ref = build_quadrature_dynamics(spec)
    init_hot = fig2_init()
    init_ref = tensor([coherent_state(1.0 + 0.0j), vacuum(1), vacuum(1)])
    diffs = []
    # interference times across the transfer window [0, 4*pi]
    for q in range(1, 18):
        t = 2.0 * q * np.pi / omega
        n1_hot = occupation(propagate(dyn_hot, init_hot, t), 0)
        n1_ref = occupation(propagate(dyn_ref, init_ref, t), 0)
        diffs.append(abs(n1_hot - n1_ref))
    worst = max(diffs)
    ok = report(2, "N1 shift at interference times < 5e-2", worst < 5e-2,
                f"(worst={worst:.4f})")
    assert ok


def test_criterion_3_fidelity_formulas():
    spec = SystemSpec(n_th=150.0)
    alpha, n_m, t0 = 1.0 + 0.0j, 20.0, 4.0 * np.pi
    fb = transfer_fidelity_closed_form(spec, alpha, n_m, t0)
    # independent arithmetic restatement of the printed formulas
    f1_hand = 1.0 / (
        1.0
        + (1.0 / 64.0)
        * (20.0 * ((0.025 - 5e-4) * t0 / 2.0) ** 2 + 2.0 * 150.0 * 5e-4 * t0)
    )
    f2_hand = np.exp(-((1.0 * 0.025 * t0 / 2.0) ** 2))
    ok_arith = (
        abs(fb.f1_reduced - f1_hand) < 1e-6
        and abs(fb.f2 - f2_hand) < 1e-6
        and abs(f1_hand - 0.9645) < 1e-4
        and abs(f2_hand - 0.9756) < 1e-4
    )

    init = tensor([coherent_state(alpha), thermal_state(n_m), vacuum(1)])
    final = propagate(build_quadrature_dynamics(spec), init, t0)
    u = expm(-1j * build_mode_dynamics(spec).m * t0)
    phase = u[2, 0] / abs(u[2, 0])
    f_exact = transfer_fidelity_exact(final, alpha * phase, 2)
    ok_exact = abs(f_exact - fb.f) < 0.5 * (1.0 / 8.0) ** 2  # calibrated tolerance

    ok = report(
        3,
        "closed-form F1, F2 match hand evaluation; exact fidelity tracks F",
        ok_arith and ok_exact,
        f"(F1={fb.f1_reduced:.6f}, F2={fb.f2:.6f}, F={fb.f:.4f}, exact={f_exact:.4f})",
    )
    assert ok


def test_criterion_4_entanglement_peaks():
    cfg = ScenarioConfig()
    results = {}
    for key in ("dlam0", "dlam02"):
        spec = _fig4_spec(cfg, key, delta=5.0)
        for n_m in (0.0, 1e3):
            _, en = _en_trace(spec, n_m, 40.0, 2001)
            results[(key, n_m)] = float(np.max(en))
    targets = {
        ("dlam0", 0.0): 1.40,
        ("dlam0", 1e3): 1.25,
        ("dlam02", 0.0): 1.15,
        ("dlam02", 1e3): 0.90,
    }
    oks = {k: abs(results[k] - t) <= 0.05 for k, t in targets.items()}
    detail = ", ".join(
        f"{k[0]}/nm={k[1]:g}: {results[k]:.3f} vs {targets[k]:.2f}" for k in targets
    )
    report(4, "max E_N matches quoted values +/- 0.05", all(oks.values()), f"({detail})")
    assert oks[("dlam0", 0.0)]
    assert oks[("dlam0", 1e3)]
    assert oks[("dlam02", 0.0)]
    # documented honest failure: simulation gives ~1.03 for this point
    assert oks[("dlam02", 1e3)]


def test_criterion_5_peak_timing():
    cfg = ScenarioConfig()
    bad_total = 0
    peaks_total = 0
    for key in ("dlam0", "dlam02"):
        spec = _fig4_spec(cfg, key, delta=5.0)
        omega = 5.0 + 2.0 * effective_params(spec).delta_lambda
        # window covers the rise to and past the global E_N maximum (t ~ 10-11)
        ts, en = _en_trace(spec, 1e3, 12.0, 241)
        dt = ts[1] - ts[0]
        for i in range(1, len(en) - 1):
            if en[i] > en[i - 1] and en[i] > en[i + 1] and en[i] > 0.3:
                peaks_total += 1
                q = round(omega * ts[i] / (2.0 * np.pi))
                if abs(ts[i] - 2.0 * q * np.pi / omega) > dt:
                    bad_total += 1
    ok = report(
        5,
        "E_N local maxima at (delta + 2*dlam) t = 2 q pi within one grid step",
        peaks_total > 5 and bad_total == 0,
        f"({peaks_total} peaks, {bad_total} misaligned)",
    )
    assert ok


def test_criterion_6_stability():
    mismatches = 0
    for g1 in np.linspace(0.5, 2.0, 50):
        for delta in np.linspace(0.0, 20.0, 50):
            spec = SystemSpec(
                drive_case=DriveCase.RED_BLUE, g1=float(g1), g2=1.0,
                delta1=float(delta), delta2=float(delta), gamma_m=5e-4,
            )
            rep = stability(spec)
            margin = min(rep.routh_hurwitz_7a, rep.routh_hurwitz_7b)
            if abs(margin) < 1e-3:
                continue
            if rep.analytic_stable != rep.numeric_stable:
                mismatches += 1
    base = dict(drive_case=DriveCase.RED_BLUE, delta1=0.0, delta2=0.0, gamma_m=5e-4)
    corollary = (
        stability(SystemSpec(g1=1.2, g2=1.0, **base)).numeric_stable
        and stability(SystemSpec(g1=1.2, g2=1.0, **base)).analytic_stable
        and not stability(SystemSpec(g1=1.0, g2=1.2, **base)).numeric_stable
        and not stability(SystemSpec(g1=1.0, g2=1.2, **base)).analytic_stable
    )
    ok = report(
        6,
        "Routh-Hurwitz matches numeric verdict off the boundary band; delta=0 corollary",
        mismatches == 0 and corollary,
        f"({mismatches} mismatches on 50x50 grid)",
    )
    assert ok


def test_criterion_7_oracle_equivalences(rng):
    spec = SystemSpec(delta1=6.0, delta2=6.0, n_th=25.0)
    dyn = build_quadrature_dynamics(spec)
    state = fig2_init()

    # semigroup to 1e-10
    t1, t2 = 1.7, 2.6
    once = propagate(dyn, state, t1 + t2)
    twice = propagate(dyn, propagate(dyn, state, t1), t2)
    ok_semi = np.max(np.abs(once.cov - twice.cov)) < 1e-10

    # Lyapunov steady state vs t = 50/kappa propagation to 1e-6
    ss_spec = SystemSpec(
        drive_case=DriveCase.RED_BLUE, g1=np.cosh(1.0), g2=np.sinh(1.0),
        delta1=15.0, delta2=15.0, gamma_m=0.05, n_th=10.0,
    )
    ss_dyn = build_quadrature_dynamics(ss_spec)
    ss = steady_state(ss_dyn)
    prop = propagate(ss_dyn, vacuum(3), 50.0 / 0.025)
    ok_lyap = np.max(np.abs(ss.cov - prop.cov)) < 1e-6

    # mode-basis vs quadrature first moments to 1e-10
    md = build_mode_dynamics(spec)
    ok_moments = True
    for _ in range(10):
        mu0 = rng.normal(size=6)
        t = rng.uniform(0.1, 8.0)
        mu_t = expm(dyn.a * t) @ mu0
        v_t = expm(-1j * md.m * t) @ quad_to_amps(mu0)
        ok_moments &= bool(np.allclose(quad_to_amps(mu_t), v_t, atol=1e-10))

    # lossless two-mode squeezing: E_N = 2 lambda t to 1e-8
    lam = 0.25
    h = np.zeros((4, 4))
    h[0, 2] = h[2, 0] = lam
    h[1, 3] = h[3, 1] = -lam
    omega = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    tms = QuadratureDynamics(a=omega @ h, d=np.zeros((4, 4)))
    ok_tms = all(
        abs(logarithmic_negativity(propagate(tms, vacuum(2), t), 0, 1) - 2.0 * lam * t)
        < 1e-8
        for t in (0.5, 1.5, 3.0)
    )

    # physicality across 1000 randomized propagations
    specs = [
        SystemSpec(delta1=5.0, delta2=5.0, n_th=40.0),
        SystemSpec(drive_case=DriveCase.RED_BLUE, g1=1.3, g2=1.0,
                   delta1=6.0, delta2=6.0, gamma_m=2e-3, n_th=100.0),
    ]
    dyns = [build_quadrature_dynamics(s) for s in specs]
    worst_nu = np.inf
    for k in range(1000):
        st = random_physical_state(rng, 3)
        out = propagate(dyns[k % 2], st, rng.uniform(0.0, 15.0))
        worst_nu = min(worst_nu, float(np.min(symplectic_eigenvalues(out))))
    ok_phys = worst_nu >= 0.5 - 1e-9

    ok = report(
        7,
        "semigroup/Lyapunov/first-moment/TMS/physicality oracles",
        ok_semi and ok_lyap and ok_moments and ok_tms and ok_phys,
        f"(min symplectic eigenvalue {worst_nu:.12f})",
    )
    assert ok


def test_criterion_8_analytic_propagator_bound():
    def max_err(delta):
        spec = SystemSpec(delta1=delta, delta2=delta)
        md = build_mode_dynamics(spec)
        errs = [
            np.max(np.abs(analytic_propagator_a(spec, t).u - expm(-1j * md.m * t)))
            for t in np.linspace(0.0, 8.0 * np.pi, 401)
        ]
        return max(errs)

    e8 = max_err(8.0)
    e16 = max_err(16.0)
    c = 15.0  # calibrated once; dominated by the bright-mode phase drift
    ok_bound = e8 < c * (1.0 / 8.0) ** 2
    ok_scaling = e16 <= e8 / 4.0
    ok = report(
        8,
        "closed-form propagator error bounded by c (G/delta)^2 and quarter-scaling",
        ok_bound and ok_scaling,
        f"(err(8)={e8:.4f} < {c / 64.0:.4f}, err(16)={e16:.4f} <= {e8 / 4.0:.4f})",
    )
    assert ok
