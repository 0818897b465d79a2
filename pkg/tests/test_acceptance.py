"""Acceptance suite: eleven figure-level and oracle-level criteria.

Each test prints exactly one verdict line ("criterion NN: PASS/FAIL - ...")
before asserting, so a bare pytest run documents the scoreboard. The preset
grids are solved once per session (see conftest.preset_runs).
"""

import math
import time

import numpy as np

from optocorr import (
    LyapunovProblem,
    ModelParams,
    build_diffusion,
    build_drift,
    check_physical,
    entropy_f,
    figure_preset,
    find_threshold,
    gaussian_discord,
    integrate_covariance,
    pair_invariants,
    reduce_pair,
    run_sweep,
    simon_eta_minus,
    solve_lyapunov,
    squeeze_moments,
    temperature_for_occupancy,
)

TWO_PI = 2.0 * math.pi
PAIRS = ("mo1", "mo2", "o1o2")


def _verdict(num: int, ok: bool, detail: str):
    print(f"criterion {num:02d}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


def _random_model(rng) -> ModelParams:
    return ModelParams.from_squeeze(
        kappa1=TWO_PI * rng.uniform(100e3, 400e3),
        kappa2=TWO_PI * rng.uniform(100e3, 400e3),
        gamma=TWO_PI * rng.uniform(100.0, 5000.0),
        C1=rng.uniform(0.0, 100.0),
        C2=rng.uniform(0.0, 100.0),
        n_th=10.0 ** rng.uniform(-4.0, 2.0),
        r=rng.uniform(0.0, 2.0),
    )


def test_criterion_01_dual_route_consistency():
    # 100 random parameter points: solver residual <= 1e-10 and agreement
    # with the independent quadrature oracle <= 1e-6 relative, under 5 s
    rng = np.random.default_rng(20260819)
    start = time.perf_counter()
    worst_res, worst_rel = 0.0, 0.0
    for _ in range(100):
        mp = _random_model(rng)
        p = LyapunovProblem(build_drift(mp), build_diffusion(mp))
        V = solve_lyapunov(p)
        res = float(np.linalg.norm(p.drift @ V + V @ p.drift.T + p.diffusion)
                    / np.linalg.norm(p.diffusion))
        rel = float(np.linalg.norm(integrate_covariance(p) - V) / np.linalg.norm(V))
        worst_res = max(worst_res, res)
        worst_rel = max(worst_rel, rel)
    elapsed = time.perf_counter() - start
    ok = worst_res <= 1e-10 and worst_rel <= 1e-6 and elapsed < 5.0
    _verdict(1, ok, f"100 points: max residual {worst_res:.2e} (<=1e-10), "
                    f"max oracle gap {worst_rel:.2e} (<=1e-6), {elapsed:.2f}s (<5s)")


def test_criterion_02_decoupled_closed_form():
    kappa, gamma, n_th = 2.0, 0.7, 0.3
    worst_entry, worst_eta = 0.0, 0.0
    for r in (0.0, 0.5, 1.0, 2.0):
        mp = ModelParams.from_squeeze(kappa, kappa, gamma, 0.0, 0.0, n_th, r)
        V = solve_lyapunov(LyapunovProblem(build_drift(mp), build_diffusion(mp)))
        N, M = squeeze_moments(r)
        expected = np.diag([N + 0.5] * 4 + [n_th + 0.5] * 2)
        expected[0, 2] = expected[2, 0] = M
        expected[1, 3] = expected[3, 1] = -M
        worst_entry = max(worst_entry, float(np.abs(V - expected).max()))
        eta = simon_eta_minus(pair_invariants(reduce_pair(V, "o1o2")))
        worst_eta = max(worst_eta, abs(eta - 0.5 * math.exp(-2.0 * r)))
    ok = worst_entry <= 1e-12 and worst_eta <= 1e-10
    _verdict(2, ok, f"decoupled V entry error {worst_entry:.2e} (<=1e-12), "
                    f"eta vs exp(-2r)/2 error {worst_eta:.2e} (<=1e-10)")


def test_criterion_03_pure_state_discord_identity():
    worst = 0.0
    for r in (0.5, 1.0, 2.0):
        mp = ModelParams.from_squeeze(2.0, 2.0, 0.7, 0.0, 0.0, 0.3, r)
        V = solve_lyapunov(LyapunovProblem(build_drift(mp), build_diffusion(mp)))
        d = gaussian_discord(reduce_pair(V, "o1o2"))
        expected = entropy_f(math.sinh(r) ** 2 + 0.5)
        worst = max(worst, abs(d - expected))
    ok = worst <= 1e-8
    _verdict(3, ok, f"pure squeezed pair: |discord - f(sinh^2 r + 1/2)| "
                    f"max {worst:.2e} (<=1e-8)")


def test_criterion_04_no_entanglement_without_squeezing(preset_runs):
    spec, reports = preset_runs["fig2"][0]
    assert spec.label == "r0"
    low = min(rep.eta[pair] for rep in reports for pair in PAIRS)
    ok = low >= 0.5 - 1e-9
    _verdict(4, ok, f"fig2 r=0: min eta over all pairs and T {low:.12f} (>=0.5-1e-9)")


def test_criterion_05_entanglement_survival_temperature():
    start = time.perf_counter()
    spec = figure_preset("fig2")[3]
    assert spec.label == "r0.5"
    t_c = find_threshold(spec, "o1o2", "eta-crossing")
    elapsed = time.perf_counter() - start
    ok = 5.2e-3 <= t_c <= 7.8e-3 and elapsed < 10.0
    _verdict(5, ok, f"fig2 r=0.5 o1o2 crossing T_c = {t_c * 1e3:.3f} mK "
                    f"(in [5.2, 7.8]), {elapsed:.2f}s (<10s)")


def _single_interior_extremum(ys: np.ndarray, kind: str) -> tuple:
    """(ok, index): exactly one sign change of the first differences, in the
    right direction, with the extremum strictly inside the grid."""
    d = np.diff(ys)
    tol = 1e-9 * float(np.abs(ys).max())
    sgn = np.where(d > tol, 1, np.where(d < -tol, -1, 0))
    sgn = sgn[sgn != 0]
    if len(sgn) == 0:
        return False, -1
    flips = int(np.count_nonzero(np.diff(sgn) != 0))
    if kind == "min":
        k = int(np.argmin(ys))
        ok = flips == 1 and sgn[0] == -1 and sgn[-1] == 1
    else:
        k = int(np.argmax(ys))
        ok = flips == 1 and sgn[0] == 1 and sgn[-1] == -1
    return ok and 0 < k < len(ys) - 1, k


def test_criterion_06_resonance_in_squeezing(preset_runs):
    bad = []
    for spec, reports in preset_runs["fig3"]:
        xs = spec.grid()
        for pair in PAIRS:
            etas = np.array([rep.eta[pair] for rep in reports])
            ok_min, k_min = _single_interior_extremum(etas, "min")
            if not ok_min:
                bad.append(f"{spec.label}/{pair} eta (argmin r={xs[k_min]:.3f})")
            discords = np.array([rep.discord[pair] for rep in reports])
            ok_max, k_max = _single_interior_extremum(discords, "max")
            if not ok_max:
                bad.append(f"{spec.label}/{pair} discord (argmax r={xs[k_max]:.3f})")
    ok = not bad
    detail = ("every fig3/fig6 curve has one interior eta minimum and one "
              "interior discord maximum" if ok else f"violations: {bad}")
    _verdict(6, ok, detail)


def test_criterion_07_discord_robustness(preset_runs):
    # first clause: no sudden death anywhere on the fig5 grids
    min_discord = math.inf
    for spec, reports in preset_runs["fig2"]:
        for rep in reports:
            min_discord = min(min_discord, *(rep.discord[p] for p in PAIRS))
    positive = min_discord > 0.0

    # second clause: optical discord non-decreasing on T in [5 mK, 0.1 K]
    dips = []
    for spec, reports in preset_runs["fig2"]:
        xs = spec.grid()
        window = xs >= 5e-3
        ys = np.array([rep.discord["o1o2"] for rep in reports])[window]
        worst = float(np.diff(ys).min())
        if worst <= -1e-12:
            ts = xs[window]
            k = int(np.argmin(np.diff(ys)))
            dips.append(f"{spec.label}: step {worst:.3e} at T={ts[k]:.4g}K")
    ok = positive and not dips
    detail = f"min discord {min_discord:.3e} (>0)"
    if dips:
        detail += f"; o1o2 discord NOT monotone on [5mK, 0.1K]: {dips}"
    else:
        detail += "; o1o2 discord non-decreasing on [5mK, 0.1K] for every r"
    _verdict(7, ok, detail)


def test_criterion_08_hybrid_discord_peak_location():
    start = time.perf_counter()
    out = []
    bad = []
    for spec in figure_preset("fig7"):
        xs = spec.grid()
        reports = run_sweep(spec)
        for pair in ("mo1", "mo2"):
            peak = float(xs[int(np.argmax([rep.discord[pair] for rep in reports]))])
            out.append(f"{spec.label}/{pair}@{peak:.0f}")
            if not 920.0 <= peak <= 1130.0:
                bad.append(f"{spec.label}/{pair} argmax C1={peak:.1f}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30.0
    detail = f"fig7 hybrid discord peaks [{', '.join(out)}], {elapsed:.1f}s (<30s)"
    if bad:
        detail += f"; outside [920, 1130]: {bad}"
    _verdict(8, ok, detail)


def test_criterion_09_discord_above_one_implies_entangled(preset_runs):
    checked, violations = 0, []
    for family in ("fig2", "fig3", "fig4"):
        for spec, reports in preset_runs[family]:
            for rep in reports:
                for pair in PAIRS:
                    if rep.discord[pair] > 1.0:
                        checked += 1
                        if not rep.eta[pair] < 0.5:
                            violations.append(
                                (family, spec.label, rep.value, pair, rep.eta[pair]))
    ok = checked > 0 and not violations
    _verdict(9, ok, f"{checked} grid points with discord > 1, "
                    f"{len(violations)} without entanglement (need 0)")


def test_criterion_10_physicality_everywhere():
    x_rows, y_rows = (0, 2, 4), (1, 3, 5)
    n_points, worst_sympl, worst_cross = 0, math.inf, 0.0
    for family in ("fig2", "fig3", "fig4"):
        for spec in figure_preset(family):
            for x in spec.grid():
                mp = spec.model_at(float(x))
                V = solve_lyapunov(LyapunovProblem(build_drift(mp), build_diffusion(mp)))
                report = check_physical(V)
                worst_sympl = min(worst_sympl, report.min_symplectic)
                assert report.passed, (family, spec.label, x, report)
                cross = float(np.abs(V[np.ix_(x_rows, y_rows)]).max())
                worst_cross = max(worst_cross, cross / np.linalg.norm(V))
                n_points += 1
    ok = worst_sympl >= 0.5 - 1e-9 and worst_cross < 1e-12
    _verdict(10, ok, f"{n_points} solved points: min symplectic eigenvalue "
                     f"{worst_sympl:.10f} (>=0.5-1e-9), max XY cross-block "
                     f"{worst_cross:.2e} (<1e-12 relative)")


def test_criterion_11_thermal_conversion_reference_points():
    omega_m = TWO_PI * 947e3
    t1 = temperature_for_occupancy(1e-3, omega_m)
    t2 = temperature_for_occupancy(1e-2, omega_m)
    err1 = abs(t1 - 6.5e-6) / 6.5e-6
    err2 = abs(t2 - 9.8e-6) / 9.8e-6
    ok = err1 <= 0.03 and err2 <= 0.03
    _verdict(11, ok, f"T(n=1e-3) = {t1 * 1e6:.3f} uK vs 6.5 ({err1:.1%}), "
                     f"T(n=1e-2) = {t2 * 1e6:.3f} uK vs 9.8 ({err2:.1%}), "
                     f"both within 3%")
