"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as the
criteria execute.  Every tolerance and budget is asserted, not just printed.
"""

import math
import time

import numpy as np
import pytest

from sgb import cli
from sgb.bounds import (
    bound_corollary15_sphere,
    bound_theorem12,
    bound_theorem13,
    c_closed_form_lower,
    c_constant,
    check_corollary16_i,
    compute_report,
    eta_of_delta,
)
from sgb.comparison import h_first_zero, kasue_f, kasue_h, solve_comparison_ode
from sgb.eigen import dense_eig_oracle, smallest_nonzero_eig
from sgb.families import product_torus_data
from sgb.mesh import (
    cotan_stiffness,
    estimate_curvature,
    estimate_rolling_radius,
    lumped_mass,
    mesh_geodesic_sphere,
    mesh_product_torus,
)
from sgb.params import CurvatureBounds, HypersurfaceData, check_thm13_condition

from oracles import eta_fixed_point, f_proof_supremum


def report(num, ok, desc, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f"  [{detail}]" if detail else ""
    print(f"{status}  criterion {num:2d}: {desc}{suffix}")
    assert ok, f"criterion {num} failed: {desc} {suffix}"


def discrete_lambda1(family, param, resolution, tol=1e-8):
    if family == "sphere":
        m = mesh_geodesic_sphere(param, resolution)
    else:
        m = mesh_product_torus(param, resolution, resolution)
    lam, _ = smallest_nonzero_eig(cotan_stiffness(m), lumped_mass(m), tol=tol)
    return lam


@pytest.fixture(scope="module")
def spectrum_runs():
    """Discrete eigenvalues for the four reference runs, with timings."""
    runs = {}
    for family, param, res, exact in [
        ("sphere", math.pi / 2, 5, 2.0),
        ("sphere", math.pi / 3, 5, 2.0 / math.sin(math.pi / 3) ** 2),
        ("torus", 1 / math.sqrt(2), 192, 2.0),
        ("torus", 0.6, 192, 1.5625),
    ]:
        t0 = time.perf_counter()
        lam = discrete_lambda1(family, param, res)
        runs[(family, param)] = (lam, exact, time.perf_counter() - t0)
    return runs


def test_criterion_01_choi_wang_reduction():
    t0 = time.perf_counter()
    rng = np.random.default_rng(101)
    ok = True
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        k = float(rng.uniform(0.1, 8.0))
        K = float(rng.uniform(0.1, 8.0))
        S = float(rng.uniform(1e-3, 8.0))
        R = float(rng.uniform(0.05, 0.95)) * math.pi / (2 * math.sqrt(K))
        cb = CurvatureBounds(n=n, k=k, K=K)
        h0 = HypersurfaceData(H_sigma=0.0, S_sigma=S, roll_R=R)
        ok = ok and bound_theorem12(cb, h0) == k / 2 == bound_theorem13(cb, h0)
    dt = time.perf_counter() - t0
    report(1, ok and dt < 1.0,
           "H=0 collapses both bounds to k/2 bit-identically (1000 draws)",
           f"{dt:.3f}s < 1s")


def test_criterion_02_sphere_identity():
    t0 = time.perf_counter()
    rng = np.random.default_rng(102)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        S = float(rng.uniform(1e-3, 9.0))
        H = float(rng.uniform(0.0, 1.0)) * math.sqrt(n * S)
        a = bound_corollary15_sphere(n, H, S)
        b = bound_theorem13(
            CurvatureBounds.unit_sphere(n),
            HypersurfaceData(H_sigma=H, S_sigma=S, roll_R=1.0),
        )
        worst = max(worst, abs(a - b) / max(abs(b), 1e-300))
    dt = time.perf_counter() - t0
    report(2, worst <= 1e-12 and dt < 1.0,
           "sphere bound equals the closed-form bound at k=n, K=1 (1000 draws)",
           f"max rel diff {worst:.2e} <= 1e-12, {dt:.3f}s < 1s")


def test_criterion_03_parametrization_identity():
    t0 = time.perf_counter()
    rng = np.random.default_rng(103)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 6))
        K = float(rng.uniform(0.3, 5.0))
        S = float(rng.uniform(0.3, 5.0))
        r = float(rng.uniform(0.1, 1.0))
        c = c_constant(n, K, S, r)
        sup = f_proof_supremum(n, K, S, r)
        worst = max(worst, abs(c - sup) / max(1.0, abs(c)))
    dt = time.perf_counter() - t0
    report(3, worst <= 1e-8 and dt < 10.0,
           "C(r) equals the distance-side supremum of f_proof (200 draws)",
           f"max rel diff {worst:.2e} <= 1e-8, {dt:.2f}s < 10s")


def test_criterion_04_domination():
    t0 = time.perf_counter()
    rng = np.random.default_rng(104)
    ok = True
    for _ in range(200):
        n = int(rng.integers(1, 6))
        k = float(rng.uniform(0.2, 8.0))
        K = float(rng.uniform(0.3, 5.0))
        S = float(rng.uniform(0.2, 5.0))
        t_R = float(rng.uniform(0.5, 3.0))
        cb = CurvatureBounds(n=n, k=k, K=K)
        R = math.atan(t_R * math.sqrt(K / S)) / math.sqrt(K)
        r = min(t_R, 1.0)
        ok = ok and c_constant(n, K, S, r) >= c_closed_form_lower(n, K, S) - 1e-9
        H = float(rng.uniform(0.0, 1.0)) * math.sqrt(n * S)
        h = HypersurfaceData(H_sigma=H, S_sigma=S, roll_R=R)
        assert check_thm13_condition(cb, h)
        ok = ok and bound_theorem12(cb, h) >= bound_theorem13(cb, h) - 1e-8
    dt = time.perf_counter() - t0
    report(4, ok and dt < 10.0,
           "optimized constant dominates the closed form for r >= 1/2 (200 draws)",
           f"{dt:.2f}s < 10s")


def test_criterion_05_ode_oracle():
    t0 = time.perf_counter()
    worst = 0.0
    for K in (1.0, 2.3):
        sK = math.sqrt(K)
        cases = [
            (1.0, 0.0, math.pi / (2 * sK), lambda t: math.cos(sK * t)),
            (0.0, 1.0, math.pi / sK, lambda t: kasue_f(K, t)),
            (1.0, -math.sqrt(2.0), h_first_zero(K, 2.0),
             lambda t: kasue_h(K, -math.sqrt(2.0), t)),
        ]
        for y0, y0p, first_zero, exact in cases:
            sol = solve_comparison_ode(lambda t: K, y0, y0p,
                                       T=0.9 * first_zero, step=1e-3)
            ref = np.array([exact(t) for t in sol.grid])
            worst = max(worst, float(np.abs(sol.values - ref).max()))
    dt = time.perf_counter() - t0
    report(5, worst <= 1e-8 and dt < 1.0,
           "RK4 at step 1e-3 matches the closed comparison forms",
           f"sup err {worst:.2e} <= 1e-8, {dt:.3f}s < 1s")


def test_criterion_06_spectrum_convergence(spectrum_runs):
    ok = True
    details = []
    for (family, param), (lam, exact, dt) in spectrum_runs.items():
        rel = abs(lam - exact) / exact
        ok = ok and rel < 0.01 and dt < 60.0
        details.append(f"{family}({param:.4g}): rel {rel:.2e}, {dt:.1f}s")
    report(6, ok, "discrete spectra within 1% of analytic values",
           "; ".join(details))


def test_criterion_07_yau_equality_witness(spectrum_runs):
    lam, _, _ = spectrum_runs[("torus", 1 / math.sqrt(2))]
    fp = product_torus_data(1 / math.sqrt(2))
    rep = compute_report(fp.curvature_bounds(), fp.hypersurface_data(),
                         lambda1_ref=lam)
    bounds_all = [rep.bound_thm12, rep.bound_thm13, rep.bound_cor14,
                  rep.bound_cor15, rep.bound_cw]
    ok = (
        1.98 <= lam <= 2.02
        and all(b <= 1.0 + 1e-12 for b in bounds_all)
        and abs(rep.best_applicable - 1.0) <= 1e-12
        and rep.margin >= lam - 1.0 - 1e-12
    )
    report(7, ok,
           "Clifford torus: lambda1 in [1.98, 2.02], bounds <= 1 attained at k/2",
           f"lambda1 {lam:.6f}, best bound {rep.best_applicable:.12f}")


def test_criterion_08_inequality_sweep(tmp_path):
    t0 = time.perf_counter()
    sweeps = [
        ("torus", 0.5, 0.72, 64),
        ("sphere", 1.1, math.pi / 2, 4),
    ]
    ok = True
    checked = 0
    for family, lo, hi, res in sweeps:
        out = tmp_path / f"{family}.csv"
        code = cli.main([
            "sweep", "--family", family, "--param-min", repr(lo),
            "--param-max", repr(hi), "--steps", "20",
            "--resolution", str(res), "--output", str(out),
        ])
        ok = ok and code == 0
        lines = out.read_text().strip().splitlines()
        header = lines[0].split(",")
        for line in lines[1:]:
            row = dict(zip(header, line.split(",")))
            if row["applicable_thm13"] != "true":
                continue
            lam = float(row["lambda1_discrete"])
            limit = lam + 3 * 0.01 * lam
            for col in ("bound_thm12", "bound_thm13", "bound_cor14",
                        "bound_cor15", "bound_cw"):
                ok = ok and float(row[col]) <= limit
                checked += 1
    dt = time.perf_counter() - t0
    report(8, ok and dt < 900.0,
           "sweeps over both families: no applicable bound exceeds "
           "lambda1_disc + 3*tol",
           f"{checked} bound checks, {dt:.0f}s < 900s")


def test_criterion_09_eigensolver_oracle_equivalence():
    t0 = time.perf_counter()
    worst = 0.0
    for build in (
        lambda: mesh_geodesic_sphere(math.pi / 2, 2),
        lambda: mesh_product_torus(0.6, 12, 12),
    ):
        m = build()
        L, M = cotan_stiffness(m), lumped_mass(m)
        lam, _ = smallest_nonzero_eig(L, M, tol=1e-10)
        vals, _ = dense_eig_oracle(L, M)
        worst = max(worst, abs(vals[1] - lam) / lam)
    dt = time.perf_counter() - t0
    report(9, worst <= 1e-8 and dt < 30.0,
           "sparse iteration agrees with the dense Jacobi oracle",
           f"max rel diff {worst:.2e} <= 1e-8, {dt:.1f}s < 30s")


def test_criterion_10_estimators():
    t0 = time.perf_counter()
    ok = True
    details = []

    def rel_err(value, exact):
        return abs(value - exact) / abs(exact)

    # finest configured resolutions; both estimators run on the same meshes
    m = mesh_geodesic_sphere(math.pi / 3, 6)
    est = estimate_curvature(m)
    worst = max(rel_err(est.H_max, 2 / math.sqrt(3)), rel_err(est.S_max, 2 / 3))
    ok = ok and worst <= 0.05
    roll_rel = rel_err(estimate_rolling_radius(m, "inner"), math.pi / 3)
    ok = ok and roll_rel <= 0.02
    details.append(f"sphere: curv {worst:.1e}, roll {roll_rel:.1e}")

    m = mesh_geodesic_sphere(math.pi / 2, 5)
    est = estimate_curvature(m)
    ok = ok and est.S_max <= 5e-2
    for side in ("inner", "outer"):
        ok = ok and rel_err(estimate_rolling_radius(m, side), math.pi / 2) <= 0.02
    details.append(f"equator: S {est.S_max:.1e}, roll both sides")

    m = mesh_product_torus(1 / math.sqrt(2), 512, 512)
    est = estimate_curvature(m)
    ok = ok and rel_err(est.S_max, 2.0) <= 0.05 and est.H_max <= 0.05
    roll_rel = rel_err(estimate_rolling_radius(m, "inner"), math.pi / 4)
    ok = ok and roll_rel <= 0.02
    details.append(f"clifford: curv {rel_err(est.S_max, 2.0):.1e}, roll {roll_rel:.1e}")

    m = mesh_product_torus(0.6, 512, 512)
    est = estimate_curvature(m)
    worst = max(rel_err(est.H_max, 7 / 12), rel_err(est.S_max, 337 / 144))
    ok = ok and worst <= 0.05
    roll_rel = rel_err(estimate_rolling_radius(m, "outer"), 0.6435011087932844)
    ok = ok and roll_rel <= 0.02
    details.append(f"torus: curv {worst:.1e}, roll {roll_rel:.1e}")

    # reference resolutions from the estimator contracts
    est = estimate_curvature(mesh_geodesic_sphere(math.pi / 3, 5))
    ok = ok and rel_err(est.H_max, 2 / math.sqrt(3)) <= 0.05
    est = estimate_curvature(mesh_product_torus(0.6, 192, 192))
    ok = ok and rel_err(est.S_max, 337 / 144) <= 0.05

    dt = time.perf_counter() - t0
    report(10, ok and dt < 300.0,
           "curvature within 5%, rolling radius within 2%",
           "; ".join(details) + f", {dt:.0f}s < 300s")


def test_criterion_11_eta_pinching():
    t0 = time.perf_counter()
    bis = eta_of_delta(2, 1.0)
    fix = eta_fixed_point(2, 1.0)
    agree = abs(bis - fix)
    values = [eta_of_delta(2, d) for d in (0.25, 0.5, 1.0, 2.0, 4.0)]
    increasing = all(a < b for a, b in zip(values, values[1:]))
    dt = time.perf_counter() - t0
    report(11, agree <= 1e-6 and increasing and dt < 1.0,
           "eta(2,1) agrees across bisection and fixed point; eta increasing",
           f"|diff| {agree:.2e} <= 1e-6, {dt:.3f}s < 1s")


def test_criterion_12_volume_pinching_check():
    t0 = time.perf_counter()
    vol = 2 * math.pi**2
    rep = check_corollary16_i(2, vol, 2.0 * vol, 0.0, 2.0)
    clifford_ok = (
        rep.applicable
        and abs(rep.lhs - 2.0) <= 1e-12
        and abs(rep.rhs - (1.0 - 4.0 / math.pi**2)) <= 1e-12
        and rep.slack > 0.0
    )
    geo = check_corollary16_i(2, 4 * math.pi, 0.0, 0.0, 0.0)
    geodesic_ok = (
        geo.applicable and abs(geo.lhs) <= 1e-12 and abs(geo.rhs) <= 1e-12
        and geo.equality
    )
    dt = time.perf_counter() - t0
    report(12, clifford_ok and geodesic_ok and dt < 1.0,
           "volume-pinching check: Clifford slack positive, equator equality",
           f"clifford slack {rep.slack:.4f}, {dt:.3f}s < 1s")
