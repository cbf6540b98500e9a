"""End-to-end acceptance runs: one test and one printed verdict line per claim.

The reference run shared by most criteria is the 2:1 ellipse at n = 256 with
the order-4 stencil (see conftest).  Derived constants used below:

* initial area 2*pi, so the limit circle has radius sqrt(2) and the limit
  curvature and lambda are 1/sqrt(2) and 1/2;
* initial length 8*E(3/4) = 9.688448...;
* decay-rate guarantee -pi/(A*L(0)) = -0.0516...;
* curvature lower-bound rate mu = pi/A(0) + 1 = 3/2.
"""

import numpy as np
import pytest

import curveflow as cf
from curveflow import cli, diagnostics as dg


def conclude(num, name, ok, detail=""):
    print(f"criterion {num:2d} [{name}]: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"criterion {num} ({name}) {detail}"


def test_criterion_01_circle_equilibrium():
    grid = cf.make_theta_grid(256)
    profile = cf.builtin_shape(cf.Circle(1.0), grid)
    cfg = cf.StepperConfig(t_max=1e9, max_steps=10_000,
                           stop_uniformity=0.0, stop_deficit=0.0)
    traj = cf.run(profile, cfg, sample_interval=0.05)
    assert traj.samples[-1][0].step_count == 10_000
    worst_kappa = max(float(np.max(np.abs(s.profile.kappa - 1.0)))
                      for s, _ in traj.samples)
    worst_length = max(abs(s.l_ode - 2 * np.pi) for s, _ in traj.samples)
    worst_deficit = max(
        cf.length(s.profile) ** 2 - 4 * np.pi * cf.spectral_area(s.profile)
        for s, _ in traj.samples)
    ok = worst_kappa <= 1e-10 and worst_length <= 1e-10 and worst_deficit <= 1e-12
    conclude(1, "circle equilibrium", ok,
             f"|kappa-1|={worst_kappa:.2e} |L-2pi|={worst_length:.2e} "
             f"deficit={worst_deficit:.2e}")


def test_criterion_02_area_conservation(ellipse_rows):
    area0 = ellipse_rows[0].area
    drift = max(abs(r.area / area0 - 1.0) for r in ellipse_rows)
    conclude(2, "area conservation", drift <= 1e-6, f"max drift={drift:.2e}")


def test_criterion_03_length_and_lambda_monotone(ellipse_rows, ellipse_report):
    verdicts = {v.claim_id: v for v in ellipse_report.verdicts}
    terminal_gap = abs(ellipse_rows[-1].length - 2 * np.pi * np.sqrt(2.0))
    ok = (verdicts["length_monotone"].passed
          and verdicts["lambda_monotone"].passed
          and terminal_gap <= 1e-3)
    conclude(3, "length/lambda monotone", ok,
             f"terminal |L - 2 pi sqrt(2)|={terminal_gap:.2e}")


def test_criterion_04_deficit_decay(ellipse_rows, ellipse_report):
    verdicts = {v.claim_id: v for v in ellipse_report.verdicts}
    slope = dg.decay_rate([(r.t, r.deficit) for r in ellipse_rows])
    bound = -np.pi / (ellipse_rows[0].area * ellipse_rows[0].length) + 1e-3
    ok = (verdicts["deficit_monotone"].passed and slope is not None
          and slope <= bound)
    conclude(4, "deficit decay", ok, f"rate={slope:.4f} bound={bound:.4f}")


def test_criterion_05_lambda_bound_and_limit(ellipse_rows):
    lam_max = max(r.lam for r in ellipse_rows)
    terminal_gap = abs(ellipse_rows[-1].lam - 0.5)
    ok = lam_max <= 0.5 * (1 + 1e-6) and terminal_gap <= 1e-4
    conclude(5, "lambda bound/limit", ok,
             f"max lambda={lam_max:.8f} terminal gap={terminal_gap:.2e}")


def test_criterion_06_curvature_lower_bound(ellipse_rows):
    kmin0 = ellipse_rows[0].kappa_min
    margin = min(r.kappa_min - kmin0 * np.exp(-1.5 * r.t) * (1 - 1e-3)
                 for r in ellipse_rows)
    conclude(6, "curvature lower bound", margin >= 0.0, f"margin={margin:.2e}")


def test_criterion_07_convergence_to_circle(ellipse_trajectory, ellipse_rows,
                                            ellipse_report):
    verdicts = {v.claim_id: v for v in ellipse_report.verdicts}
    final = ellipse_trajectory.samples[-1][0]
    kappa_gap = float(np.max(np.abs(final.profile.kappa - 2.0**-0.5)))
    radii_gap = max(abs(ellipse_rows[-1].r_in - np.sqrt(2.0)),
                    abs(ellipse_rows[-1].r_out - np.sqrt(2.0)))
    ok = (kappa_gap <= 1e-4 and verdicts["sobolev_bounded"].passed
          and radii_gap <= 1e-3)
    conclude(7, "C0/C1 convergence", ok,
             f"kappa gap={kappa_gap:.2e} radii gap={radii_gap:.2e}")


def test_criterion_08_inequality_monitors():
    rng = np.random.default_rng(20260824)
    sizes = (128, 256, 512)
    grids = {n: cf.make_theta_grid(n) for n in sizes}
    worst = np.inf
    for i in range(1000):
        n = sizes[rng.integers(0, len(sizes))]
        ks = sorted(set(rng.integers(2, 6, size=rng.integers(1, 5)).tolist()))
        raw = [(k, rng.uniform(-1, 1), rng.uniform(-1, 1)) for k in ks]
        budget = sum((k * k - 1) * np.hypot(a, b) for k, a, b in raw)
        scale = rng.uniform(0.2, 0.8) / budget
        spec = cf.FourierShape(1.0, tuple((k, a * scale, b * scale)
                                          for k, a, b in raw))
        profile = cf.builtin_shape(spec, grids[n])
        poly = cf.reconstruct(profile)
        res = cf.inequality_residuals(profile, poly, seed=i)
        big_l = cf.length(profile)
        big_a = cf.spectral_area(profile)
        worst = min(worst,
                    res.gage / (np.pi * big_l / big_a),
                    res.pan_yang / (big_l**2 / np.pi),
                    res.isoperimetric / big_l**2,
                    res.bonnesen / big_l**2)
        assert cf.median_curvature(profile) < big_l / big_a
        # independent double-loop oracle, must agree bit for bit
        kappa = profile.kappa
        tiled = np.concatenate([kappa, kappa])
        oracle = max(float(np.min(tiled[j:j + n // 2])) for j in range(n))
        assert cf.median_curvature(profile) == oracle
    conclude(8, "inequality monitors", worst >= -1e-8,
             f"worst scaled residual={worst:.2e} over 1000 shapes")


def test_criterion_09_closing_condition(ellipse_trajectory, ellipse_rows):
    worst_residual = max(r.closing_residual for r in ellipse_rows)
    worst_closure = max(cf.reconstruct(s.profile, s.anchor).closure_error
                        for s, _ in ellipse_trajectory.samples)
    ok = worst_residual <= 1e-8 and worst_closure <= 1e-8
    conclude(9, "closing condition", ok,
             f"residual={worst_residual:.2e} closure={worst_closure:.2e}")


def test_criterion_10_scheme_order():
    # fixed-step refinement study on a mild ellipse, far enough past the
    # transient that the profile differences have saturated
    results = {}
    for i, n in enumerate((128, 256, 512)):
        grid = cf.make_theta_grid(n)
        profile = cf.builtin_shape(cf.Ellipse(1.2, 1.0), grid)
        cfg = cf.StepperConfig(t_max=3.0, stencil_order=2, dt=5e-5 / 2**i,
                               stop_uniformity=0.0, stop_deficit=0.0)
        traj = cf.run(profile, cfg, sample_interval=3.0)
        last = traj.samples[-1][0]
        results[n] = (last.profile.kappa,
                      abs(last.l_ode - cf.length(last.profile)))
    coarse = np.max(np.abs(results[128][0] - results[256][0][::2]))
    fine = np.max(np.abs(results[256][0] - results[512][0][::2]))
    shrink1 = results[128][1] / results[256][1]
    shrink2 = results[256][1] / results[512][1]
    ok = coarse <= 4.0 * fine and shrink1 >= 3.0 and shrink2 >= 3.0
    conclude(10, "scheme order", ok,
             f"profile ratio={coarse / fine:.5f} gap shrink={shrink1:.3f},"
             f"{shrink2:.3f}")


def test_criterion_11_reproducibility(tmp_path):
    config = """
n = 256
seed = 3
output_dir = "{out}"

[shape]
kind = "ellipse"
a = 2.0
b = 1.0

[stepper]
stencil_order = 4
t_max = 1.0
"""
    digests = []
    for tag in ("first", "second"):
        out = tmp_path / tag
        path = tmp_path / f"{tag}.toml"
        path.write_text(config.format(out=out), encoding="utf-8")
        code = cli.main(["run", "--config", str(path)])
        files = {f.name: f.read_bytes() for f in sorted(out.iterdir())}
        digests.append((code, files))
    (code_a, files_a), (code_b, files_b) = digests
    ok = code_a == code_b and files_a == files_b
    conclude(11, "reproducibility", ok,
             f"{len(files_a)} artifacts compared byte-for-byte")
