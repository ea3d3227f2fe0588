"""Command-line pipeline: direct bound evaluation (``bound``), mesh-backed
verification of single family members (``verify``), parameter sweeps with CSV
and optional figure output (``sweep``), and the pinching constant (``eta``).

Exit codes: 0 success, 1 inequality violation, 2 validation failure,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, fields

from . import bounds, eigen, families, mesh
from .errors import (
    ConvergenceError,
    DeflationError,
    DegenerateError,
    DomainError,
    FitError,
    GeometryError,
    IllConditionedError,
    NotApplicableError,
    OrientationError,
    SizeError,
    StepError,
    ValidationError,
)

CSV_COLUMNS = [
    "family",
    "param",
    "n",
    "k",
    "K",
    "H_sigma",
    "S_sigma",
    "roll_R",
    "r",
    "C_r",
    "bound_thm12",
    "bound_thm13",
    "bound_cor14",
    "bound_cor15",
    "bound_cw",
    "applicable_thm13",
    "lambda1_analytic",
    "lambda1_discrete",
    "margin",
]

CONFIG_ENV = "SGB_CONFIG"


@dataclass
class Config:
    grid_points: int = 4096
    golden_tol: float = 1e-9
    ode_step: float = 1e-3
    eig_tol: float = 1e-8
    eig_seed: int = 12345
    iter_cap: int = 5000


_CONFIG_TYPES = {
    "grid_points": int,
    "golden_tol": float,
    "ode_step": float,
    "eig_tol": float,
    "eig_seed": int,
    "iter_cap": int,
}


def _parse_config_file(path: str) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or not key or not value:
                raise ValidationError(f"{path}:{lineno}: expected 'key = value'")
            if key not in _CONFIG_TYPES:
                raise ValidationError(f"{path}:{lineno}: unknown config key {key!r}")
            try:
                values[key] = _CONFIG_TYPES[key](value)
            except ValueError as exc:
                raise ValidationError(f"{path}:{lineno}: bad value for {key}") from exc
    return values


def resolve_config(args: argparse.Namespace) -> Config:
    """Defaults, then config file (--config or $SGB_CONFIG), then flags."""
    cfg = Config()
    path = args.config or os.environ.get(CONFIG_ENV)
    if path:
        for key, value in _parse_config_file(path).items():
            setattr(cfg, key, value)
    for f in fields(Config):
        flag = getattr(args, f.name, None)
        if flag is not None:
            setattr(cfg, f.name, flag)
    return cfg


def fmt(x) -> str:
    """12 significant digits, '.' decimal separator, locale-independent."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    return "%.12g" % x


def _family_point(family: str, param: float) -> families.FamilyPoint:
    if family == families.SPHERE:
        return families.geodesic_sphere_data(param)
    if family == families.TORUS:
        return families.product_torus_data(param)
    raise ValidationError(f"unknown family {family!r}")


def _build_mesh(family: str, param: float, resolution: int) -> mesh.TriMesh:
    if family == families.SPHERE:
        return mesh.mesh_geodesic_sphere(param, resolution)
    return mesh.mesh_product_torus(param, resolution, resolution)


def evaluate_point(
    fp: families.FamilyPoint, cfg: Config, resolution: int | None
) -> tuple[dict, "bounds.BoundReport"]:
    """One sweep/verify row: analytic data, bounds, and (optionally) the
    discrete eigenvalue of the assembled mesh operators."""
    cb = fp.curvature_bounds()
    hs = fp.hypersurface_data()
    lam_disc = None
    if resolution is not None:
        msh = _build_mesh(fp.family, fp.param, resolution)
        stiff = mesh.cotan_stiffness(msh)
        mass = mesh.lumped_mass(msh)
        lam_disc, _ = eigen.smallest_nonzero_eig(
            stiff,
            mass,
            tol=cfg.eig_tol,
            iter_cap=cfg.iter_cap,
            seed=cfg.eig_seed,
        )
    ref = lam_disc if lam_disc is not None else fp.lambda1
    rep = bounds.compute_report(
        cb,
        hs,
        lambda1_ref=ref,
        grid_points=cfg.grid_points,
        golden_tol=cfg.golden_tol,
    )
    row = {
        "family": fp.family,
        "param": fp.param,
        "n": cb.n,
        "k": cb.k,
        "K": cb.K,
        "H_sigma": hs.H_sigma,
        "S_sigma": hs.S_sigma,
        "roll_R": hs.roll_R,
        "r": rep.r,
        "C_r": rep.c_r,
        "bound_thm12": rep.bound_thm12,
        "bound_thm13": rep.bound_thm13,
        "bound_cor14": rep.bound_cor14,
        "bound_cor15": rep.bound_cor15,
        "bound_cw": rep.bound_cw,
        "applicable_thm13": rep.applicable_thm13,
        "lambda1_analytic": fp.lambda1,
        "lambda1_discrete": lam_disc,
        "margin": rep.margin,
    }
    return row, rep


def _csv_line(row: dict) -> str:
    return ",".join(fmt(row[col]) for col in CSV_COLUMNS)


def _violates(rep, lam_disc: float, disc_tol: float) -> bool:
    """True when the best applicable bound exceeds the discrete eigenvalue
    plus three discretization tolerances (disc_tol is relative)."""
    return rep.best_applicable > lam_disc + 3.0 * disc_tol * lam_disc


def cmd_bound(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    from .params import CurvatureBounds, HypersurfaceData

    cb = CurvatureBounds(n=args.n, k=args.k, K=args.K)
    hs = HypersurfaceData(H_sigma=args.H, S_sigma=args.S, roll_R=args.R)
    rep = bounds.compute_report(
        cb,
        hs,
        lambda1_ref=args.lambda1,
        grid_points=cfg.grid_points,
        golden_tol=cfg.golden_tol,
    )
    lines = [
        ("n", cb.n),
        ("k", cb.k),
        ("K", cb.K),
        ("H_sigma", hs.H_sigma),
        ("S_sigma", hs.S_sigma),
        ("roll_R", hs.roll_R),
        ("t_R", rep.t_R),
        ("r", rep.r),
        ("C_r", rep.c_r),
        ("bound_thm12", rep.bound_thm12),
        ("bound_thm13", rep.bound_thm13),
        ("bound_cor14", rep.bound_cor14),
        ("bound_cor15", rep.bound_cor15),
        ("bound_cw", rep.bound_cw),
        ("applicable_thm13", rep.applicable_thm13),
        ("vacuous", ",".join(k for k, v in rep.vacuous.items() if v) or "none"),
        ("best_applicable", rep.best_applicable),
    ]
    if rep.degenerate:
        lines.append(("note", "totally geodesic: all bounds reduce to k/2"))
    if args.lambda1 is not None:
        lines.append(("lambda1_ref", rep.lambda1_ref))
        lines.append(("margin", rep.margin))
    for key, value in lines:
        print(f"{key} = {fmt(value)}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    fp = _family_point(args.family, args.param)
    row, rep = evaluate_point(fp, cfg, args.resolution)
    out = ",".join(CSV_COLUMNS) + "\n" + _csv_line(row) + "\n"
    if args.output:
        with open(args.output, "w", encoding="ascii", newline="\n") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    if _violates(rep, row["lambda1_discrete"], args.disc_tol):
        print(
            f"violation: best applicable bound {fmt(rep.best_applicable)} exceeds "
            f"discrete lambda1 {fmt(row['lambda1_discrete'])} + 3*tol",
            file=sys.stderr,
        )
        return 1
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    if args.steps < 1:
        raise ValidationError(f"--steps must be >= 1, got {args.steps}")
    if args.param_max < args.param_min:
        raise ValidationError("--param-max must be >= --param-min")
    if args.steps == 1:
        params = [args.param_min]
    else:
        step = (args.param_max - args.param_min) / (args.steps - 1)
        params = [args.param_min + i * step for i in range(args.steps - 1)]
        params.append(args.param_max)

    plot_path = args.plot
    if plot_path == "AUTO":
        if not args.output:
            raise ValidationError("--plot without a path requires --output")
        plot_path = os.path.splitext(args.output)[0] + ".png"

    rows = []
    violations = 0
    for param in params:
        fp = _family_point(args.family, param)
        row, rep = evaluate_point(fp, cfg, args.resolution)
        rows.append(row)
        if _violates(rep, row["lambda1_discrete"], args.disc_tol):
            violations += 1

    out = ",".join(CSV_COLUMNS) + "\n" + "".join(_csv_line(r) + "\n" for r in rows)
    if args.output:
        with open(args.output, "w", encoding="ascii", newline="\n") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)

    if plot_path:
        from .plots import render_sweep_figure

        render_sweep_figure(rows, plot_path)

    if violations:
        print(f"violation: {violations} row(s) exceed discrete lambda1 + 3*tol",
              file=sys.stderr)
        return 1
    return 0


def cmd_eta(args: argparse.Namespace) -> int:
    resolve_config(args)  # validates --config / $SGB_CONFIG even though
    # the pinching constant only needs its own bisection tolerance
    if args.delta <= 0:
        raise ValidationError(f"--delta must be > 0, got {args.delta}")
    tol = 1e-10
    value = bounds.eta_of_delta(args.n, args.delta, tol=tol)
    print(f"eta = {fmt(value)}")
    print(f"bracket_width = {fmt(tol)}")
    print("note = derived construction: smallest positive root of "
          "S = (1 - (1+delta)^-2) * max(0, sphere bound at H = sqrt(n*S))")
    return 0


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", help="config file (key = value lines); "
                        f"falls back to ${CONFIG_ENV}")
    shared.add_argument("--grid-points", type=int, dest="grid_points")
    shared.add_argument("--golden-tol", type=float, dest="golden_tol")
    shared.add_argument("--ode-step", type=float, dest="ode_step")
    shared.add_argument("--eig-tol", type=float, dest="eig_tol")
    shared.add_argument("--eig-seed", type=int, dest="eig_seed")
    shared.add_argument("--iter-cap", type=int, dest="iter_cap")

    parser = argparse.ArgumentParser(
        prog="sgb",
        description="Eigenvalue lower bounds for hypersurfaces and their "
        "mesh-based verification in the 3-sphere.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", parents=[shared],
                       help="evaluate all bounds for explicit input data")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--H", type=float, required=True)
    p.add_argument("--S", type=float, required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--lambda1", type=float, default=None,
                   help="optional reference eigenvalue for the margin")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", parents=[shared],
                       help="mesh one family member and check bounds against "
                       "the discrete spectrum")
    p.add_argument("--family", choices=[families.SPHERE, families.TORUS],
                   required=True)
    p.add_argument("--param", type=float, required=True)
    p.add_argument("--resolution", type=int, required=True,
                   help="icosphere level (sphere) or grid size (torus)")
    p.add_argument("--disc-tol", type=float, default=0.01,
                   help="relative discretization tolerance (default 0.01)")
    p.add_argument("--output", help="write the CSV row here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[shared],
                       help="parameter sweep; CSV plus optional figure")
    p.add_argument("--family", choices=[families.SPHERE, families.TORUS],
                   required=True)
    p.add_argument("--param-min", type=float, required=True, dest="param_min")
    p.add_argument("--param-max", type=float, required=True, dest="param_max")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--resolution", type=int, required=True)
    p.add_argument("--disc-tol", type=float, default=0.01)
    p.add_argument("--output", help="CSV output path (default: stdout)")
    p.add_argument("--plot", nargs="?", const="AUTO", default=None,
                   help="render a PNG figure (default path: CSV stem + .png)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("eta", parents=[shared],
                       help="pinching constant eta(n, delta)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.set_defaults(func=cmd_eta)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, DomainError, DegenerateError, NotApplicableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        StepError,
        GeometryError,
        FitError,
        OrientationError,
        ConvergenceError,
        IllConditionedError,
        SizeError,
        DeflationError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
