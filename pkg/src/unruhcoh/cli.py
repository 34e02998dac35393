"""Command-line front end.

Subcommands: ``eval`` (one parameter point), ``sweep`` (cartesian parameter
grids to CSV/JSON), ``verify`` (oracle-vs-closed-form and special-function
check suites), ``figure`` (plot data export; renders a PNG next to the CSV
unless --no-png).  Every output file is accompanied by a
``<file>.manifest.json`` naming the scenario, grid, quadrature config and
per-point convergence flags.  Data files are byte-deterministic: fixed
column order, 17-significant-digit floats, LF line endings.

Exit codes: 0 success, 1 usage, 2 domain error, 3 verification failure,
4 I/O error.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

from . import __version__
from .closedform import (
    Boundary,
    Dim,
    Motion,
    PhysParams,
    ScenarioSpec,
    TransitionResult,
    phase_set,
    transition,
)
from .errors import DomainError
from .limits import peak_analysis
from .numkernel import (
    bessel_k_imag_order,
    bessel_k_small_x,
    complex_log_gamma,
    gamma_abs_imag,
    gamma_phase,
)
from .oracle import QuadratureConfig, bessel_oracle, gamma_half_line, p_numeric

_PARAM_NAMES = tuple(f.name for f in fields(PhysParams))

USAGE_ERROR, DOMAIN_ERROR, VERIFY_FAILURE, IO_ERROR = 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract here is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _scenario_from_args(args) -> ScenarioSpec:
    dim = Dim.D1 if args.dim == 1 else Dim.D3
    motion = Motion(args.motion)
    boundary = Boundary.MIRROR if args.mirror else Boundary.FREE
    return ScenarioSpec(dim, motion, boundary)


def _params_from_args(args) -> PhysParams:
    return PhysParams(a=args.a, omega=args.omega, Omega=args.Omega, z0=args.z0,
                      theta=args.theta, kperp_dot_xperp=args.kx, lam=args.lam,
                      alpha_k=args.alpha, hbar_f=args.hbar_f, hbar_d=args.hbar_d)


def _add_scenario_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dim", type=int, choices=(1, 3), required=True,
                   help="spacetime dimension: 1 for (1+1)D, 3 for (3+1)D")
    p.add_argument("--motion", choices=("accel", "static"), required=True,
                   help="atom state of motion (the mirror takes the other role)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--mirror", action="store_true", help="reflecting boundary present")
    g.add_argument("--free", dest="mirror", action="store_false", help="no boundary (default)")
    p.set_defaults(mirror=False)


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=float, default=1.0, help="proper acceleration")
    p.add_argument("--omega", type=float, default=1.0, help="field mode frequency")
    p.add_argument("--Omega", type=float, default=1.0, help="detector gap frequency")
    p.add_argument("--z0", type=float, default=0.0, help="mirror/atom position")
    p.add_argument("--theta", type=float, default=math.pi / 2,
                   help="(3+1)D polar angle of the mode, in (0, pi)")
    p.add_argument("--kx", type=float, default=0.0,
                   help="(3+1)D transverse phase k_perp . x_perp")
    p.add_argument("--lam", type=float, default=1.0, help="coupling strength")
    p.add_argument("--alpha", type=float, default=1.0, help="coherent amplitude")
    p.add_argument("--hbar-f", type=float, default=1.0, help="field action constant")
    p.add_argument("--hbar-d", type=float, default=1.0, help="detector action constant")


def _add_quad_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rel-tol", type=float, default=None,
                   help="oracle relative tolerance (default per command)")
    p.add_argument("--ladder", type=str, default=None,
                   help="comma-separated descending damping ladder")


def _quad_config(args, default_tol: float) -> QuadratureConfig:
    kw = {"rel_tol": args.rel_tol if args.rel_tol is not None else default_tol}
    if args.ladder:
        kw["epsilon_ladder"] = tuple(float(v) for v in args.ladder.split(","))
    return QuadratureConfig(**kw)


def _pmap(fn, items, threads: int):
    if threads == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    workers = threads if threads > 0 else (os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _write_manifest(out_path: str, payload: dict) -> None:
    payload = {"tool": "unruhcoh", "version": __version__, **payload}
    _write_text(out_path + ".manifest.json",
                json.dumps(payload, indent=2, sort_keys=False) + "\n")


def _result_payload(res: TransitionResult) -> dict:
    out = {k: v for k, v in res.as_dict().items()}
    out["regime_warning"] = res.regime_warning
    if res.exact is not None:
        out["exact"] = {"p_vac_ex": res.exact.p_vac_ex,
                        "p_vac_de": res.exact.p_vac_de,
                        "p_alpha": res.exact.p_alpha}
    return out


# --- eval -------------------------------------------------------------------

def cmd_eval(args) -> int:
    scenario = _scenario_from_args(args)
    p = _params_from_args(args)
    res = transition(scenario, p)
    phases = phase_set(p, scenario.dim)
    if args.format == "json":
        payload = {
            "scenario": {"dim": scenario.dim.value, "motion": scenario.motion.value,
                         "boundary": scenario.boundary.value},
            "params": {name: getattr(p, name) for name in _PARAM_NAMES},
            **_result_payload(res),
            "phases": {k: v for k, v in phases.as_dict().items() if v is not None},
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"scenario: {scenario.label()}")
        for k, v in res.as_dict().items():
            print(f"  {k:10s} = {_fmt(v)}")
        if res.exact is not None:
            for k, v in (("p_vac_ex", res.exact.p_vac_ex),
                         ("p_vac_de", res.exact.p_vac_de),
                         ("p_alpha", res.exact.p_alpha)):
                if v is not None:
                    print(f"  exact {k:10s} = {_fmt(v)}")
        for k, v in phases.as_dict().items():
            if v is not None:
                print(f"  phase {k:6s} = {_fmt(v)}")
        if res.regime_warning:
            print(f"  warning: {res.regime_warning}")
    return 0


# --- sweep ------------------------------------------------------------------

def _parse_axes(axis_args: list[str]) -> list[tuple[str, list[float]]]:
    axes = []
    for spec in axis_args:
        name, _, tail = spec.partition("=")
        name = name.strip()
        if name not in _PARAM_NAMES:
            raise DomainError(
                f"axis parameter {name!r} is not one of {_PARAM_NAMES}")
        values = [float(v) for v in tail.split(",") if v.strip()]
        if not values:
            raise DomainError(f"axis {name!r} has no values")
        axes.append((name, values))
    return axes


def _grid_points(axes: list[tuple[str, list[float]]]) -> list[dict]:
    points = [{}]
    for name, values in axes:
        points = [{**pt, name: v} for pt in points for v in values]
    return points


def cmd_sweep(args) -> int:
    scenario = _scenario_from_args(args)
    base = _params_from_args(args)
    axes = _parse_axes(args.axis or [])
    points = _grid_points(axes)
    axis_names = [name for name, _ in axes]

    def one(overrides: dict) -> tuple[PhysParams, TransitionResult]:
        p = base.with_(**overrides)
        return p, transition(scenario, p)

    t0 = time.monotonic()
    results = _pmap(one, points, args.threads)
    wall = time.monotonic() - t0

    columns = list(axis_names) + ["p_vac_ex", "p_vac_de", "p_alpha_ex", "p_alpha_de"]
    if args.ratio:
        columns.append("vac_ratio")
    columns.append("warning")
    rows = []
    for overrides, (p, res) in zip(points, results):
        row = {name: overrides[name] for name in axis_names}
        row.update(res.as_dict())
        if args.ratio:
            row["vac_ratio"] = res.p_vac_ex / res.p_vac_de
        row["warning"] = res.regime_warning or ""
        rows.append(row)

    if args.format == "csv":
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join(
                _fmt(row[c]) if isinstance(row[c], float) else str(row[c])
                for c in columns))
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(rows, indent=2) + "\n"
    _write_text(args.out, text)
    _write_manifest(args.out, {
        "command": "sweep",
        "scenario": {"dim": scenario.dim.value, "motion": scenario.motion.value,
                     "boundary": scenario.boundary.value},
        "fixed": {name: getattr(base, name) for name in _PARAM_NAMES
                  if name not in axis_names},
        "axes": {name: values for name, values in axes},
        "rows": len(rows),
        "quadrature": None,
        "wall_time_s": wall,
        "convergence": None,
    })
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


# --- verify -----------------------------------------------------------------

@dataclass(frozen=True)
class _Check:
    name: str
    value: float
    tol: float | None
    required: bool = True

    @property
    def ok(self) -> bool:
        return self.tol is None or self.value <= self.tol


_D1_GRID_A = (0.5, 1.0, 2.0)
_D1_GRID_OMEGA = (0.5, 1.0)
_D1_GRID_BIGOMEGA = (0.5, 1.0, 2.0)
_D1_GRID_Z0 = (0.0, 0.3, 1.0)


def _d1_points(scenario: ScenarioSpec) -> list[PhysParams]:
    z0s = _D1_GRID_Z0 if scenario.mirror else (0.0,)
    return [PhysParams(a=a, omega=om, Omega=bo, z0=z0)
            for a in _D1_GRID_A for om in _D1_GRID_OMEGA
            for bo in _D1_GRID_BIGOMEGA for z0 in z0s]


def _relative_gap(x: float, ref: float) -> float:
    return abs(x - ref) / abs(ref) if ref != 0 else abs(x - ref)


def _verify_d1(cfg: QuadratureConfig, threads: int) -> tuple[list[_Check], list[str]]:
    checks, skipped = [], []
    for motion in Motion:
        for boundary in Boundary:
            scenario = ScenarioSpec(Dim.D1, motion, boundary)
            points = _d1_points(scenario)

            def one(p: PhysParams, sc=scenario) -> tuple[float, bool]:
                cf = transition(sc, p)
                nm = p_numeric(sc, p, cfg)
                dev = max(_relative_gap(getattr(nm, k), getattr(cf, k))
                          for k in ("p_vac_ex", "p_vac_de", "p_alpha_ex", "p_alpha_de"))
                return dev, nm.converged
            outcomes = _pmap(one, points, threads)
            converged = [d for d, c in outcomes if c]
            for p, (_, c) in zip(points, outcomes):
                if not c:
                    skipped.append(f"{scenario.label()} a={p.a} omega={p.omega} "
                                   f"Omega={p.Omega} z0={p.z0}")
            checks.append(_Check(
                f"{scenario.label()} vs oracle ({len(converged)}/{len(points)} pts)",
                max(converged) if converged else math.inf, 1e-4))
    return checks, skipped


def _verify_d3(cfg: QuadratureConfig, threads: int) -> tuple[list[_Check], list[str]]:
    checks, skipped = [], []
    # Exact-vs-large-acceleration vacuum gap, shrinking with a.
    gaps = []
    for a in (50.0, 100.0, 200.0):
        p = PhysParams(a=a, omega=1.0, Omega=1.0)
        cf = transition(ScenarioSpec(Dim.D3, Motion.ACCELERATED, Boundary.FREE), p)
        gaps.append(_relative_gap(cf.p_vac_ex, cf.exact.p_vac_ex))
    checks.append(_Check("free accel vacuum exact-vs-asymptotic gap monotone in a",
                         0.0 if gaps[0] > gaps[1] > gaps[2] else 1.0, 0.5))
    p = PhysParams(a=200.0, omega=1.0, Omega=1.0)
    cf = transition(ScenarioSpec(Dim.D3, Motion.ACCELERATED, Boundary.FREE), p)
    checks.append(_Check("free accel vacuum gap at omega/a = 5e-3",
                         _relative_gap(cf.p_vac_ex, cf.exact.p_vac_ex), 1e-3))
    pm = PhysParams(a=100.0, omega=1.0, Omega=1.0, theta=math.pi / 3, z0=0.2)
    cfm = transition(ScenarioSpec(Dim.D3, Motion.ACCELERATED, Boundary.MIRROR), pm)
    checks.append(_Check("mirror accel coherent exact-vs-asymptotic gap",
                         _relative_gap(cfm.p_alpha_ex, cfm.exact.p_alpha), 1e-3))

    # Oracle vs the exact-Bessel branch at moderate acceleration (regime-free).
    pe = PhysParams(a=5.0, omega=1.0, Omega=1.0, theta=math.pi / 3, z0=0.2,
                    kperp_dot_xperp=0.4)
    for boundary in Boundary:
        sc = ScenarioSpec(Dim.D3, Motion.ACCELERATED, boundary)
        cf = transition(sc, pe)
        nm = p_numeric(sc, pe, cfg)
        if not nm.converged:
            skipped.append(f"{sc.label()} oracle non-converged")
            continue
        checks.append(_Check(f"{sc.label()} coherent oracle vs exact branch",
                             _relative_gap(nm.p_alpha_ex, cf.exact.p_alpha), 1e-4))
        if cf.exact.p_vac_ex is not None:
            checks.append(_Check(f"{sc.label()} vacuum oracle vs exact branch",
                                 _relative_gap(nm.p_vac_ex, cf.exact.p_vac_ex), 1e-4))
    # Static scenarios: the closed forms follow from the asymptotic mode the
    # oracle integrates; the deviation is reported, not asserted.
    ps = PhysParams(a=100.0, omega=1.0, Omega=1.0, theta=math.pi / 4, z0=0.2,
                    kperp_dot_xperp=0.7)
    for boundary in Boundary:
        sc = ScenarioSpec(Dim.D3, Motion.STATIC, boundary)
        cf = transition(sc, ps)
        nm = p_numeric(sc, ps, cfg)
        dev = max(_relative_gap(getattr(nm, k), getattr(cf, k))
                  for k in ("p_vac_ex", "p_vac_de", "p_alpha_ex", "p_alpha_de"))
        checks.append(_Check(f"{sc.label()} oracle vs closed form (info)",
                             dev, None, required=False))
    return checks, skipped


def _verify_special(cfg: QuadratureConfig) -> tuple[list[_Check], list[str]]:
    checks = []
    worst = max(abs(gamma_abs_imag(nu) ** 2 * nu * math.sinh(math.pi * nu) - math.pi)
                / math.pi for nu in (0.1, 0.5, 1.0, 2.0, 5.0))
    checks.append(_Check("|Gamma(i nu)|^2 nu sinh(pi nu) = pi", worst, 1e-12))
    nu, x = 0.3, 0.01
    lhs = bessel_k_small_x(nu, x) ** 2
    rhs = math.pi / (nu * math.sinh(math.pi * nu)) * math.cos(gamma_phase(nu, x / 2)) ** 2
    checks.append(_Check("asymptotic K^2 phase identity", _relative_gap(lhs, rhs), 1e-12))
    for x, tol in ((1e-2, 1e-3), (1e-4, 1e-5)):
        worst = max(_relative_gap(bessel_k_small_x(nu, x), bessel_k_imag_order(nu, x))
                    for nu in (0.3, 1.0))
        checks.append(_Check(f"K integral vs small-x form at x = {x:g}", worst, tol))
    worst = 0.0
    for nu in (0.5, 1.0, 2.0):
        for b in (0.5, 1.0, 2.0):
            res = gamma_half_line(nu, b, cfg)
            target = cmath.exp(complex_log_gamma(1j * nu)
                               - 1j * nu * complex(math.log(b), -math.pi / 2))
            worst = max(worst, abs(res.value - target) / abs(target))
    checks.append(_Check("regularized half-line Gamma benchmark", worst, 1e-6))
    worst = max(_relative_gap(bessel_oracle(nu, x, z, cfg), bessel_k_imag_order(nu, x * z))
                for nu, x, z in ((0.0, 1.0, 1.0), (0.5, 0.01, 1.0), (1.0, 0.5, 2.0)))
    checks.append(_Check("product-form Bessel oracle vs cosh route", worst, 1e-8))
    checks.append(_Check("K_0(1) reference value",
                         _relative_gap(bessel_k_imag_order(0.0, 1.0), 0.42102443824070834),
                         1e-10))
    return checks, []


def cmd_verify(args) -> int:
    cfg = _quad_config(args, default_tol=1e-6)
    t0 = time.monotonic()
    if args.preset == "d1-standard":
        checks, skipped = _verify_d1(cfg, args.threads)
    elif args.preset == "d3-asymptotic":
        checks, skipped = _verify_d3(cfg, args.threads)
    else:
        checks, skipped = _verify_special(cfg)
    wall = time.monotonic() - t0

    width = max(len(c.name) for c in checks) + 2
    lines = [f"verify preset {args.preset} (tolerances per check)"]
    for c in checks:
        status = "pass" if c.ok else "FAIL"
        if c.tol is None:
            status = "info"
        tol = "-" if c.tol is None else f"{c.tol:.0e}"
        lines.append(f"  {c.name:<{width}} {c.value:11.3e}  tol {tol:>7}  {status}")
    for s in skipped:
        lines.append(f"  excluded (non-converged): {s}")
    failed = [c for c in checks if c.required and not c.ok]
    verdict = "PASS" if not failed and not (skipped and args.strict_convergence) else "FAIL"
    lines.append(f"result: {verdict} ({len(checks) - len(failed)}/{len(checks)} checks, "
                 f"{len(skipped)} excluded, {wall:.1f} s)")
    report = "\n".join(lines) + "\n"
    print(report, end="")
    if args.out:
        _write_text(args.out, report)
        _write_manifest(args.out, {
            "command": "verify",
            "preset": args.preset,
            "quadrature": {"epsilon_ladder": list(cfg.epsilon_ladder),
                           "t_max": cfg.t_max, "rel_tol": cfg.rel_tol,
                           "max_subdivisions": cfg.max_subdivisions},
            "wall_time_s": wall,
            "convergence": {"excluded": skipped},
            "checks": [{"name": c.name, "value": c.value, "tol": c.tol,
                        "ok": c.ok, "required": c.required} for c in checks],
        })
    return 0 if verdict == "PASS" else VERIFY_FAILURE


# --- figure -----------------------------------------------------------------

def cmd_figure(args) -> int:
    if args.name != "y-peak":
        raise DomainError(f"unknown figure {args.name!r}")
    n = args.resolution
    if n < 2:
        raise DomainError("resolution must be at least 2")
    peak = peak_analysis()
    ys = [4.0 * math.pi * k / n for k in range(1, n + 1)]
    rows = [(y, math.sin(y) ** 2 / y) for y in ys]
    lines = ["y,Y"] + [f"{_fmt(y)},{_fmt(v)}" for y, v in rows]
    _write_text(args.out, "\n".join(lines) + "\n")

    outputs = [args.out]
    if not args.no_png:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6.0, 3.7))
        ax.plot([r[0] for r in rows], [r[1] for r in rows], lw=1.2)
        ax.axvline(peak.first_zero, color="0.6", ls=":", lw=0.8)
        ax.plot([peak.y_peak], [peak.value_peak], "o", ms=4, color="C3")
        ax.annotate(f"peak {peak.value_peak:.4f} at y = {peak.y_peak:.4f}",
                    xy=(peak.y_peak, peak.value_peak),
                    xytext=(peak.y_peak + 0.6, peak.value_peak),
                    fontsize=9)
        ax.set_xlabel("y")
        ax.set_ylabel("sin$^2$y / y")
        ax.set_xlim(0.0, 4.0 * math.pi)
        fig.tight_layout()
        png = os.path.splitext(args.out)[0] + ".png"
        fig.savefig(png, dpi=150)
        plt.close(fig)
        outputs.append(png)

    _write_manifest(args.out, {
        "command": "figure",
        "figure": args.name,
        "resolution": n,
        "peak": {"y_peak": peak.y_peak, "value_peak": peak.value_peak,
                 "first_zero": peak.first_zero},
        "quadrature": None,
        "wall_time_s": 0.0,
        "convergence": None,
        "outputs": outputs,
    })
    print(f"peak {_fmt(peak.value_peak)} at y = {_fmt(peak.y_peak)}; "
          f"first zero at {_fmt(peak.first_zero)}")
    print(f"wrote {', '.join(outputs)}")
    return 0


# --- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unruhcoh",
                     description="Detector response to a coherent scalar photon")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one parameter point",
                            parents=[], description=cmd_eval.__doc__)
    _add_scenario_flags(p_eval)
    _add_param_flags(p_eval)
    p_eval.add_argument("--format", choices=("json", "text"), default="text")
    p_eval.set_defaults(func=cmd_eval)

    p_sweep = sub.add_parser("sweep", help="cartesian parameter sweep to a file")
    _add_scenario_flags(p_sweep)
    _add_param_flags(p_sweep)
    p_sweep.add_argument("--axis", action="append", metavar="NAME=V1,V2,...",
                         help="sweep axis over a PhysParams field (repeatable)")
    p_sweep.add_argument("--ratio", action="store_true",
                         help="add the P_vac(+Omega)/P_vac(-Omega) column")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--out", required=True, help="output file path")
    p_sweep.add_argument("--threads", type=int, default=1,
                         help="worker threads (0 = auto)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run a verification preset")
    p_verify.add_argument("--preset", required=True,
                          choices=("d1-standard", "d3-asymptotic", "special-fns"))
    _add_quad_flags(p_verify)
    p_verify.add_argument("--threads", type=int, default=1,
                          help="worker threads (0 = auto)")
    p_verify.add_argument("--strict-convergence", action="store_true",
                          help="fail when any oracle point does not converge")
    p_verify.add_argument("--out", default=None, help="also write the report here")
    p_verify.set_defaults(func=cmd_verify)

    p_fig = sub.add_parser("figure", help="export figure data (+ PNG render)")
    p_fig.add_argument("--name", choices=("y-peak",), default="y-peak")
    p_fig.add_argument("--resolution", type=int, default=400,
                       help="number of sample points on (0, 4 pi]")
    p_fig.add_argument("--out", required=True, help="CSV output path")
    p_fig.add_argument("--no-png", action="store_true",
                       help="skip the matplotlib rendering")
    p_fig.set_defaults(func=cmd_figure)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else USAGE_ERROR
        return code
    except DomainError as exc:
        print(f"unruhcoh: domain error: {exc}", file=sys.stderr)
        return DOMAIN_ERROR
    except OSError as exc:
        print(f"unruhcoh: i/o error: {exc}", file=sys.stderr)
        return IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
