"""Command-line front end.

    dirac-sidharth [--output-dir DIR] [--format csv|json] [--tolerance-scale X] COMMAND ...

    gamma verify [--corrupt NAME]
    dispersion table --m M --alpha A --ell L --p-min P0 --p-max P1 --count N [--units PRESET]
    spinor build --m M --alpha A --ell L --p P [--direction X Y Z] [--spin S] [--branch B]
                 [--representation dirac|weyl] [--sign-convention paper|derived]
    spinor verify [--seed N] [--points N]
    evolve run --config FILE.toml

Exit codes: 0 success, 1 a verification check failed, 2 usage or config error.
Numbers are written with 17 significant digits.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import algebra
from .algebra import build_gamma_set, invariant_residuals
from .dispersion import UNIT_PRESETS, ModelParams, energy_branches, energy_squared, group_velocity, to_natural
from .errors import DomainError, NumericError, UsageError, ValidationError
from .evolution import EvolutionConfig, run_evolution
from .plane_wave import (
    SIGN_CONVENTIONS,
    MomentumVector,
    TwoSpinorPair,
    all_solutions,
    chi_from_phi,
    effective_hamiltonian_h,
    kg_sidharth_symbol,
    plane_wave_solution,
    residual,
    system_residual,
    to_representation,
)

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

GAMMA_TOL = 1e-12
SPINOR_TOL = 1e-10


def fmt(x: float) -> str:
    return f"{x:.17g}"


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, residual: float, tolerance: float) -> None:
        self.checks.append(Check(name, float(residual), float(tolerance)))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> str:
        doc = {
            "overall": "pass" if self.passed else "fail",
            "checks": [
                {"name": c.name, "status": "pass" if c.passed else "fail", "residual": c.residual,
                 "tolerance": c.tolerance}
                for c in self.checks
            ],
        }
        return json.dumps(doc, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "status", "residual", "tolerance"])
        for c in self.checks:
            w.writerow([c.name, "pass" if c.passed else "fail", fmt(c.residual), fmt(c.tolerance)])
        return buf.getvalue()

    def render(self, form: str) -> str:
        return self.to_json() if form == "json" else self.to_csv()


def _emit(args, text: str, filename: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    if args.output_dir is not None:
        out = Path(args.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / filename).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# gamma verify


def gamma_report(corrupt: str | None = None, tolerance_scale: float = 1.0) -> VerificationReport:
    report = VerificationReport()
    tol = GAMMA_TOL * tolerance_scale
    for rep in algebra.REPRESENTATIONS:
        g = build_gamma_set(rep)
        if corrupt:
            g = g.with_matrix(corrupt, np.zeros((4, 4)))
        for name, value in invariant_residuals(g).items():
            report.add(f"{rep}.{name}", value, tol)
    return report


def cmd_gamma_verify(args) -> int:
    report = gamma_report(args.corrupt, args.tolerance_scale)
    _emit(args, report.render(args.format), f"gamma_report.{args.format}")
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# dispersion table


def dispersion_rows(params: ModelParams, p_grid: np.ndarray) -> list[tuple[float, float, float, float, float]]:
    rows = []
    for p in p_grid:
        p = float(p)
        e_plus, e_minus = energy_branches(params, p)
        try:
            v = group_velocity(params, p)
        except DomainError:
            v = math.nan
        rows.append((p, e_plus, e_minus, v, energy_squared(params, p)))
    return rows


def cmd_dispersion_table(args) -> int:
    if args.count < 1 or not (0 <= args.p_min <= args.p_max) or (args.count > 1 and args.p_min == args.p_max):
        raise UsageError("invalid p grid: need 0 <= p_min <= p_max, count >= 1 (and p_min < p_max if count > 1)")
    m, ell, p_grid = to_natural(args.units, m=args.m, ell=args.ell,
                                p=np.linspace(args.p_min, args.p_max, args.count))
    params = ModelParams(m, args.alpha, ell)
    rows = dispersion_rows(params, p_grid)
    header = ["p", "E_plus", "E_minus", "v_group", "E2"]
    if args.format == "json":
        text = json.dumps([dict(zip(header, r)) for r in rows], indent=2)
    else:
        text = ",".join(header) + "\n" + "".join(",".join(fmt(x) for x in r) + "\n" for r in rows)
    _emit(args, text, f"dispersion_table.{args.format}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# spinor build / verify


def spinor_document(params: ModelParams, pvec: MomentumVector, spin: int, branch: int, representation: str,
                    convention: str) -> dict:
    sol = plane_wave_solution(params, pvec, spin, branch, convention)
    sol = to_representation(sol, representation)
    res = residual(sol, params, build_gamma_set(sol.representation))
    return {
        "components": [[float(c.real), float(c.imag)] for c in sol.U],
        "E": sol.E,
        "residual": res,
        "norm": sol.norm,
        "spin": sol.spin,
        "branch": sol.branch,
        "representation": sol.representation,
        "sign_convention": convention,
        "momentum": list(pvec.components),
    }


def cmd_spinor_build(args) -> int:
    direction = np.asarray(args.direction, dtype=float)
    norm = np.linalg.norm(direction)
    if norm == 0:
        raise UsageError("--direction must be non-zero")
    if args.p < 0:
        raise UsageError("--p is a magnitude and must be >= 0")
    direction = direction / norm
    params = ModelParams(args.m, args.alpha, args.ell)
    doc = spinor_document(params, MomentumVector.along(args.p, direction), args.spin, args.branch,
                          args.representation, args.sign_convention)
    _emit(args, json.dumps(doc, indent=2), "spinor.json")
    return EXIT_OK if doc["residual"] <= SPINOR_TOL * args.tolerance_scale else EXIT_FAIL


def spinor_report(n_points: int = 50, seed: int = 0, tolerance_scale: float = 1.0) -> VerificationReport:
    """Plane-wave invariant suite over a seeded random parameter grid."""
    rng = np.random.default_rng(seed)
    report = VerificationReport()
    tol = SPINOR_TOL * tolerance_scale
    for i in range(n_points):
        params = ModelParams(rng.uniform(0.1, 3.0), rng.uniform(0.0, 2.0), rng.uniform(0.01, 1.0))
        pvec = MomentumVector(tuple(rng.normal(size=3) * rng.uniform(0.0, 3.0)))
        p = pvec.magnitude
        e2 = energy_squared(params, p)
        for eps in (1, -1):
            h = effective_hamiltonian_h(params, p, eps)
            report.add(f"pt{i}.h_squared.eps{eps:+d}", np.max(np.abs(h @ h - e2 * np.eye(2))), 1e-12 * tolerance_scale * max(1.0, e2))
        for spin in (1, -1):
            for branch in (1, -1):
                sol = plane_wave_solution(params, pvec, spin, branch)
                tag = f"pt{i}.spin{spin:+d}.branch{branch:+d}"
                report.add(f"{tag}.norm", abs(sol.norm - 1.0), 1e-12 * tolerance_scale)
                report.add(f"{tag}.residual", residual(sol, params), tol)
                report.add(f"{tag}.kg_symbol", abs(kg_sidharth_symbol(params, p, sol.E)), 1e-12 * tolerance_scale * e2)
        sols = all_solutions(params, pvec)
        gram = np.array([[np.vdot(a.U, b.U) for b in sols] for a in sols])
        report.add(f"pt{i}.orthonormal", np.max(np.abs(gram - np.eye(4))), 1e-12 * tolerance_scale)
        phi = plane_wave_solution(params, pvec, 1).U[:2]
        chi = chi_from_phi(params, pvec, sols[0].E, phi)
        report.add(f"pt{i}.chi_phi_system", max(system_residual(TwoSpinorPair(chi, phi), params, pvec, sols[0].E)), tol)
    return report


def cmd_spinor_verify(args) -> int:
    report = spinor_report(args.points, args.seed, args.tolerance_scale)
    _emit(args, report.render(args.format), f"spinor_report.{args.format}")
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# evolve run


def load_config(path: str) -> EvolutionConfig:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ValidationError(f"config {path!r} is not valid TOML: {exc}") from exc
    return EvolutionConfig.from_mapping(data)


def observables_csv(result) -> str:
    s = result.series
    lines = ["t,norm,x,p,energy"]
    for row in zip(s.times, s.norm, s.x_centroid, s.p_centroid, s.energy):
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def snapshot_csv(state) -> str:
    k = state.grid.mode_index
    p = state.grid.momenta
    order = np.argsort(k, kind="stable")
    head = ["k", "p_k"] + [f"{part}{c}" for c in range(4) for part in ("re", "im")]
    lines = [",".join(head)]
    for i in order:
        vals = [fmt(v) for a in state.amplitudes[i] for v in (a.real, a.imag)]
        lines.append(",".join([str(int(k[i])), fmt(p[i])] + vals))
    return "\n".join(lines) + "\n"


def cmd_evolve_run(args) -> int:
    config = load_config(args.config)
    result = run_evolution(config)
    out = Path(args.output_dir if args.output_dir is not None else ".")
    out.mkdir(parents=True, exist_ok=True)
    (out / "observables.csv").write_text(observables_csv(result), encoding="utf-8")
    for snap in result.snapshots:
        (out / f"snapshot_{snap.t:.10g}.csv").write_text(snapshot_csv(snap), encoding="utf-8")
    print(f"wrote {out / 'observables.csv'} ({result.series.times.size} samples, {len(result.snapshots)} snapshots)")
    return EXIT_OK


# ---------------------------------------------------------------------------


def _sign_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected +1 or -1, got {text!r}")
    if value not in (1, -1):
        raise argparse.ArgumentTypeError(f"expected +1 or -1, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dirac-sidharth", description=__doc__.splitlines()[0] if __doc__ else None)
    ap.add_argument("--output-dir", default=None, help="Also write results here (evolve: default '.').")
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--tolerance-scale", type=float, default=1.0, help="Multiply every verification tolerance.")
    sub = ap.add_subparsers(dest="command", required=True)

    gamma = sub.add_parser("gamma").add_subparsers(dest="action", required=True)
    gv = gamma.add_parser("verify", help="Check the gamma-matrix invariants in both representations.")
    gv.add_argument("--corrupt", choices=("gamma0", "gamma1", "gamma2", "gamma3", "gamma5"), default=None,
                    help="Replace one matrix by zero before checking (fault injection).")
    gv.set_defaults(func=cmd_gamma_verify)

    disp = sub.add_parser("dispersion").add_subparsers(dest="action", required=True)
    dt = disp.add_parser("table", help="Tabulate the modified dispersion relation.")
    dt.add_argument("--m", type=float, default=1.0)
    dt.add_argument("--alpha", type=float, default=0.0)
    dt.add_argument("--ell", type=float, default=1.0)
    dt.add_argument("--p-min", type=float, default=0.0)
    dt.add_argument("--p-max", type=float, default=5.0)
    dt.add_argument("--count", type=int, default=51)
    dt.add_argument("--units", choices=UNIT_PRESETS, default="natural")
    dt.set_defaults(func=cmd_dispersion_table)

    spinor = sub.add_parser("spinor").add_subparsers(dest="action", required=True)
    sb = spinor.add_parser("build", help="Build one plane-wave spinor and report its residual.")
    sb.add_argument("--m", type=float, default=1.0)
    sb.add_argument("--alpha", type=float, default=0.0)
    sb.add_argument("--ell", type=float, default=1.0)
    sb.add_argument("--p", type=float, default=0.0, help="Momentum magnitude.")
    sb.add_argument("--direction", type=float, nargs=3, default=(0.0, 0.0, 1.0))
    sb.add_argument("--spin", type=_sign_arg, default=1)
    sb.add_argument("--branch", type=_sign_arg, default=1)
    sb.add_argument("--representation", choices=algebra.REPRESENTATIONS, default="dirac")
    sb.add_argument("--sign-convention", choices=SIGN_CONVENTIONS, default="paper")
    sb.set_defaults(func=cmd_spinor_build)
    sv = spinor.add_parser("verify", help="Run the plane-wave invariant suite on a random grid.")
    sv.add_argument("--points", type=int, default=50)
    sv.add_argument("--seed", type=int, default=0)
    sv.set_defaults(func=cmd_spinor_verify)

    evolve = sub.add_parser("evolve").add_subparsers(dest="action", required=True)
    er = evolve.add_parser("run", help="Evolve a wavepacket described by a TOML config.")
    er.add_argument("--config", required=True)
    er.set_defaults(func=cmd_evolve_run)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if not args.tolerance_scale > 0:
        print("error: --tolerance-scale must be > 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ValidationError, DomainError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
