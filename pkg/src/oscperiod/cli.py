"""Command-line front end.

Exit codes: 0 ok, 1 validation failure, 2 usage/config error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import approx, oracle, validation
from .approx import TWO_PI
from .errors import ModelError, OscillatorError
from .models import Family, ForceModel, model_for_rho, reduced_parameter

log = logging.getLogger("oscperiod")

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

METHODS = ("first", "second", "closed-first", "polynomial-second", "energy", "ode")
RHO_FAMILIES = (Family.DUFFING, Family.QUADRATIC_ABS, Family.HARMONIC)
SWEEP_HEADER = ["rho", "T_first", "T_second", "T_exact", "rel_err_first", "rel_err_second"]

ANCHORS = {
    "first": "u(T/4)=0 on improved trajectory of A cos(wt)",
    "second": "u(T/4)=0 on improved trajectory of A1 cos(wt)+A2 cos(3wt), u''(0)+f(A)=0",
    "energy": "T = 4 int_0^A du / sqrt(2(V(A)-V(u)))",
    "ode": "4 x first zero of u''+f(u)=0, u(0)=A, u'(0)=0",
    ("closed-first", Family.DUFFING): "T1 = 2pi/sqrt(1+7rho/9)",
    ("closed-first", Family.QUADRATIC_ABS): "T1 = 2pi/sqrt(w0^2+(4+pi^2)rho/16)",
    ("closed-first", Family.HARMONIC): "T = 2pi",
    ("closed-first", Family.SIGNUM): "T = 4 sqrt(2A/eps)",
    ("polynomial-second", Family.DUFFING): "second-order Duffing period quartic in T^2",
    ("polynomial-second", Family.QUADRATIC_ABS): "second-order u|u| period cubic in T^2",
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    family: Family
    epsilon: Optional[float] = None
    omega0: float = 1.0
    amplitude: Optional[float] = None
    rho: Optional[float] = None
    method: str = "first"
    tol: Optional[float] = None
    fmt: str = "csv"
    output: Optional[str] = None

    def resolve(self) -> tuple[ForceModel, float, Optional[float]]:
        """(model, amplitude, rho) for this configuration.

        Raises:
            UsageError: on missing or conflicting parameters.
        """
        if self.tol is not None and not self.tol > 0:
            raise UsageError("--tol must be > 0")
        if self.family in RHO_FAMILIES:
            if (self.amplitude is None) == (self.rho is None):
                if self.family is Family.HARMONIC and self.rho is None:
                    return ForceModel.harmonic(), 1.0, 0.0
                raise UsageError("give exactly one of --amplitude or --rho")
            if self.rho is not None:
                if self.epsilon is not None:
                    raise UsageError("--epsilon is implied by --rho")
                if self.family is Family.HARMONIC and self.rho != 0:
                    raise UsageError("harmonic oscillator has rho = 0")
                model, A = model_for_rho(self.family, self.rho, self.omega0)
                return model, A, self.rho
            eps = 0.0 if self.family is Family.HARMONIC else self.epsilon
            if eps is None:
                raise UsageError("--amplitude needs --epsilon")
            model = ForceModel(self.family, eps, self.omega0)
            return model, self.amplitude, reduced_parameter(model, self.amplitude)
        if self.rho is not None:
            raise UsageError(f"{self.family.value} has no reduced parameter; use --epsilon/--amplitude")
        if self.epsilon is None or self.amplitude is None:
            raise UsageError(f"{self.family.value} needs --epsilon and --amplitude")
        return ForceModel(self.family, self.epsilon, self.omega0), self.amplitude, None


def _tol_kw(cfg: RunConfig) -> dict:
    return {} if cfg.tol is None else {"tol": cfg.tol}


def compute_period(cfg: RunConfig) -> dict:
    model, A, rho = cfg.resolve()
    fam, method = model.family, cfg.method
    residual = 0.0
    if method == "first":
        r = approx.first_order_period(model, A, **_tol_kw(cfg))
        T, residual = r.T, r.residual
    elif method == "second":
        r = approx.second_order_period(model, A, **_tol_kw(cfg))
        T, residual = r.T, r.residual
    elif method == "energy":
        T = oracle.exact_period_energy(model, A, **_tol_kw(cfg))
    elif method == "ode":
        T = oracle.period_from_ode(model, A, **_tol_kw(cfg))
    elif method == "closed-first":
        if fam is Family.DUFFING:
            T = approx.duffing_T1_closed(rho)
        elif fam is Family.QUADRATIC_ABS:
            T = approx.quadratic_T1_closed(model.omega0, rho)
        elif fam is Family.HARMONIC:
            T = TWO_PI
        elif fam is Family.SIGNUM:
            T = approx.signum_exact_period(model.epsilon, A).T
        else:
            raise UsageError(f"no closed form for {fam.value}")
    elif method == "polynomial-second":
        if fam is Family.DUFFING:
            r = approx.duffing_T2(rho)
        elif fam is Family.QUADRATIC_ABS:
            r = approx.quadratic_T2(model.omega0, rho)
        else:
            raise UsageError(f"no second-order period polynomial for {fam.value}")
        T, residual = r.T, r.residual
    else:
        raise UsageError(f"unknown method {method}")
    anchor = ANCHORS.get(method) or ANCHORS[(method, fam)]
    return {
        "model": fam.value,
        "epsilon": model.epsilon,
        "omega0": model.omega0,
        "A": A,
        "rho": rho,
        "method": method,
        "T": T,
        "residual": residual,
        "paper_anchor": anchor,
    }


def parse_grid(spec: str) -> list[float]:
    """``lo:hi:npoints[:log]`` -> grid values, increasing."""
    parts = spec.split(":")
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
        raise UsageError(f"bad --grid {spec!r}; expected lo:hi:npoints[:log]")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad --grid {spec!r}: {exc}") from None
    if n < 1 or lo < 0 or hi < lo or (n == 1 and hi != lo) or (n > 1 and hi == lo):
        raise UsageError(f"bad --grid {spec!r}: need 0 <= lo <= hi and a consistent npoints")
    if len(parts) == 4:
        if lo <= 0:
            raise UsageError("log grid needs lo > 0")
        return [float(x) for x in np.geomspace(lo, hi, n)]
    return [float(x) for x in np.linspace(lo, hi, n)]


def sweep_rows(cfg: RunConfig, grid: Sequence[float]) -> list[dict]:
    if cfg.family not in (Family.DUFFING, Family.QUADRATIC_ABS):
        raise UsageError("sweep needs --model duffing or quadratic-abs")
    rows = []
    for rho in grid:
        model, A = model_for_rho(cfg.family, rho, cfg.omega0)
        vals = {}
        for key, fn in (
            ("T_first", lambda: approx.first_order_period(model, A).T),
            ("T_second", lambda: approx.second_order_period(model, A).T),
            ("T_exact", lambda: oracle.exact_period_energy(model, A)),
        ):
            try:
                vals[key] = fn()
            except OscillatorError as exc:
                log.warning("rho=%g: %s failed: %s", rho, key, exc)
                vals[key] = math.nan
        te = vals["T_exact"]
        rows.append({
            "rho": rho,
            **vals,
            "rel_err_first": abs(vals["T_first"] - te) / te,
            "rel_err_second": abs(vals["T_second"] - te) / te,
        })
    return rows


def limit_rows(family: Family) -> list[dict]:
    big = validation.LARGE_RHO
    sq = math.sqrt(big)
    if family is Family.DUFFING:
        first = (validation.DUFFING_T1_INF, sq * approx.duffing_T1_closed(big), 7.12,
                 "lim sqrt(rho) T1 = 6pi/sqrt(7)")
        second = (approx.duffing_T2_limit().T_inf, sq * approx.duffing_T2(big).T, 7.44,
                  "smallest root of the strong-coupling quartic")
        pure = ForceModel.pure_cubic()
        printed = approx.DUFFING_T_INF_EXACT
    elif family is Family.QUADRATIC_ABS:
        first = (validation.QUADRATIC_T1_INF, sq * approx.quadratic_T1_closed(1.0, big), 6.75,
                 "lim sqrt(rho) T1 = 8pi/sqrt(4+pi^2)")
        second = (approx.quadratic_T2_limit().T_inf, sq * approx.quadratic_T2(1.0, big).T, 6.867,
                  "positive root of the strong-coupling cubic")
        pure = ForceModel.pure_quadratic()
        printed = approx.QUADRATIC_T_INF_EXACT
    else:
        raise UsageError("limit needs --model duffing or quadratic-abs")
    exact = (
        oracle.exact_period_energy(pure, 1.0),
        oracle.scaled_limit(family, lambda r: oracle.exact_period_rho(family, r)),
        printed,
        "energy integral of the pure power-law force at A=1",
    )
    rows = []
    for quantity, method, (an, num, pr, anchor) in (
        ("first-order", "closed-first", first),
        ("second-order", "polynomial-second", second),
        ("exact", "energy", exact),
    ):
        rows.append({
            "family": family.value,
            "quantity": quantity,
            "method": method,
            "analytic": an,
            "numeric": num,
            "abs_diff": abs(an - num),
            "printed": pr,
            "paper_anchor": anchor,
        })
    return rows


def trajectory_rows(cfg: RunConfig, t_end: Optional[float], n_samples: int) -> list[dict]:
    model, A, _ = cfg.resolve()
    if n_samples < 2:
        raise UsageError("--samples must be >= 2")
    if cfg.method == "second":
        trial = approx.second_order_trial(model, A)
    elif cfg.method == "first":
        trial = approx.first_order_trial(model, A)
    else:
        raise UsageError("trajectory --method must be first or second")
    t_end = trial.period if t_end is None else t_end
    if not t_end > 0:
        raise UsageError("--t-end must be > 0")
    ts = np.linspace(0.0, t_end, n_samples)
    traj = oracle.integrate_ode(model, A, t_end, t_eval=ts)
    return [
        {
            "t": float(t),
            "u_trial": trial(float(t)),
            "u_improved": approx.improve_trajectory(model, trial, float(t)),
            "u_ode": float(u),
            "energy_ode": float(e),
        }
        for t, u, e in zip(traj.t, traj.u, traj.energy)
    ]


def _fmt(x) -> str:
    if isinstance(x, float):
        return "nan" if math.isnan(x) else f"{x:.12g}"
    if x is None:
        return ""
    return str(x)


def render(rows: list[dict], fmt: str, columns: Optional[Sequence[str]] = None) -> str:
    columns = list(columns or rows[0].keys()) if rows else list(columns or [])
    if fmt == "json":
        clean = [{k: (None if isinstance(r[k], float) and math.isnan(r[k]) else r[k]) for k in columns}
                 for r in rows]
        return json.dumps(clean, indent=2, ensure_ascii=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[k]) for k in columns])
    return buf.getvalue()


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=[f.value for f in Family], default="duffing")
    common.add_argument("--epsilon", type=float)
    common.add_argument("--omega0", type=float, default=1.0)
    common.add_argument("--amplitude", type=float)
    common.add_argument("--rho", type=float)
    common.add_argument("--method", choices=METHODS, default="first")
    common.add_argument("--tol", type=float)
    common.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    common.add_argument("--output", help="output file (default: standard output)")

    p = argparse.ArgumentParser(prog="oscperiod", description="Periods of conservative nonlinear oscillators.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("period", parents=[common], help="one period estimate")
    sw = sub.add_parser("sweep", parents=[common], help="first/second/exact periods over a rho grid")
    sw.add_argument("--grid", required=True, help="lo:hi:npoints[:log]")
    sub.add_parser("limit", parents=[common], help="strong-coupling constants, two routes each")
    tr = sub.add_parser("trajectory", parents=[common], help="trial, improved and ODE trajectories")
    tr.add_argument("--t-end", type=float)
    tr.add_argument("--samples", type=int, default=101)
    sub.add_parser("validate", help="run the acceptance criteria")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            results = validation.run_all()
            for c in results:
                print(c.report())
            failed = [c.key for c in results if not c.passed]
            print(f"{len(results) - len(failed)}/{len(results)} criteria passed"
                  + (f"; failed: {', '.join(failed)}" if failed else ""))
            return EXIT_VALIDATION if failed else EXIT_OK

        cfg = RunConfig(Family(args.model), args.epsilon, args.omega0, args.amplitude, args.rho,
                        args.method, args.tol, args.fmt, args.output)
        if args.command == "period":
            text = render([compute_period(cfg)], cfg.fmt)
        elif args.command == "sweep":
            rows = sweep_rows(cfg, parse_grid(args.grid))
            if all(math.isnan(r["T_first"]) and math.isnan(r["T_second"]) and math.isnan(r["T_exact"])
                   for r in rows):
                print("error: every sweep row failed", file=sys.stderr)
                return EXIT_NUMERIC
            text = render(rows, cfg.fmt, SWEEP_HEADER)
        elif args.command == "limit":
            rows = limit_rows(cfg.family)
            text = render(rows, cfg.fmt)
            bad = [r["quantity"] for r in rows if not r["abs_diff"] <= 1e-4]
            _emit(text, cfg.output)
            if bad:
                print(f"error: analytic and large-rho routes disagree for {', '.join(bad)}", file=sys.stderr)
                return EXIT_NUMERIC
            return EXIT_OK
        else:
            text = render(trajectory_rows(cfg, args.t_end, args.samples), cfg.fmt)
        _emit(text, cfg.output)
        return EXIT_OK
    except (UsageError, ModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OscillatorError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
