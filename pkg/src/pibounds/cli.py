"""Command-line front end.

Subcommands:

- ``analyze``: inertias, maximal correlation, chi-square, k-correlation
  table and exact Bayes error of a joint pmf file.
- ``bound``: a requested lower bound with its certificates.
- ``verify``: seeded certification sweeps; exit code 1 on any violation.
- ``sweep``: CSV of bound value versus a swept parameter for plotting.

Input files are JSON ``{"pmf": [[...], ...]}`` (rows are X outcomes) or
plain numeric CSV grids without a header.  Exit codes: 0 success,
1 verification violations, 2 bad flags, 3 input validation failure.
Identical flags, input and seed produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import oracle
from .distributions import JointDistribution, load_joint
from .error_rate import entropy, fano_error_rate
from .errors import PiboundsError, TooLarge
from .fn_bounds import function_bound, min_surjection_error
from .inertia import chi_squared_direct, decompose
from .pe_bounds import InertiaBoundInput, inertia_bound, maxcorr_bound, uniform_bound

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str | None
    measure: str | None
    theta: float | None
    num_classes: int | None
    k: int | None
    beta: float | None
    over: str
    seed: int
    instances: int
    jobs: int
    output_format: str

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=args.command,
            input_path=getattr(args, "input", None),
            measure=getattr(args, "measure", None),
            theta=getattr(args, "theta", None),
            num_classes=getattr(args, "M", None),
            k=getattr(args, "k", None),
            beta=getattr(args, "beta", None),
            over=getattr(args, "over", "theta"),
            seed=args.seed,
            instances=args.instances,
            jobs=getattr(args, "jobs", 1),
            output_format=args.format,
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pibounds",
        description="Principal-inertia measures and certified Bayes-error bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="json"):
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--instances", type=int, default=200)
        p.add_argument("--format", choices=("json", "csv", "text"), default=fmt_default)

    analyze = sub.add_parser("analyze", help="decomposition and exact measures of a joint pmf")
    analyze.add_argument("--input", required=True)
    common(analyze)

    bound = sub.add_parser("bound", help="a lower bound with certificates")
    bound.add_argument("--input", required=True)
    bound.add_argument("--measure", choices=("inertia", "maxcorr", "chi2", "mi"),
                       default="inertia")
    bound.add_argument("--theta", type=float, default=None)
    bound.add_argument("--M", "--functions", dest="M", type=int, default=None)
    bound.add_argument("--k", type=int, default=None)
    bound.add_argument("--beta", type=float, default=None)
    common(bound)

    verify = sub.add_parser("verify", help="seeded certification sweeps")
    verify.add_argument("--jobs", type=int, default=1)
    common(verify)

    sweep = sub.add_parser("sweep", help="bound versus a swept parameter, CSV-friendly")
    sweep.add_argument("--input", required=True)
    sweep.add_argument("--measure", choices=("maxcorr", "mi"), default="maxcorr")
    sweep.add_argument("--theta", type=float, default=None)
    sweep.add_argument("--M", "--functions", dest="M", type=int, default=None)
    sweep.add_argument("--over", choices=("theta", "lambda1", "M"), default="theta")
    common(sweep, fmt_default="csv")
    return parser


def load_input(path: str) -> JointDistribution:
    """Read a joint pmf from JSON ({"pmf": grid}) or a headerless CSV grid."""
    if path.endswith(".json"):
        with open(path) as handle:
            data = json.load(handle)
        if not isinstance(data, dict) or "pmf" not in data:
            raise PiboundsError(f"{path}: JSON input must be an object with a 'pmf' key")
        return load_joint(data["pmf"])
    grid = np.loadtxt(path, delimiter=",", ndmin=2)
    return load_joint(grid)


def _emit(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        lines = ["key,value"]
        lines.extend(f"{key},{_flat(value)}" for key, value in sorted(payload.items()))
        return "\n".join(lines) + "\n"
    lines = [f"{key}: {_flat(value)}" for key, value in sorted(payload.items())]
    return "\n".join(lines) + "\n"


def _flat(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _cmd_analyze(config: RunConfig) -> tuple[str, int]:
    joint = load_input(config.input_path)
    dec = decompose(joint)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "shape": list(joint.shape),
        "p_x": joint.row_marginal.values.tolist(),
        "p_y": joint.col_marginal.values.tolist(),
        "inertias": dec.lambdas.tolist(),
        "maxcorr": dec.maximal_correlation,
        "chi2": chi_squared_direct(joint),
        "k_correlation": {str(k): float(dec.lambdas[:k].sum())
                          for k in range(1, dec.d + 1)},
        "entropy_x_bits": entropy(joint.row_marginal),
        "mutual_information_bits": oracle.mutual_information(joint),
        "bayes_error": oracle.bayes_error(joint),
    }
    return _emit(payload, config.output_format), 0


def _cmd_bound(config: RunConfig) -> tuple[str, int]:
    joint = load_input(config.input_path)
    p_sorted, _ = joint.row_marginal.sorted()
    payload: dict = {"schema_version": SCHEMA_VERSION, "measure": config.measure}

    if config.measure == "inertia":
        if config.num_classes is not None:
            print("--M is only supported with --measure maxcorr or mi", file=sys.stderr)
            return "", 2
        inp = InertiaBoundInput.from_joint(joint)
        result = inertia_bound(inp)
        payload.update({
            "bound_raw": result.raw_bound,
            "bound_clamped": result.lower_bound,
            "pc_upper": result.pc_upper,
            "beta_star": result.beta_star,
            "alpha_star": result.alpha_star,
            "k_star": result.k_star,
            "lp_value": result.lp_value,
            "lambdas": inp.lambdas.tolist(),
        })
        return _emit(payload, config.output_format), 0

    if config.measure == "maxcorr":
        rho = config.theta if config.theta is not None else decompose(joint).maximal_correlation
        payload["rho"] = float(rho)
        if config.num_classes is not None:
            raw = function_bound(p_sorted, rho, config.num_classes, "maxcorr", clamp=False)
            payload.update({
                "M": config.num_classes,
                "bound_raw": raw,
                "bound_clamped": max(raw, 0.0),
            })
        else:
            result = maxcorr_bound(p_sorted, rho * rho, beta=config.beta)
            payload.update({
                "bound_raw": result.raw_value,
                "bound_clamped": result.value,
                "beta_star": result.beta_star,
                "weak_bound_raw": result.weak_raw,
                "weak_bound_clamped": result.weak_value,
            })
        return _emit(payload, config.output_format), 0

    if config.measure == "chi2":
        if config.num_classes is not None:
            print("--M is only supported with --measure maxcorr or mi", file=sys.stderr)
            return "", 2
        chi2 = config.theta if config.theta is not None else chi_squared_direct(joint)
        m = joint.m
        uniform_gap = float(np.abs(joint.row_marginal.values - 1.0 / m).max())
        payload.update({
            "chi2": float(chi2),
            "assumes_uniform_px": True,
            "uniformity_gap": uniform_gap,
            "bound_raw": uniform_bound(m, chi2, "chi2", clamp=False),
            "bound_clamped": uniform_bound(m, chi2, "chi2"),
        })
        return _emit(payload, config.output_format), 0

    # mutual information
    theta = config.theta if config.theta is not None else oracle.mutual_information(joint)
    payload["theta_bits"] = float(theta)
    if config.num_classes is not None:
        value = function_bound(p_sorted, theta, config.num_classes, "mi")
        payload["M"] = config.num_classes
    else:
        value = fano_error_rate(p_sorted, theta)
    payload.update({"bound_raw": value, "bound_clamped": value})
    return _emit(payload, config.output_format), 0


def _cmd_verify(config: RunConfig) -> tuple[str, int]:
    report = oracle.run_verification(instances=config.instances, seed=config.seed,
                                     jobs=config.jobs)
    code = 0 if report.passed else 1
    if config.output_format == "csv":
        lines = ["check,checked,violations,passed"]
        lines.extend(
            f"{c.name},{c.checked},{len(c.violations)},{c.passed}"
            for c in report.checks
        )
        lines.append(f"total,,{sum(len(c.violations) for c in report.checks)},{report.passed}")
        return "\n".join(lines) + "\n", code
    if config.output_format == "text":
        lines = [f"seed {report.seed}, {report.instances} instances"]
        for check in report.checks:
            status = "pass" if check.passed else "FAIL"
            lines.append(f"  {check.name}: {status} ({check.checked} checked, "
                         f"{len(check.violations)} violations)")
            lines.extend(f"    {v}" for v in check.violations)
        lines.append("result: " + ("pass" if report.passed else "FAIL"))
        return "\n".join(lines) + "\n", code
    return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n", code


def _sweep_rows(config: RunConfig, joint: JointDistribution) -> list[tuple]:
    p_sorted, _ = joint.row_marginal.sorted()
    points = max(2, config.instances)
    exact_all = oracle.bayes_error(joint)

    def maxcorr_pair(rho: float) -> tuple[float, float]:
        if config.num_classes is not None:
            raw = function_bound(p_sorted, rho, config.num_classes, "maxcorr", clamp=False)
            return raw, max(raw, 0.0)
        result = maxcorr_bound(p_sorted, rho * rho)
        return result.raw_value, result.value

    rows = []
    if config.over == "theta":
        if config.measure == "mi":
            grid = np.linspace(0.0, entropy(joint.row_marginal), points)
            for theta in grid:
                if config.num_classes is not None:
                    value = function_bound(p_sorted, float(theta), config.num_classes, "mi")
                else:
                    value = fano_error_rate(p_sorted, float(theta))
                rows.append((float(theta), value, value, exact_all))
        else:
            for rho in np.linspace(0.0, 1.0, points):
                raw, clamped = maxcorr_pair(float(rho))
                rows.append((float(rho), raw, clamped, exact_all))
    elif config.over == "lambda1":
        for lam1 in np.linspace(0.0, 1.0, points):
            result = maxcorr_bound(p_sorted, float(lam1))
            rows.append((float(lam1), result.raw_value, result.value, exact_all))
    else:  # over M
        if config.measure == "mi":
            theta = config.theta if config.theta is not None else oracle.mutual_information(joint)
        else:
            theta = config.theta if config.theta is not None else decompose(joint).maximal_correlation
        for classes in range(1, joint.m + 1):
            if config.measure == "mi":
                raw = function_bound(p_sorted, theta, classes, "mi")
                clamped = raw
            else:
                raw = function_bound(p_sorted, theta, classes, "maxcorr", clamp=False)
                clamped = max(raw, 0.0)
            try:
                exact = min_surjection_error(joint, classes).value
            except TooLarge:
                exact = None
            rows.append((classes, raw, clamped, exact))
    return rows


def _cmd_sweep(config: RunConfig) -> tuple[str, int]:
    joint = load_input(config.input_path)
    rows = _sweep_rows(config, joint)
    if config.output_format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "over": config.over,
            "measure": config.measure,
            "rows": [
                {"param": r[0], "bound_raw": r[1], "bound_clamped": r[2],
                 "exact_if_available": r[3]}
                for r in rows
            ],
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n", 0
    lines = ["param,bound_raw,bound_clamped,exact_if_available"]
    for param, raw, clamped, exact in rows:
        exact_s = "" if exact is None else repr(float(exact))
        lines.append(f"{param},{repr(float(raw))},{repr(float(clamped))},{exact_s}")
    return "\n".join(lines) + "\n", 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "bound": _cmd_bound,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
}


def run(config: RunConfig) -> tuple[str, int]:
    """Execute a command; returns (report text, exit code)."""
    return _COMMANDS[config.command](config)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig.from_args(args)
    try:
        report, code = run(config)
    except (PiboundsError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if report:
        sys.stdout.write(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
