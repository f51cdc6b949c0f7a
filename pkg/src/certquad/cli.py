"""Command-line front end.

Two operations share one binary:

- ``run``: apply one rule to one registry function and report the
  approximation, a reference value, the measured error, and the requested
  certificate.
- ``compare``: rank several rules on the same problem by their level-3
  certificate.

JSON output is deterministic: floats are printed with 17 significant
digits (enough to reproduce each double bit for bit), keys keep insertion
order, and the only non-reproducible field, wall-clock ``timing_s``, can
be dropped with ``--no-timing``.

Exit codes: 0 success, 2 validation error (unknown names, bad parameters,
malformed flags), 3 adaptive run that failed to converge within the panel
budget.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any

from .bounds import level3_factor
from .engine import (
    DEFAULT_MAX_PANELS,
    apply_rule,
    integrate_adaptive,
    integrate_composite,
    oracle_integral,
)
from .functions import FUNCTION_NAMES, make_function
from .geometry import L1, LINF, Interval, NormRegime, lp, uniform_partition
from .rules import PRESET_NAMES, QuadratureRule, preset
from .seminorms import DEFAULT_RESOLUTION, seminorm
from .bounds import bound_level3

__all__ = ["RunConfig", "Report", "run", "compare_rules", "main"]

_DEFAULT_ORACLE_RESOLUTION = 65536
_ORACLE_ENV = "QUAD_ORACLE_RESOLUTION"


def parse_rule_spec(spec: str) -> QuadratureRule:
    """``NAME`` or ``NAME:p1,p2,...`` into a preset rule."""
    name, _, raw = spec.partition(":")
    name = name.strip().lower()
    if not raw:
        return preset(name)
    try:
        params = tuple(float(p) for p in raw.split(","))
    except ValueError:
        raise ValueError(f"malformed rule parameters in {spec!r}") from None
    return preset(name, *params)


def parse_regime_spec(spec: str) -> NormRegime:
    """``l1``, ``lp:P`` or ``linf`` into a :class:`NormRegime`."""
    s = spec.strip().lower()
    if s == "l1":
        return L1
    if s == "linf":
        return LINF
    if s.startswith("lp:"):
        try:
            return lp(float(s[3:]))
        except ValueError as exc:
            raise ValueError(f"malformed regime {spec!r}: {exc}") from None
    raise ValueError(f"unknown regime {spec!r}; expected l1, lp:P or linf")


def _oracle_resolution_from_env() -> int:
    raw = os.environ.get(_ORACLE_ENV)
    if raw is None:
        return _DEFAULT_ORACLE_RESOLUTION
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{_ORACLE_ENV} must be an integer, got {raw!r}") from None
    return value


@dataclass
class RunConfig:
    """Everything a ``run`` needs; mirrors the CLI flags."""

    function: str
    space: str | None = None
    interval: tuple[float, float] = (0.0, 1.0)
    rule: str = "trapezoid"
    regime: str = "linf"
    level: int = 2
    mode: str = "single"
    resolution: int = DEFAULT_RESOLUTION
    threads: int = 1
    max_panels: int = DEFAULT_MAX_PANELS
    oracle_resolution: int | None = None
    self_check: bool = False
    include_timing: bool = True


@dataclass
class Report:
    """Result of a run, ready for serialisation."""

    data: dict[str, Any] = field(default_factory=dict)
    converged: bool = True

    def to_dict(self) -> dict[str, Any]:
        return self.data


def _mode_dispatch(config: RunConfig, fn, rule, interval, regime):
    mode, _, param = config.mode.partition(":")
    mode = mode.strip().lower()
    if mode == "single":
        if param:
            raise ValueError("mode 'single' takes no parameter")
        partition = uniform_partition(interval, 1)
        return integrate_composite(
            fn, rule, partition, regime, config.level, config.resolution, config.threads
        )
    if mode == "composite":
        try:
            panels = int(param)
        except ValueError:
            raise ValueError(f"mode 'composite' needs a panel count, got {param!r}") from None
        if panels < 1:
            raise ValueError(f"composite panel count must be >= 1, got {panels}")
        partition = uniform_partition(interval, panels)
        return integrate_composite(
            fn, rule, partition, regime, config.level, config.resolution, config.threads
        )
    if mode == "adaptive":
        try:
            tol = float(param)
        except ValueError:
            raise ValueError(f"mode 'adaptive' needs a tolerance, got {param!r}") from None
        # the adaptive driver is built on level-2 panel certificates; the
        # requested level is ignored and the report says level 2
        return integrate_adaptive(
            fn, rule, interval, regime, tol, config.max_panels, config.resolution
        )
    raise ValueError(f"unknown mode {config.mode!r}; expected single, composite:M or adaptive:TOL")


def run(config: RunConfig) -> Report:
    """Execute one run and assemble its report."""
    started = time.perf_counter()
    fn = make_function(config.function, config.space)
    rule = parse_rule_spec(config.rule)
    regime = parse_regime_spec(config.regime)
    a, b = config.interval
    interval = Interval(float(a), float(b))
    if config.level not in (1, 2, 3):
        raise ValueError(f"level must be 1, 2 or 3, got {config.level}")
    if config.resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {config.resolution}")

    result = _mode_dispatch(config, fn, rule, interval, regime)

    oracle_resolution = (
        config.oracle_resolution
        if config.oracle_resolution is not None
        else _oracle_resolution_from_env()
    )
    reference = oracle_integral(fn, interval, oracle_resolution)
    space = fn.space
    actual_error = space.norm(space.subtract(result.approximation, reference))

    cert = result.certificate
    panel_rows = []
    for panel, panel_cert in result.panels:
        panel_value = apply_rule(fn, rule, panel)
        panel_rows.append(
            [panel.a, panel.b, space.norm(panel_value), panel_cert.bound]
        )

    elapsed = time.perf_counter() - started
    data: dict[str, Any] = {
        "schema": 1,
        "config": {
            "function": fn.name,
            "space": space.label,
            "interval": [interval.a, interval.b],
            "rule": config.rule,
            "regime": regime.label,
            "level": cert.level,
            "mode": config.mode,
            "resolution": config.resolution,
            "threads": config.threads,
            "max_panels": config.max_panels,
            "oracle_resolution": oracle_resolution,
        },
        "approximation": space.to_components(result.approximation),
        "oracle": space.to_components(reference),
        "actual_error": actual_error,
        "certificate": {
            "bound": cert.bound,
            "level": cert.level,
            "regime": cert.regime.label if cert.regime is not None else None,
            "certified": cert.certified,
            "rule": cert.rule_name,
            "segment_contributions": list(cert.segment_contributions),
        },
        "panels": {
            "count": len(result.panels),
            "converged": result.converged,
            "rows": panel_rows,
        },
        "evaluations": result.evaluations,
    }
    if config.include_timing:
        data["timing_s"] = elapsed

    if config.self_check and cert.certified and not actual_error <= cert.bound:
        raise AssertionError(
            f"self-check failed: actual error {actual_error!r} exceeds "
            f"certified bound {cert.bound!r}"
        )
    return Report(data=data, converged=result.converged)


def compare_rules(
    function_name: str,
    interval: Interval,
    regime: NormRegime,
    rules,
    space: str | None = None,
    resolution: int = DEFAULT_RESOLUTION,
    oracle_resolution: int | None = None,
) -> list[dict[str, Any]]:
    """One row per rule, sorted by level-3 certificate (ascending, stable).

    The ``constant`` column is the level-3 geometry factor on the unit
    interval, i.e. the coefficient a closed-form table would list.
    """
    fn = make_function(function_name, space)
    space_obj = fn.space
    if oracle_resolution is None:
        oracle_resolution = _oracle_resolution_from_env()
    reference = oracle_integral(fn, interval, oracle_resolution)
    unit = Interval(0.0, 1.0)

    rows = []
    for spec in rules:
        rule = parse_rule_spec(spec) if isinstance(spec, str) else spec
        estimate = seminorm(fn, interval, regime, resolution)
        cert = bound_level3(estimate, rule, interval)
        approx = apply_rule(fn, rule, interval)
        rows.append(
            {
                "rule": spec if isinstance(spec, str) else rule.name,
                "constant": level3_factor(rule, unit, regime),
                "bound": cert.bound,
                "actual_error": space_obj.norm(space_obj.subtract(approx, reference)),
                "certified": cert.certified,
            }
        )
    rows.sort(key=lambda row: row["bound"])
    return rows


def _format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("nonfinite value in report")
    s = format(x, ".17g")
    if not any(c in s for c in ".eE"):
        s += ".0"
    return s


def dumps_json(obj: Any, indent: int = 0) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        import json as _json

        return _json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [
            f'{inner}"{key}": {dumps_json(value, indent + 1)}'
            for key, value in obj.items()
        ]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rendered = [dumps_json(v, indent + 1) for v in obj]
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(rendered) + "]"
        parts = [f"{inner}{r}" for r in rendered]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _emit_run(report: Report, output: str) -> str:
    data = report.to_dict()
    if output == "json":
        return dumps_json(data)
    if output == "csv":
        lines = ["panel_a,panel_b,approx_norm,panel_bound"]
        for row in data["panels"]["rows"]:
            lines.append(",".join(_format_float(float(v)) for v in row))
        return "\n".join(lines)
    if output == "table":
        cert = data["certificate"]
        lines = [
            f"function      {data['config']['function']} in {data['config']['space']}",
            f"interval      [{data['config']['interval'][0]}, {data['config']['interval'][1]}]",
            f"rule          {data['config']['rule']}",
            f"regime/level  {cert['regime'] or 'n/a'} / {cert['level']}",
            f"mode          {data['config']['mode']}",
            f"approximation {data['approximation']}",
            f"actual error  {data['actual_error']:.6e}",
            f"bound         {cert['bound']:.6e}  certified={cert['certified']}",
            f"panels        {data['panels']['count']}  converged={data['panels']['converged']}",
        ]
        return "\n".join(lines)
    raise ValueError(f"unknown output mode {output!r}")


def _emit_compare(rows: list[dict[str, Any]], output: str) -> str:
    if output == "json":
        return dumps_json({"schema": 1, "rows": rows})
    if output == "csv":
        lines = ["rule,constant,bound,actual_error,certified"]
        for row in rows:
            lines.append(
                ",".join(
                    [
                        str(row["rule"]),
                        _format_float(row["constant"]),
                        _format_float(row["bound"]),
                        _format_float(row["actual_error"]),
                        str(row["certified"]).lower(),
                    ]
                )
            )
        return "\n".join(lines)
    if output == "table":
        header = f"{'rule':<28} {'constant':>14} {'bound':>14} {'actual':>14}"
        lines = [header, "-" * len(header)]
        for row in rows:
            lines.append(
                f"{row['rule']:<28} {row['constant']:>14.6e} "
                f"{row['bound']:>14.6e} {row['actual_error']:>14.6e}"
            )
        return "\n".join(lines)
    raise ValueError(f"unknown output mode {output!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="certquad",
        description="Certified quadrature: convex-combination rules with error certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="integrate one function with one rule")
    run_p.add_argument("--function", required=True,
                       help=f"registry function ({', '.join(FUNCTION_NAMES)})")
    run_p.add_argument("--space", default=None,
                       help="space label for const/affine (scalar, r2, r3, r3max, c2, m22)")
    run_p.add_argument("--interval", nargs=2, type=float, default=(0.0, 1.0),
                       metavar=("A", "B"))
    run_p.add_argument("--rule", default="trapezoid",
                       help=f"preset rule, NAME or NAME:params ({', '.join(PRESET_NAMES)})")
    run_p.add_argument("--regime", default="linf", help="l1, lp:P or linf")
    run_p.add_argument("--level", type=int, default=2, choices=(1, 2, 3),
                       help="certificate level (adaptive mode always reports level 2)")
    run_p.add_argument("--mode", default="single", help="single, composite:M or adaptive:TOL")
    run_p.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION,
                       help="seminorm quadrature panels / sup sample count")
    run_p.add_argument("--threads", type=int, default=1,
                       help="panel evaluation threads (composite mode)")
    run_p.add_argument("--max-panels", type=int, default=DEFAULT_MAX_PANELS,
                       help="adaptive panel budget")
    run_p.add_argument("--output", default="table", choices=("json", "csv", "table"))
    run_p.add_argument("--self-check", action="store_true",
                       help="assert actual error <= bound for certified certificates")
    run_p.add_argument("--no-timing", action="store_true",
                       help="omit wall-clock timing from the report (reproducible output)")

    cmp_p = sub.add_parser("compare", help="rank rules by level-3 certificate")
    cmp_p.add_argument("--function", required=True)
    cmp_p.add_argument("--space", default=None)
    cmp_p.add_argument("--interval", nargs=2, type=float, default=(0.0, 1.0),
                       metavar=("A", "B"))
    cmp_p.add_argument("--regime", default="linf")
    cmp_p.add_argument("--rules", required=True,
                       help="comma-separated rule specs, e.g. trapezoid,qt,simpson")
    cmp_p.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    cmp_p.add_argument("--output", default="table", choices=("json", "csv", "table"))
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0].startswith("-") and argv[0] not in ("-h", "--help"):
        argv.insert(0, "run")  # bare flag style defaults to the run command
    parser = _build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == "run":
            config = RunConfig(
                function=args.function,
                space=args.space,
                interval=(args.interval[0], args.interval[1]),
                rule=args.rule,
                regime=args.regime,
                level=args.level,
                mode=args.mode,
                resolution=args.resolution,
                threads=args.threads,
                max_panels=args.max_panels,
                self_check=args.self_check,
                include_timing=not args.no_timing,
            )
            report = run(config)
            print(_emit_run(report, args.output))
            return 0 if report.converged else 3
        rows = compare_rules(
            args.function,
            Interval(args.interval[0], args.interval[1]),
            parse_regime_spec(args.regime),
            [s.strip() for s in args.rules.split(",") if s.strip()],
            space=args.space,
            resolution=args.resolution,
        )
        print(_emit_compare(rows, args.output))
        return 0
    except AssertionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
