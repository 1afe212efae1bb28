"""``fano10 gen | verify | report``.

Exit codes: 0 all checks pass, 1 a check failed, 2 degenerate input (resample
budget exhausted or a genericity condition fails), 64 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .exactalg.fields import FieldError, parse_field
from .instance import (
    InstanceError, config_of, digest, dumps, generate, load, make_report, normal_form_of, omega_of,
    render_text, reproduction_checks,
)
from .records import DegenerateInput
from .suites import SUITES, ConfigError, RunConfig, run

EXIT_OK, EXIT_FAIL, EXIT_DEGENERATE, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _config_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", default="fp:10007", help="q | fp:p | fpk:p:c0,...,ck (default fp:10007)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--suite", choices=SUITES, default=None, help="default: all")
    p.add_argument("--trials", type=int, default=None, help="identity-testing trials (default 20)")
    p.add_argument("--budget", type=int, default=None, help="resample budget (default 16)")
    p.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fano10", description="Exact verification of the nodal Fano threefold computations.")
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    g = sub.add_parser("gen", help="write a seeded instance file")
    _config_args(g)
    g.add_argument("--engineered", choices=("tangent",), default=None,
                   help="write a deliberately degenerate quadric instead of sampling")
    v = sub.add_parser("verify", help="run suites and write a report")
    _config_args(v)
    v.add_argument("--instance", default=None, help="instance file from `gen` (overrides --field/--seed/--budget)")
    r = sub.add_parser("report", help="render a report")
    r.add_argument("report")
    r.add_argument("--format", default="text", help="text | json")
    r.add_argument("--out", default=None)
    return parser


def _config(args) -> RunConfig:
    try:
        field = parse_field(args.field)
    except FieldError as exc:
        raise UsageError(f"--field: {exc}") from exc
    try:
        return RunConfig(field, args.seed, args.suite or "all", 20 if args.trials is None else args.trials,
                         16 if args.budget is None else args.budget)
    except ConfigError as exc:
        raise UsageError(str(exc)) from exc


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_gen(args) -> int:
    cfg = _config(args)
    try:
        doc = generate(cfg, args.engineered)
    except DegenerateInput as exc:
        _write(dumps(make_report(cfg, [], degenerate=exc)), args.out)
        return EXIT_DEGENERATE
    except ConfigError as exc:
        raise UsageError(str(exc)) from exc
    _write(dumps(doc), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    omega = normal = None
    inst_digest = None
    checks = []
    if args.instance is not None:
        try:
            text = Path(args.instance).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read instance: {exc}") from exc
        doc = load(text)
        if doc.get("kind") != "instance":
            raise InstanceError("not an instance document")
        base = config_of(doc)
        cfg = RunConfig(base.field, base.seed, args.suite or base.suite,
                        base.trials if args.trials is None else args.trials, base.budget)
        omega = omega_of(doc, cfg.field)
        normal = normal_form_of(doc, cfg.field)
        inst_digest = digest(text)
    else:
        cfg = _config(args)
        doc = None
    try:
        if doc is not None:
            checks.extend(reproduction_checks(doc, cfg))
        checks.extend(run(cfg, omega, normal))
    except DegenerateInput as exc:
        _write(dumps(make_report(cfg, checks, inst_digest, degenerate=exc)), args.out)
        return EXIT_DEGENERATE
    except ConfigError as exc:
        raise UsageError(str(exc)) from exc
    report = make_report(cfg, checks, inst_digest)
    _write(dumps(report), args.out)
    return EXIT_OK if report["verdict"] == "pass" else EXIT_FAIL


def cmd_report(args) -> int:
    if args.format not in ("text", "json"):
        raise UsageError(f"unknown format {args.format!r} (text | json)")
    try:
        text = Path(args.report).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read report: {exc}") from exc
    doc = load(text)
    if doc.get("kind") != "report":
        raise InstanceError("not a report document")
    _write(dumps(doc) if args.format == "json" else render_text(doc), args.out)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return {"gen": cmd_gen, "verify": cmd_verify, "report": cmd_report}[args.cmd](args)
    except (UsageError, InstanceError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
