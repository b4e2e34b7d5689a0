"""Command line entry point.

Exit codes
----------
0   success / sufficient condition holds on the sample / oracle found no disagreement
1   necessary condition violated at some sampled point (``check``)
2   algebra rejected by validation
3   inconclusive (``check``), including runs where sampling itself failed
4   oracle disagreed with the checker at some point (``oracle``)
64  usage or configuration error
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .algebra import parse_algebra, validate_algebra
from .checker import Verdict, check_domain
from .domains import parse_domain
from .errors import (
    AlgebraError,
    ConfigError,
    DimensionMismatch,
    HyperconvexError,
    InvalidGamma,
    MalformedMonomials,
    UnknownDomain,
)
from .gamma import formal_gradient, formal_hessian, parse_gamma
from .oracle import Agreement, cross_validate, geometric_probe
from .report import base_report, convexity_section, dumps, load_config, point_record

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_ALGEBRA = 2
EXIT_INCONCLUSIVE = 3
EXIT_DISAGREE = 4
EXIT_USAGE = 64

_VERDICT_EXIT = {
    Verdict.SUFFICIENT: EXIT_OK,
    Verdict.NECESSARY_VIOLATED: EXIT_VIOLATED,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperconvex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("validate-algebra", "derivatives", "check", "oracle"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to the JSON run configuration")
        p.add_argument("--seed", type=int, default=None, help="override checker.seed")
        p.add_argument("--output", default=None, help="also write the report to this path")
        if name == "derivatives":
            p.add_argument("--point", default=None, help="comma-separated real coordinates")
    return parser


def _algebra(cfg):
    tensor, ptilde = parse_algebra(cfg.algebra)
    algebra = validate_algebra(tensor, ptilde)
    return algebra, parse_gamma(cfg.gamma_spec, algebra.m)


def _cmd_validate(cfg, report):
    tensor, ptilde = parse_algebra(cfg.algebra)
    algebra = validate_algebra(tensor, ptilde)
    report["algebra"] = algebra.summary()
    report["status"] = "valid"
    return EXIT_OK


def _cmd_derivatives(cfg, report, point_arg):
    algebra, frame = _algebra(cfg)
    if cfg.domain is None:
        raise ConfigError("derivatives needs a 'domain' entry")
    domain = parse_domain(cfg.domain, algebra.m)
    if point_arg is not None:
        try:
            point = [float(v) for v in point_arg.split(",")]
        except ValueError:
            raise ConfigError(f"cannot parse --point {point_arg!r}") from None
    elif cfg.point is not None:
        point = cfg.point
    else:
        raise _UsageError("derivatives needs --point (or a 'point' config entry)")
    if len(point) != domain.dim:
        raise ConfigError(f"point has {len(point)} coordinates, domain needs {domain.dim}")
    z = np.asarray(point, dtype=float)
    grad = domain.gradient(z)
    hess = domain.hessian(z)
    report["algebra"] = algebra.summary()
    report["gamma"] = frame.matrix
    report["point"] = z
    report["value"] = domain.value(z)
    report["real_gradient"] = grad
    report["real_hessian"] = hess
    report["formal_gradient"] = formal_gradient(algebra, frame, grad)
    report["formal_hessian"] = formal_hessian(algebra, frame, hess)
    return EXIT_OK


def _run_check(cfg):
    algebra, frame = _algebra(cfg)
    if cfg.domain is None:
        raise ConfigError("a 'domain' entry is required")
    domain = parse_domain(cfg.domain, algebra.m)
    if domain.m != algebra.m:
        raise ConfigError("domain and algebra dimensions differ")
    result = check_domain(algebra, frame, domain, cfg.samples, cfg.seed, cfg.tol, cfg.ptilde, cfg.box)
    return algebra, frame, domain, result


def _cmd_check(cfg, report):
    algebra, frame, _, result = _run_check(cfg)
    report["algebra"] = algebra.summary()
    report["gamma"] = frame.matrix
    report["points"] = [point_record(r) for r in result.points]
    report.update(convexity_section(result))
    return _VERDICT_EXIT[result.verdict]


def _cmd_oracle(cfg, report):
    algebra, frame, domain, result = _run_check(cfg)
    rows = []
    disagree = False
    for i, rec in enumerate(result.points):
        cls = rec.classification
        probe = agreement = None
        if cls is not None:
            probe = geometric_probe(domain, cls.frame, cfg.radii, cfg.samples_per_radius,
                                    cfg.oracle_seed + i, cls.witness)
            agreement = cross_validate(cls, probe)
            disagree |= agreement is Agreement.DISAGREE
        rows.append(point_record(rec, probe, agreement))
    report["algebra"] = algebra.summary()
    report["gamma"] = frame.matrix
    report["points"] = rows
    report.update(convexity_section(result))
    report["oracle"] = {"radii": cfg.radii, "samples_per_radius": cfg.samples_per_radius,
                        "seed": cfg.oracle_seed, "disagreements": sum(r["agreement"] == Agreement.DISAGREE for r in rows)}
    return EXIT_DISAGREE if disagree else EXIT_OK


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    cfg = None
    report = base_report(args.command, None)
    try:
        cfg = load_config(args.config, args.seed)
        report = base_report(args.command, cfg)
        if args.command == "validate-algebra":
            code = _cmd_validate(cfg, report)
        elif args.command == "derivatives":
            code = _cmd_derivatives(cfg, report, args.point)
        elif args.command == "check":
            code = _cmd_check(cfg, report)
        else:
            code = _cmd_oracle(cfg, report)
    except (_UsageError, ConfigError, UnknownDomain, MalformedMonomials, InvalidGamma,
            DimensionMismatch, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AlgebraError as exc:
        report["status"] = "invalid"
        report["error"] = f"{type(exc).__name__}: {exc}"
        code = EXIT_ALGEBRA
    except HyperconvexError as exc:
        report["error"] = f"{type(exc).__name__}: {exc}"
        if args.command not in ("check", "oracle"):
            print(f"error: {report['error']}", file=sys.stderr)
            return EXIT_USAGE
        report["verdict"] = Verdict.INCONCLUSIVE
        code = EXIT_INCONCLUSIVE

    report["exit_code"] = code
    text = dumps(report)
    output = args.output or (cfg.output if cfg else None)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
