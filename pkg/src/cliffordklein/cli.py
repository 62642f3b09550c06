"""Command-line front end.

    ck algebra new <config>
    ck plane <config> --which C|Cperp
    ck verify <config> --suite <name> [--seed N] [--trials N] [--bound N]
    ck mutate <config> [--seed N] [--trials N]

Machine-readable JSON goes to stdout, human summaries to stderr.  Exit
codes: 0 success, 2 config error, 3 algebra validation failure, 4
verification failure.  CK_WORKERS shards verification trials across
processes; results are merged by trial index and identical to a serial run.
"""

import argparse
import json
import sys

from . import clifford, verify
from .errors import (BadStructureConstants, CharMismatch, CliffordKleinError,
                     ConfigError, NotDivisionAlgebra)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VALIDATION = 3
EXIT_VERIFICATION = 4


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            config = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigError("config must be a JSON object")
    return config


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _info(message: str) -> None:
    print(message, file=sys.stderr)


def cmd_algebra_new(args) -> int:
    config = _load_config(args.config)
    algebra = verify.algebra_from_config(config)
    _emit({
        "case": algebra.case,
        "field": str(algebra.field),
        "a": str(algebra.a),
        "b": str(algebra.b),
        "certificate": algebra.certificate.describe(),
        "multiplication_table": algebra.table_json(),
    })
    _info(f"algebra {algebra.case} over {algebra.field}: "
          f"division certificate {algebra.certificate.describe()}")
    return EXIT_OK


def cmd_plane(args) -> int:
    config = _load_config(args.config)
    algebra = verify.algebra_from_config(config)
    if args.which == "C":
        parallelism = clifford.plane_C(algebra)
    else:
        parallelism = clifford.plane_Cprime(algebra)
    _emit({"which": args.which, **parallelism.to_json()})
    _info(f"plane {args.which}: externality {parallelism.certificate.describe()}")
    return EXIT_OK


def cmd_verify(args) -> int:
    config = _load_config(args.config)
    ctx = verify.VerifyContext(config, args.bound)
    workers = verify.workers_from_env()
    reports = verify.run_suites(ctx, args.suite, args.seed, args.trials, workers)
    _emit(reports if args.suite == "all" else reports[0])
    failed = False
    for report in reports:
        status = "ok" if report["passed"] == report["trials"] else "FAILED"
        failed = failed or status == "FAILED"
        _info(f"{report['suite']}: {report['passed']}/{report['trials']} {status} "
              f"({report['wall_time_ms']} ms)")
    return EXIT_VERIFICATION if failed else EXIT_OK


def cmd_mutate(args) -> int:
    config = _load_config(args.config)
    report = verify.run_mutate(config, args.seed, args.trials)
    _emit(report)
    broken = ", ".join(report["broken_suites"]) or "none"
    _info(f"mutated plane broke: {broken}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ck",
        description="Construct and verify translation parallelisms over exact fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    algebra = sub.add_parser("algebra", help="algebra operations")
    algebra_sub = algebra.add_subparsers(dest="algebra_command", required=True)
    new = algebra_sub.add_parser("new", help="validate a config and print the algebra")
    new.add_argument("config")
    new.set_defaults(handler=cmd_algebra_new)

    plane = sub.add_parser("plane", help="print a kernel plane")
    plane.add_argument("config")
    plane.add_argument("--which", choices=("C", "Cperp"), required=True)
    plane.set_defaults(handler=cmd_plane)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("config")
    ver.add_argument("--suite", default="all",
                     choices=verify.SUITE_NAMES + ("all",))
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--trials", type=int, default=verify.DEFAULT_TRIALS)
    ver.add_argument("--bound", type=int, default=None,
                     help="scalar size bound (default 10 over Q, 2 over F2(x,y))")
    ver.set_defaults(handler=cmd_verify)

    mut = sub.add_parser("mutate", help="negative control with a broken plane")
    mut.add_argument("config")
    mut.add_argument("--seed", type=int, default=0)
    mut.add_argument("--trials", type=int, default=20)
    mut.set_defaults(handler=cmd_mutate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        _info(f"config error: {exc}")
        return EXIT_CONFIG
    except NotDivisionAlgebra as exc:
        payload = {"error": "not_division_algebra", "message": str(exc)}
        if exc.witness is not None:
            payload["witness"] = [str(c) for c in exc.witness]
        _emit(payload)
        _info(f"validation failure: {exc}")
        return EXIT_VALIDATION
    except (BadStructureConstants, CharMismatch) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        _info(f"validation failure: {exc}")
        return EXIT_VALIDATION
    except CliffordKleinError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        _info(f"error: {exc}")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
