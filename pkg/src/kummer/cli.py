"""Command-line entry point.

    verify --input case.json --report out.json [--prime-bound N]
           [--mode certify|heuristic] [--audit example1|example2|example3]
           [--force-fail CHECK]

Exit codes: 0 = all conclusions asserted, 2 = conclusions withheld,
1 = input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import EngineError, InputError
from .pipeline import (
    HYPOTHESIS_CHECKS,
    audit_example_1_odd,
    audit_example_2_goursat,
    audit_example_3_desk,
    parse_case,
    run_case,
)


def build_parser():
    p = argparse.ArgumentParser(
        prog="verify",
        description="Verify Picard/Brauer hypotheses and conclusions for Kummer "
        "varieties attached to 2-coverings of products of hyperelliptic Jacobians.",
    )
    p.add_argument("--input", help="case file (JSON)")
    p.add_argument("--report", help="write the report JSON here (default: stdout)")
    p.add_argument("--prime-bound", type=int, default=None, help="override the case prime bound")
    p.add_argument("--mode", choices=["certify", "heuristic"], default=None)
    p.add_argument(
        "--audit",
        choices=["example1", "example2", "example3"],
        help="run a bundled audit instead of a case",
    )
    p.add_argument(
        "--force-fail",
        choices=list(HYPOTHESIS_CHECKS),
        help="flip one hypothesis check to failed (fault-injection testing)",
    )
    return p


def _emit(payload: str, path):
    if path:
        with open(path, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.audit:
            record = {
                "example1": lambda: audit_example_1_odd(3),
                "example2": audit_example_2_goursat,
                "example3": audit_example_3_desk,
            }[args.audit]()
            _emit(json.dumps({"audit": args.audit, "record": record}, sort_keys=True, indent=2) + "\n", args.report)
            return 0
        if not args.input:
            raise InputError("--input is required unless --audit is given")
        try:
            with open(args.input) as fh:
                obj = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read case file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"case file is not valid JSON: {exc}") from exc
        if args.prime_bound is not None:
            obj["prime_bound"] = args.prime_bound
        if args.mode is not None:
            obj["mode"] = args.mode
        case = parse_case(obj)
        report = run_case(case, force_fail=args.force_fail)
        _emit(report.to_json(), args.report)
        return 0 if report.asserted else 2
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except EngineError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
