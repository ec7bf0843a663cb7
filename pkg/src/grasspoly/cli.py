"""``grasspoly`` command line.

Exit codes: 0 on success, 1 when a verification fails, 2 on bad input
(argparse errors, unparsable values, unsupported parameters, size guards).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .chains import GenericVectorExhausted, HomologySizeError, grassmann_homology
from .configurations import Configuration, NotGeneralPositionError
from .fields import FieldDescriptor
from .grassmann import ResamplingExhausted, zeta_demo
from .polylog import PrecisionPolicy, UnsupportedDiscriminant, bw_d1, bw_d2, bw_dm, li, parse_complex
from .suites import SUITES, SuiteInputError, SuiteParameters, run_suite


class InputError(Exception):
    pass


def _field(text: str) -> FieldDescriptor:
    try:
        return FieldDescriptor.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _emit(report: dict, out: str | None):
    text = json.dumps(report, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_configurations(path: str, field: FieldDescriptor) -> list:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    items = data if isinstance(data, list) else [data]
    out = []
    for obj in items:
        if _is_numeric(obj):
            out.append(obj)
        else:
            out.append(Configuration.from_json(obj, field))
    return out


def _is_numeric(obj) -> bool:
    return any(isinstance(x, dict) and "re" in x for v in obj["vectors"] for x in v)


# --------------------------------------------------------------------------
# commands


def cmd_verify(args) -> tuple[dict, int]:
    params = SuiteParameters(
        m=args.m, n=args.n, trials=args.trials, prec=args.prec, seed=args.seed, field=args.field,
    )
    if args.config:
        params.configurations = _load_configurations(args.config, args.field)
    report = run_suite(args.suite, params)
    return report, 0 if report["pass"] else 1


def cmd_eval(args) -> tuple[dict, int]:
    policy = PrecisionPolicy(args.prec)
    x = parse_complex(args.x, policy)
    if args.what == "li":
        value = li(args.m, x, policy)
        result = {"re": policy.format(value.real), "im": policy.format(value.imag)}
    elif args.what == "d1":
        result = policy.format(bw_d1(x, policy))
    elif args.what == "d2":
        result = policy.format(bw_d2(x, policy))
    else:
        result = policy.format(bw_dm(args.m, x, policy))
    report = {
        "schema": 1,
        "command": "eval",
        "function": args.what,
        "m": args.m if args.what in ("li", "dm") else None,
        "x": {"re": policy.format(x.real), "im": policy.format(x.imag)},
        "prec": args.prec,
        "value": result,
    }
    return report, 0


def cmd_homology(args) -> tuple[dict, int]:
    if not args.field.is_finite:
        raise InputError("homology needs a prime field, e.g. --field fp:3")
    report = grassmann_homology(args.field, args.m, args.max_n)
    out = {"schema": 1, "command": "homology"}
    out.update(report.to_json())
    out["pass"] = report.boundary_squared_zero
    return out, 0 if report.boundary_squared_zero else 1


def cmd_zeta_demo(args) -> tuple[dict, int]:
    report = zeta_demo(args.disc, PrecisionPolicy(args.prec))
    out = {"schema": 1, "command": "zeta-demo"}
    out.update(report.to_json())
    return out, 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grasspoly", description="Grassmann polylogarithm toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--timing", action="store_true", help="add wall-clock time to the report")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--m", type=_positive, default=2)
    v.add_argument("--n", type=int, default=3)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--prec", type=int, default=50)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--field", type=_field, default=FieldDescriptor.parse("q"))
    v.add_argument("--config", help="JSON file with one configuration or a list of them")
    common(v)
    v.set_defaults(handler=cmd_verify)

    e = sub.add_parser("eval", help="evaluate a polylogarithm")
    e.add_argument("what", choices=["li", "d1", "d2", "dm"])
    e.add_argument("--x", required=True, help='complex argument such as "0.5+1i"')
    e.add_argument("--m", type=_positive, default=2)
    e.add_argument("--prec", type=int, default=50)
    common(e)
    e.set_defaults(handler=cmd_eval)

    h = sub.add_parser("homology", help="Grassmann homology over a prime field")
    h.add_argument("--field", type=_field, required=True)
    h.add_argument("--m", type=_positive, default=2)
    h.add_argument("--max-n", dest="max_n", type=int, default=3)
    common(h)
    h.set_defaults(handler=cmd_homology)

    z = sub.add_parser("zeta-demo", help="zeta(2) L(2, chi_d) against a Bloch-Wigner value")
    z.add_argument("--disc", type=int, default=-3)
    z.add_argument("--prec", type=int, default=40)
    common(z)
    z.set_defaults(handler=cmd_zeta_demo)
    return parser


_INPUT_ERRORS = (
    InputError,
    SuiteInputError,
    HomologySizeError,
    GenericVectorExhausted,
    NotGeneralPositionError,
    UnsupportedDiscriminant,
    ResamplingExhausted,
    ValueError,
    KeyError,
    ZeroDivisionError,
    OSError,
)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        report, code = args.handler(args)
    except _INPUT_ERRORS as exc:
        sys.stderr.write(f"grasspoly: error: {exc}\n")
        return 2
    if args.timing:
        report["wall_time"] = f"{time.perf_counter() - start:.3f}"
    _emit(report, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
