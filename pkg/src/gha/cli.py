"""Command-line front-end.

Exit codes: 0 success, 1 mathematical negative (not isomorphic, element
not central, relations fail, module outside the three families), 2 input
error (syntax, bad JSON, descriptor constraint violations), 3 numeric
failure (root finding gave up, degree guard tripped).
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import GHAElement, Presentation, commutator
from .config import CONFIG, EnumerationConfig
from .modules import (
    ClassifyError,
    DescriptorError,
    build,
    classify,
    enumerate_simples,
    verify_relations,
)
from .parser import ParseError, parse_element, parse_poly
from .polys import DegreeOverflowError, RootFindingError
from .scalars import BackendMismatchError
from .schemas import (
    SCHEMA_VERSION,
    center_to_json,
    descriptor_from_json,
    descriptor_to_json,
    families_to_json,
    iso_to_json,
    module_from_json,
    module_to_json,
    verify_to_json,
)
from .structure import center, iso_check

MATH_NEGATIVE = 1
INPUT_ERROR = 2
NUMERIC_FAILURE = 3


class _CliError(Exception):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.code = code


def _emit(doc) -> None:
    print(json.dumps(doc, indent=2))


def _read_json_arg(value: str):
    """Inline JSON text, a file path, or '-' for stdin."""
    if value == "-":
        text = sys.stdin.read()
    elif value.lstrip().startswith(("{", "[")):
        text = value
    else:
        try:
            with open(value, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as err:
            raise _CliError(f"cannot read {value}: {err}", INPUT_ERROR)
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise _CliError(f"bad JSON: {err}", INPUT_ERROR)


def _poly(args, attr="f"):
    return parse_poly(getattr(args, attr), args.backend)


def _cmd_normalize(args) -> int:
    f = _poly(args)
    pres = Presentation(f)
    elem = parse_element(args.expr, pres)
    if args.json:
        _emit(
            {
                "schema_version": SCHEMA_VERSION,
                "f": str(f),
                "input": args.expr,
                "normal_form": str(elem),
            }
        )
    else:
        print(elem)
    return 0


def _cmd_central(args) -> int:
    f = _poly(args)
    pres = Presentation(f)
    elem = parse_element(args.expr, pres)
    failing = None
    for name in ("x", "h", "y"):
        comm = commutator(elem, pres.generator(name))
        if not comm.is_zero():
            failing = {"generator": name, "commutator": str(comm)}
            break
    central = failing is None
    if args.json:
        _emit(
            {
                "schema_version": SCHEMA_VERSION,
                "f": str(f),
                "element": args.expr,
                "central": central,
                "failing": failing,
            }
        )
    elif central:
        print("true")
    else:
        print("false")
        print(f"[{failing['generator']}, e] = {failing['commutator']}")
    return 0 if central else MATH_NEGATIVE


def _cmd_center(args) -> int:
    f = _poly(args)
    _emit(center_to_json(str(f), center(f)))
    return 0


def _cmd_iso(args) -> int:
    f1 = parse_poly(args.f1, args.backend)
    f2 = parse_poly(args.f2, args.backend)
    verdict = iso_check(f1, f2, conductor=args.conductor)
    _emit(iso_to_json(str(f1), str(f2), verdict))
    return 0 if verdict.isomorphic else MATH_NEGATIVE


def _cmd_simples(args) -> int:
    f = _poly(args)
    cfg = EnumerationConfig()
    if args.samples is not None:
        if args.samples < 1:
            raise _CliError("--samples must be at least 1", INPUT_ERROR)
        cfg = EnumerationConfig(instantiations=args.samples, orbit_samples=args.samples)
    fams = enumerate_simples(
        f, args.n, cfg, conductor=args.conductor, workers=args.threads
    )
    _emit(families_to_json(str(f), args.n, f.backend, fams))
    return 0


def _cmd_build(args) -> int:
    f = _poly(args)
    doc = _read_json_arg(args.descriptor)
    desc = descriptor_from_json(doc, f.backend)
    mod = build(desc, f)
    _emit(module_to_json(mod))
    return 0


def _load_module(args, f):
    doc = _read_json_arg(args.module)
    try:
        return module_from_json(doc, f.backend)
    except KeyError as err:
        raise _CliError(f"module JSON is missing {err}", INPUT_ERROR)


def _cmd_verify(args) -> int:
    f = _poly(args)
    mod = _load_module(args, f)
    report = verify_relations(mod, f)
    if args.json:
        _emit(verify_to_json(report))
    else:
        print(report)
    return 0 if report.ok else MATH_NEGATIVE


def _cmd_classify(args) -> int:
    f = _poly(args)
    mod = _load_module(args, f)
    desc = classify(mod, f)
    _emit({"schema_version": SCHEMA_VERSION, "descriptor": descriptor_to_json(desc)})
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="gha",
        description="Normal forms, centers, isomorphisms, and simple modules "
        "of the generalized Heisenberg algebra H(f).",
    )
    top.add_argument(
        "--backend",
        choices=("exact", "approx"),
        default="exact",
        help="scalar arithmetic: exact cyclotomic or complex floating point",
    )
    top.add_argument(
        "--conductor",
        type=int,
        default=None,
        metavar="N",
        help="work in the cyclotomic field Q(zeta_N) when hunting roots",
    )
    top.add_argument(
        "--tol",
        type=float,
        default=None,
        metavar="T",
        help="equality tolerance for the approx backend",
    )
    top.add_argument(
        "--threads",
        type=int,
        default=1,
        metavar="K",
        help="worker threads for enumeration",
    )
    top.add_argument(
        "--json",
        action="store_true",
        help="JSON output for the text-first subcommands too",
    )

    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="normal form of an expression in x, h, y, z")
    p.add_argument("-f", required=True, help="defining polynomial f(h)")
    p.add_argument("-e", dest="expr", required=True, help="expression to normalize")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("central", help="does the element commute with everything")
    p.add_argument("-f", required=True)
    p.add_argument("-e", dest="expr", required=True)
    p.set_defaults(func=_cmd_central)

    p = sub.add_parser("center", help="generators of the center of H(f)")
    p.add_argument("-f", required=True)
    p.set_defaults(func=_cmd_center)

    p = sub.add_parser("iso", help="decide H(f1) = H(f2) and produce a witness")
    p.add_argument("-f1", required=True)
    p.add_argument("-f2", required=True)
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("simples", help="families of n-dimensional simple modules")
    p.add_argument("-f", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument(
        "--samples",
        type=int,
        default=None,
        metavar="K",
        help="instantiations per family and seeds per continuum",
    )
    p.set_defaults(func=_cmd_simples)

    p = sub.add_parser("build", help="matrices of a module from its descriptor")
    p.add_argument("-f", required=True)
    p.add_argument(
        "--descriptor", required=True, help="descriptor JSON (inline, path, or -)"
    )
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("verify", help="check the defining relations on matrices")
    p.add_argument("-f", required=True)
    p.add_argument("--module", required=True, help="module JSON (inline, path, or -)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("classify", help="which family a module belongs to")
    p.add_argument("-f", required=True)
    p.add_argument("--module", required=True, help="module JSON (inline, path, or -)")
    p.set_defaults(func=_cmd_classify)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.tol is not None:
        if args.tol <= 0:
            print("error: --tol must be positive", file=sys.stderr)
            return INPUT_ERROR
        CONFIG.tol = args.tol
    if args.conductor is not None and args.conductor < 1:
        print("error: --conductor must be a positive integer", file=sys.stderr)
        return INPUT_ERROR
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return INPUT_ERROR
    try:
        return args.func(args)
    except _CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR
    except (DescriptorError, BackendMismatchError) as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR
    except ClassifyError as err:
        print(f"not classifiable: {err}", file=sys.stderr)
        return MATH_NEGATIVE
    except (RootFindingError, DegreeOverflowError) as err:
        print(f"numeric failure: {err}", file=sys.stderr)
        return NUMERIC_FAILURE
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
