"""monoconj command line: one JSON document per invocation.

Exit codes: 0 success (and "conjugate"), 1 usage error, 2 parse or
validation error, 3 "not conjugate", 4 "undecided", 5 an internal cap
was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dyndeg import DEFAULT_TOLERANCE, degree_growth, dynamical_degrees, root_census
from .gln import integral_conjugacy
from .matrix import IntMatrix, char_poly
from .monomial import INFINITE, MapSyntaxError, MapValueError, MonomialMap, parse_map, print_map
from .monomial import order as map_order
from .monomial import projective_degree
from .sail import DEFAULT_BOUND as SAIL_BOUND
from .sail import SailBoundError, sail
from .sl2 import (
    ComplexSpectrum,
    DetMinusOne,
    DoubleRoot,
    LLSPeriod,
    ReductionCapExceeded,
    SpectrumError,
    classify,
    enumerate_reduced,
    lls_period,
    realize,
    reduce,
)
from .verdict import Conjugate, NotConjugate

CONJUGATE_BOUND = 30
EXIT_USAGE, EXIT_INPUT, EXIT_NOT_CONJUGATE, EXIT_UNDECIDED, EXIT_CAP = 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input handling ------------------------------------------------------------------


def _read_matrix(text: str) -> IntMatrix:
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text(encoding="utf-8")
        except OSError as exc:
            raise ValueError(f"cannot read matrix file: {exc}") from None
    return IntMatrix.from_json(text.strip())


def _looks_like_matrix(text: str) -> bool:
    return text.lstrip().startswith(("[", "@"))


def _load(args, slot: str = "input") -> MonomialMap:
    """The map given positionally or via --matrix / --map."""
    given = [x for x in (getattr(args, slot, None), args.matrix, args.map) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one input: positional, --matrix or --map")
    if args.matrix is not None:
        return MonomialMap(_read_matrix(args.matrix))
    if args.map is not None:
        return parse_map(args.map)
    text = given[0]
    return MonomialMap(_read_matrix(text)) if _looks_like_matrix(text) else parse_map(text)


def _load_pair(args) -> tuple[MonomialMap, MonomialMap]:
    def one(text):
        return MonomialMap(_read_matrix(text)) if _looks_like_matrix(text) else parse_map(text)

    return one(args.first), one(args.second)


def _read_sequence(text: str) -> LLSPeriod:
    text = text.strip()
    try:
        data = json.loads(text) if text.startswith("[") else [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"cannot read sequence {text!r}") from None
    if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
        raise ValueError("sequence must be a list of integers")
    return LLSPeriod(data)


def _two_by_two(f: MonomialMap) -> IntMatrix:
    if f.n != 2:
        raise SpectrumError(f"this command needs a 2x2 matrix, got {f.n}x{f.n}")
    return f.matrix


# -- subcommands -----------------------------------------------------------------------


def cmd_parse(args):
    f = _load(args)
    return 0, {"matrix": f.matrix.tolist(), "n": f.n}


def cmd_print(args):
    f = _load(args)
    return 0, {"map": print_map(f)}


def cmd_classify(args):
    c = classify(_two_by_two(_load(args)))
    out = {"class": c.tag}
    if isinstance(c, ComplexSpectrum):
        out.update(representative=print_map(c.representative), order=c.order)
    elif isinstance(c, DoubleRoot):
        out.update(root_sign=c.root_sign, n=c.n, representative=print_map(c.representative))
    elif isinstance(c, DetMinusOne):
        out.update(char_poly=str(c.char_poly), char_poly_coeffs=c.char_poly.to_list())
    else:
        out.update(eig_sign=c.eig_sign, lls=list(c.lls), minimal_period=list(c.lls.minimal_period()))
    return 0, out


def cmd_lls(args):
    m = _two_by_two(_load(args))
    lls = lls_period(m)
    return 0, {
        "lls": list(lls),
        "minimal_period": list(lls.minimal_period()),
        "eig_sign": 1 if m.trace() > 0 else -1,
    }


def cmd_reduce(args):
    r = reduce(_two_by_two(_load(args)))
    return 0, {"reduced": r.reduced.tolist(), "sign": r.sign, "conjugator": r.conjugator.tolist()}


def cmd_realize(args):
    seq = _read_sequence(args.sequence)
    return 0, {"lls": list(seq), "matrix": realize(seq).tolist()}


def cmd_enumerate(args):
    found = enumerate_reduced(_two_by_two(_load(args)))
    return 0, {"count": len(found), "reduced": [m.tolist() for m in found]}


def cmd_conjugate(args):
    f, g = _load_pair(args)
    bound = CONJUGATE_BOUND if args.bound is None else args.bound
    verdict = integral_conjugacy(f.matrix, g.matrix, bound)
    if isinstance(verdict, Conjugate):
        code = 0
    elif isinstance(verdict, NotConjugate):
        code = EXIT_NOT_CONJUGATE
    else:
        code = EXIT_UNDECIDED
    return code, verdict.to_json()


def cmd_dyndeg(args):
    if not args.tolerance > 0:
        raise UsageError("--tolerance must be positive")
    f = _load(args)
    real, pairs = root_census(char_poly(f.matrix))
    out = dynamical_degrees(f, args.tolerance).to_json()
    out.update(char_poly=str(char_poly(f.matrix)), real_roots=real, complex_pairs=pairs)
    return 0, out


def cmd_order(args):
    k = map_order(_load(args))
    return 0, {"order": str(INFINITE) if k is INFINITE else k}


def cmd_degree(args):
    return 0, {"degree": projective_degree(_load(args))}


def cmd_degree_growth(args):
    if args.length < 1:
        raise UsageError("--length must be at least 1")
    g = degree_growth(_load(args), args.length)
    return 0, {"length": args.length, **g.to_json()}


def cmd_sail_check(args):
    m = _two_by_two(_load(args))
    bound = SAIL_BOUND if args.bound is None else args.bound
    s = sail(m, bound)
    geometric = LLSPeriod(s.lls())
    algebraic = lls_period(m)
    return 0, {
        "sail_lls": list(geometric),
        "lls": list(algebraic),
        "agree": geometric == algebraic,
        "vertices": [list(v) for v in s.vertices],
        "bound": bound,
    }


# -- argument parsing --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--matrix", help="matrix as JSON, or @file")
    common.add_argument("--map", help='map expression such as "x*y, 1/x"')
    common.add_argument("--bound", type=int, default=None,
                        help=f"search bound (conjugate: {CONJUGATE_BOUND}, sail-check: {SAIL_BOUND})")
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    common.add_argument("--length", type=int, default=20)
    common.add_argument("--json", action="store_true", help="JSON output (always on)")

    parser = _Parser(prog="monoconj", description="Conjugacy of monomial birational maps.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def single(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", nargs="?", help="map expression, matrix JSON or @file")
        p.set_defaults(func=func)
        return p

    single("parse", cmd_parse, "map expression to exponent matrix")
    single("print", cmd_print, "exponent matrix to map expression")
    single("classify", cmd_classify, "spectral class of a 2x2 map")
    single("lls", cmd_lls, "LLS period of a hyperbolic 2x2 map")
    single("reduce", cmd_reduce, "reduced form with its conjugator")
    single("enumerate-reduced", cmd_enumerate, "all reduced matrices of the class")
    single("dyndeg", cmd_dyndeg, "dynamical degrees")
    single("order", cmd_order, "order in the Cremona group")
    single("degree", cmd_degree, "projective degree")
    single("degree-growth", cmd_degree_growth, "degrees of the first L iterates")
    single("sail-check", cmd_sail_check, "compare the sail with the LLS period")

    p = sub.add_parser("realize", parents=[common], help="reduced matrix with a given LLS period")
    p.add_argument("sequence", help="e.g. [1,2,1,2] or 1,2,1,2")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("conjugate", parents=[common], help="decide conjugacy of two maps")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_conjugate)
    return parser


def run(argv) -> tuple[int, str]:
    """Execute one command; returns (exit code, JSON text)."""
    try:
        args = build_parser().parse_args(list(argv))
        code, payload = args.func(args)
    except SystemExit as exc:  # --help
        return (exc.code if isinstance(exc.code, int) else 0), ""
    except UsageError as exc:
        code, payload = EXIT_USAGE, {"error": str(exc), "kind": "usage"}
    except MapSyntaxError as exc:
        code, payload = EXIT_INPUT, {"error": str(exc), "kind": "syntax", "position": exc.pos}
    except (ReductionCapExceeded, SailBoundError) as exc:
        code, payload = EXIT_CAP, {"error": str(exc), "kind": "cap"}
    except (MapValueError, SpectrumError, ValueError, TypeError) as exc:
        code, payload = EXIT_INPUT, {"error": str(exc), "kind": "validation"}
    return code, json.dumps(payload, separators=(",", ":"))


def main(argv=None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    if text:
        sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
