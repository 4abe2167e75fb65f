"""Command line interface.

Exit codes: 0 success, 1 I/O, usage or parse error, 2 structurally
ill-posed input or offsets / lead times that fail their definitions.
"""
import argparse
import sys
from pathlib import Path

from . import report
from .assignment import check_offsets, d_from_c, solve_hvt
from .dae import parse_dae, signature_of
from .errors import FormatError, InvalidOffsets, NotASolution, StructurallyIllPosed
from .sigfile import format_sig, load
from .sigma_core import OffsetPair

VIEWS = ("sigma", "coarse", "fine", "sess", "fbg")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("bound must be >= 0")
    return value


def build_parser():
    parser = _Parser(prog="sigmadae", description="Structural analysis of DAEs by the signature-matrix method.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="full structural analysis of a .sig or .dae file")
    p.add_argument("path")
    p.add_argument("--print", dest="views", action="append", choices=VIEWS, default=[],
                   help="show a matrix or graph view (repeatable)")
    p.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    p.add_argument("--dot", metavar="PATH", help="write the fine-block graph in DOT format")
    p.add_argument("--enumerate-k", metavar="BOUND", type=_nonneg,
                   help="list normalised lead-time vectors with max K <= BOUND")
    p.add_argument("--offsets", metavar="C1,...,CN", type=_int_list,
                   help="use these equation offsets instead of the canonical ones")
    p.add_argument("--k", metavar="K1,...,KP", type=_int_list,
                   help="lead-time vector whose critical edges are reported and drawn bold")

    p = sub.add_parser("convert", help="extract the signature matrix of a .dae file into .sig")
    p.add_argument("source")
    p.add_argument("output", help="output .sig path ('-' for stdout)")

    p = sub.add_parser("check-offsets", help="classify an offset vector")
    p.add_argument("path")
    p.add_argument("--c", required=True, type=_int_list, metavar="C1,...,CN")
    p.add_argument("--d", type=_int_list, metavar="D1,...,DN",
                   help="variable offsets; derived from c on an HVT when omitted")
    return parser


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_analyze(args):
    sigma = load(args.path)
    try:
        an = report.analyse(sigma, c=args.offsets, k=args.k, enumerate_bound=args.enumerate_k)
    except InvalidOffsets as exc:
        print(f"error: not a valid offset vector: {exc}", file=sys.stderr)
        return 2
    except NotASolution as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.views:
        sections = [report.render_view(an, v) for v in args.views]
        sections.extend(s for s in ("\n".join(report.render_k(an)), "\n".join(report.render_enumeration(an))) if s)
        text = "\n\n".join(sections)
    else:
        text = report.render_summary(an)
    if args.json != "-":
        print(text)
    for msg in an.diagnostics:
        print(f"warning: {msg}", file=sys.stderr)
    if args.json:
        _write(args.json, report.to_json(an))
    if args.dot:
        _write(args.dot, report.fbg_to_dot(an.fbg, an.k))
    return 0


def cmd_convert(args):
    sigma = signature_of(parse_dae(Path(args.source).read_text()))
    _write(args.output, format_sig(sigma))
    return 0


def cmd_check_offsets(args):
    sigma = load(args.path)
    if len(args.c) != sigma.n or (args.d is not None and len(args.d) != sigma.n):
        print(f"error: offset vectors must have {sigma.n} entries", file=sys.stderr)
        return 1
    if args.d is None:
        hvt, _ = solve_hvt(sigma)
        d = d_from_c(sigma, hvt, args.c)
    else:
        d = args.d
    off = OffsetPair(args.c, d)
    cls = check_offsets(sigma, off)
    print("c = " + ",".join(map(str, off.c)))
    print("d = " + ",".join(map(str, off.d)))
    print(cls.describe())
    if not cls.is_general:
        return 2
    hvt = ", ".join(f"({sigma.row_labels[i]},{sigma.col_labels[j]})" for i, j in cls.witness_hvt)
    print(f"witness HVT: {hvt}")
    return 0


COMMANDS = {"analyze": cmd_analyze, "convert": cmd_convert, "check-offsets": cmd_check_offsets}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except StructurallyIllPosed as exc:
        print(f"error: structurally ill-posed: {exc}", file=sys.stderr)
        return 2
    except (FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
