"""``stacky-pic`` command line.

Exit codes: 0 success, 1 input error, 2 verification failure, 3 enumeration
bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .curvespec import parse, parse_matrix
from .errors import EnumerationTooLarge, SpecError, SpecSyntaxError, StackyPicError
from .groups import PresentedGroup, decompose
from .report import enumerate_for_spec, render, render_checks, render_enumeration, run

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_BOUND = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        data = sys.stdin.buffer.read()
    else:
        with open(path, "rb") as fh:
            data = fh.read()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data[:e.start].count(b"\n") + 1
        raise SpecSyntaxError(f"invalid UTF-8 byte {data[e.start]:#04x}", line) from None


def _load(path):
    return parse(_read(path))


def cmd_compute(args):
    report = run(_load(args.file))
    sys.stdout.write(render(report, args.format))
    return report.exit_code


def cmd_verify(args):
    report = run(_load(args.file))
    sys.stdout.write(render_checks(report))
    return report.exit_code


def cmd_enumerate(args):
    spec = _load(args.file)
    picY, orders, results, selected = enumerate_for_spec(spec)
    sys.stdout.write(render_enumeration(picY, orders, results, selected,
                                        spec.stage_one_labels()))
    return EXIT_OK


def cmd_decompose(args):
    rows = parse_matrix(args.matrix)
    if not rows:
        G = PresentedGroup.from_relations(0, ())
    else:
        G = PresentedGroup.from_relations(len(rows[0]), rows)
    d = decompose(G)
    if args.format == "json":
        sys.stdout.write(json.dumps({"free_rank": d.free_rank, "torsion": list(d.torsion)}) + "\n")
    else:
        sys.stdout.write(f"{d}\n")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; argparse's default of 2 means FAIL here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(
        prog="stacky-pic", description="Picard groups of tame stacky curves.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute Pic and print the full report")
    p.add_argument("file", help="curve description file, or - for stdin")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="run the exactness checks only")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list every extension type the gerbe block allows")
    p.add_argument("file")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("decompose", help="invariant factors of Z^k / rows of a matrix")
    p.add_argument("matrix", help='rows separated by ";", entries by ",", e.g. "2,0;0,3"')
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_decompose)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    where = getattr(args, "file", None)
    prefix = f"{where}: " if where else ""
    try:
        return args.func(args)
    except EnumerationTooLarge as e:
        print(f"stacky-pic: {prefix}[gerbe] enumeration bound exceeded: {e}", file=sys.stderr)
        return EXIT_BOUND
    except SpecError as e:
        if e.line is None and e.block is None:
            e = SpecError(e.message, block="input")
        print(f"stacky-pic: {prefix}{e}", file=sys.stderr)
        return EXIT_INPUT
    except StackyPicError as e:
        print(f"stacky-pic: {prefix}[input] {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"stacky-pic: {prefix}cannot read input: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
