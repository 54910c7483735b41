"""Command line front end.

Five subcommands share one set of global flags. `dims` tabulates the
stabilized colimit dimension over a degree range, `cohomology` inspects a
single cell and can dump its basis, `paths` lists the paths of one length,
`bracket` evaluates the bracket of two elements written in the expression
grammar, and `verify` runs a named check suite. Every emitter orders its
output canonically, so repeated runs with the same arguments produce
byte-identical bytes.
"""

import argparse
import csv
import json
import re
import sys

from .checks import SUITES, run_suite
from .cohomology import cohomology_cached, sg_dimension
from .errors import ResourceGuardError, SgcohError, UsageError
from .exactla import parse_field_spec
from .expr import format_element, format_path, parse_expression
from .gerst import PropElement, bracket, project
from .quiver import load_quiver

_RANGE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")


def _add_common_flags(sub):
    sub.add_argument(
        "--quiver",
        action="append",
        required=True,
        metavar="FILE",
        help="quiver description file (bracket accepts one per operand)",
    )
    sub.add_argument(
        "--field",
        default="rational",
        metavar="SPEC",
        help="coefficient field, rational or fp:P (default rational)",
    )
    sub.add_argument(
        "--pmax",
        type=int,
        default=16,
        metavar="N",
        help="last stage scanned for stabilization (default 16)",
    )
    sub.add_argument(
        "--window",
        type=int,
        default=3,
        metavar="N",
        help="number of agreeing composite ranks required (default 3)",
    )
    sub.add_argument(
        "--guard",
        type=int,
        default=200000,
        metavar="N",
        help="largest basis size any stage may enumerate (default 200000)",
    )
    sub.add_argument(
        "--out",
        choices=("json", "csv", "text"),
        default="text",
        help="output format (default text)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sgcoh",
        description=(
            "Dimension tables, basis dumps, and bracket evaluation for the "
            "singular Hochschild cohomology of radical square zero quiver "
            "algebras."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p_dims = sub.add_parser(
        "dims", help="stabilized dimension table over a degree range"
    )
    _add_common_flags(p_dims)
    p_dims.add_argument(
        "--degrees",
        required=True,
        metavar="A..B",
        help="inclusive degree range, for example -4..4",
    )
    p_dims.set_defaults(handler=cmd_dims)

    p_coh = sub.add_parser(
        "cohomology", help="one cohomology cell, optionally with its basis"
    )
    _add_common_flags(p_coh)
    p_coh.add_argument("--m", type=int, required=True, help="cohomological degree")
    p_coh.add_argument("--p", type=int, required=True, help="syzygy stage")
    p_coh.add_argument(
        "--basis",
        action="store_true",
        help="also print one representative per basis class",
    )
    p_coh.set_defaults(handler=cmd_cohomology)

    p_paths = sub.add_parser("paths", help="list the paths of a fixed length")
    _add_common_flags(p_paths)
    p_paths.add_argument("--length", type=int, required=True, help="path length")
    p_paths.set_defaults(handler=cmd_paths)

    p_br = sub.add_parser(
        "bracket", help="bracket of two elements in the expression grammar"
    )
    _add_common_flags(p_br)
    p_br.add_argument("--lhs", required=True, metavar="EXPR", help="left element")
    p_br.add_argument("--rhs", required=True, metavar="EXPR", help="right element")
    p_br.add_argument(
        "--project",
        action="store_true",
        help="reduce the result to its canonical cohomology representative",
    )
    p_br.set_defaults(handler=cmd_bracket)

    p_ver = sub.add_parser("verify", help="run a named verification suite")
    _add_common_flags(p_ver)
    p_ver.add_argument(
        "suite",
        choices=sorted(SUITES),
        metavar="SUITE",
        help="one of: %s" % ", ".join(sorted(SUITES)),
    )
    p_ver.add_argument(
        "--bound",
        type=int,
        default=4,
        metavar="N",
        help="size bound handed to the suite (default 4)",
    )
    p_ver.set_defaults(handler=cmd_verify)
    return parser


def _load_config(args, two_quivers_ok=False):
    files = args.quiver
    if len(files) > (2 if two_quivers_ok else 1):
        if two_quivers_ok:
            raise UsageError("bracket takes at most two --quiver files")
        raise UsageError("%s takes a single --quiver file" % args.command)
    field = parse_field_spec(args.field)
    if args.window < 1:
        raise UsageError("window must be at least 1")
    if args.pmax < args.window + 1:
        raise UsageError(
            "pmax=%d is too small for window=%d; need pmax >= window + 1"
            % (args.pmax, args.window)
        )
    if args.guard < 1:
        raise UsageError("guard must be positive")
    return [load_quiver(f) for f in files], field


def _parse_degree_range(text):
    match = _RANGE.match(text.strip())
    if not match:
        raise UsageError("bad degree range %r (expected A..B)" % text)
    lo, hi = int(match.group(1)), int(match.group(2))
    if lo > hi:
        raise UsageError("empty degree range %r" % text)
    return lo, hi


def _same_shape(q1, q2):
    arrows1 = [(a.name, a.source, a.target) for a in q1.arrows]
    arrows2 = [(a.name, a.source, a.target) for a in q2.arrows]
    return q1.vertices == q2.vertices and arrows1 == arrows2


def cmd_dims(args):
    (quiver,), field = _load_config(args)
    lo, hi = _parse_degree_range(args.degrees)
    rows = [
        sg_dimension(
            quiver, n, field, p_max=args.pmax, window=args.window, guard=args.guard
        )
        for n in range(lo, hi + 1)
    ]
    if args.out == "json":
        print(json.dumps([r.to_dict() for r in rows], indent=2, sort_keys=True))
    elif args.out == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["degree", "dim", "stabilized", "window_rank"])
        for r in rows:
            writer.writerow(
                [
                    r.degree,
                    "" if r.value is None else r.value,
                    "true" if r.stabilized else "false",
                    r.stages[-1][2] if r.stages else 0,
                ]
            )
    else:
        print("degree  dim  stabilized")
        for r in rows:
            print(
                "%6d  %3s  %s"
                % (
                    r.degree,
                    "?" if r.value is None else str(r.value),
                    "yes" if r.stabilized else "no",
                )
            )
        notes = {}
        order = []
        for r in rows:
            for note in r.notes:
                if note not in notes:
                    notes[note] = []
                    order.append(note)
                notes[note].append(r.degree)
        for note in order:
            degrees = notes[note]
            if len(degrees) == len(rows):
                print("note: %s" % note)
            else:
                print(
                    "note (degrees %s): %s"
                    % (", ".join(str(d) for d in degrees), note)
                )
    return 0


def _basis_elements(group):
    """Rebuild printable elements from a cell's stored basis vectors."""
    quiver = group.quiver
    out = []
    for vec in group.quotient_reps:
        high = {group.high_pairs[i]: c for i, c in vec.items()}
        out.append(PropElement(quiver, group.m, group.p + 1, {}, high))
    for vec in group.kernel_basis:
        low = {group.low_pairs[i]: c for i, c in vec.items()}
        out.append(PropElement(quiver, group.m, group.p + 1, low, {}))
    return out


def cmd_cohomology(args):
    (quiver,), field = _load_config(args)
    group = cohomology_cached(quiver, args.m, args.p, field, guard=args.guard)
    basis = _basis_elements(group) if args.basis else None
    if args.out == "json":
        payload = {
            "m": group.m,
            "p": group.p,
            "dim": group.dimension,
            "high_dim": group.dim_quotient,
            "low_dim": group.dim_kernel,
        }
        if basis is not None:
            payload["basis"] = [format_element(el) for el in basis]
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.out == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        if basis is not None:
            writer.writerow(["block", "index", "element"])
            for idx, el in enumerate(basis):
                block = "high" if el.high else "low"
                writer.writerow([block, idx, format_element(el)])
        else:
            writer.writerow(["m", "p", "dim", "high_dim", "low_dim"])
            writer.writerow(
                [group.m, group.p, group.dimension, group.dim_quotient, group.dim_kernel]
            )
    else:
        print(
            "cell (m=%d, p=%d): dim %d (high %d, low %d)"
            % (
                group.m,
                group.p,
                group.dimension,
                group.dim_quotient,
                group.dim_kernel,
            )
        )
        if basis is not None:
            for el in basis:
                print(format_element(el))
    return 0


def cmd_paths(args):
    (quiver,), _field = _load_config(args)
    if args.length < 0:
        raise UsageError("length must be at least 0")
    count = quiver.path_count(args.length)
    if count > args.guard:
        raise ResourceGuardError(
            "%d paths of length %d exceed the guard %d"
            % (count, args.length, args.guard)
        )
    plist = quiver.paths(args.length)
    if args.out == "json":
        payload = {
            "length": args.length,
            "count": len(plist),
            "paths": [format_path(p) for p in plist],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.out == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["path", "source", "target"])
        for p in plist:
            writer.writerow([format_path(p), p.source, p.target])
    else:
        for p in plist:
            print(format_path(p))
    return 0


def cmd_bracket(args):
    quivers, field = _load_config(args, two_quivers_ok=True)
    if len(quivers) == 2 and not _same_shape(quivers[0], quivers[1]):
        raise UsageError(
            "the bracket operands live over different quivers (%s vs %s)"
            % (args.quiver[0], args.quiver[1])
        )
    quiver = quivers[0]
    f = parse_expression(args.lhs, quiver, field)
    g = parse_expression(args.rhs, quiver, field)
    result = bracket(f, g, field)
    if args.project:
        cls = project(result, field, guard=args.guard)
        group = cls.group
        low = {group.low_pairs[i]: c for i, c in cls.low_kernel.items()}
        high = {group.high_pairs[i]: c for i, c in cls.high_residue.items()}
        result = PropElement(quiver, group.m, group.p + 1, low, high)
    text = format_element(result)
    if args.out == "json":
        payload = {"arity_in": result.m, "arity_out": result.p, "element": text}
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.out == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["arity_in", "arity_out", "element"])
        writer.writerow([result.m, result.p, text])
    else:
        print(text)
    return 0


def cmd_verify(args):
    (quiver,), field = _load_config(args)
    rows = run_suite(args.suite, quiver, field, bound=args.bound, guard=args.guard)
    all_ok = all(ok for (_name, ok, _detail) in rows)
    if args.out == "json":
        payload = [
            {"name": name, "ok": ok, "detail": detail}
            for (name, ok, detail) in rows
        ]
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.out == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["status", "name", "detail"])
        for name, ok, detail in rows:
            writer.writerow(["PASS" if ok else "FAIL", name, detail])
    else:
        for name, ok, detail in rows:
            if ok:
                print("PASS %s" % name)
            else:
                print("FAIL %s: %s" % (name, detail))
    return 0 if all_ok else 1


_DASH_VALUE_FLAGS = ("--degrees", "--lhs", "--rhs")


def _attach_dash_values(argv):
    """Glue flag/value pairs whose value may begin with a dash.

    A degree range like -4..4 or an expression like "-2 (a|a)" would
    otherwise be mistaken for an option string.
    """
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _DASH_VALUE_FLAGS and i + 1 < len(argv):
            out.append(tok + "=" + argv[i + 1])
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(_attach_dash_values(list(argv)))
    try:
        return args.handler(args)
    except SgcohError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
