"""``cantornet`` command line.

Exit status: 0 on success, 1 on validation or domain errors (including
missing files and malformed JSON), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import encoder, graph
from .cantor import as_rational, format_rational
from .encoder import EdgePoint, Node
from .fixtures import emit_fixtures
from .graph import SCHEMA, PhaseError, PhaseI


class CommandError(Exception):
    """Failure reported in diagnostics; exit 2 for "UsageError", else 1."""

    def __init__(self, name: str, message: str, result=None):
        super().__init__(message)
        self.name = name
        self.result = result


def load_phase(path: str) -> graph.Phase:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CommandError("FileError", f"{path}: {exc.strerror or exc}") from None
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CommandError("MalformedJSON", f"{path}: {exc}") from None
    try:
        return graph.parse_phase(document)
    except PhaseError as exc:
        raise CommandError(exc.name, f"{path}: {exc}") from None


def _bits(bits) -> str:
    return "".join(map(str, bits)) or "()"


def parse_edge_point(spec: str) -> EdgePoint:
    """``CLUSTER:EDGE:T`` for phase I, ``EDGE:T`` (or ``:EDGE:T``) for phase II."""
    pieces = spec.split(":")
    if len(pieces) == 2:
        pieces = [""] + pieces
    if len(pieces) != 3:
        raise CommandError("UsageError", f"edge point {spec!r} is not CLUSTER:EDGE:T")
    cluster, edge, t = pieces
    try:
        return EdgePoint(cluster or None, int(edge), as_rational(t))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise CommandError("UsageError", f"edge point {spec!r}: {exc}") from None


def cmd_validate(args):
    phase = load_phase(args.file)
    if isinstance(phase, PhaseI):
        line = f"phase1: s={len(phase.clusters)}, M={len(phase.atoms)}, edges={len(phase.bonds)}"
        result = {"kind": "phase1", "s": len(phase.clusters), "M": len(phase.atoms), "edges": len(phase.bonds)}
    else:
        line = f"phase2: M={len(phase.atoms)}, edges={len(phase.bonds)}"
        result = {"kind": "phase2", "M": len(phase.atoms), "edges": len(phase.bonds)}
    return result, [line]


def cmd_invariants(args):
    report = graph.invariants(load_phase(args.file))
    r = report.reduced
    lines = [
        f"components: {report.components}",
        f"nodes: {report.nodes}",
        f"edges: {report.edges}",
        f"degrees: {list(report.degrees)}",
        f"cycle rank: {report.cycle_rank}",
        f"reduced: branch degrees {list(r.branch_degrees)}, loops {r.loops}, "
        f"parallel {r.parallel}, circles {r.circles}",
    ]
    return report.to_json(), lines


def cmd_encode(args):
    enc = encoder.encode(load_phase(args.file))
    lines = [f"{enc.kind} encoding"]
    if enc.kind == "phase1":
        for cid, code in zip(enc.edge_tables(), enc.cluster_table()):
            lines.append(f"J[{cid}] = {_bits(code.bits)}")
    for b in enc.blocks:
        where = f"{b.cluster}:" if b.cluster is not None else ""
        label = "K" if enc.kind == "phase1" else "L"
        lines.append(
            f"edge {where}{b.edge} ({b.bond.u}->{b.bond.v}): {label}={_bits(b.edge_code.bits)} "
            f"block={_bits(b.code)} tail={b.tail.family.label}{list(b.tail.scope)}"
        )
    return enc.to_json(), lines


def _part_line(part) -> str:
    fixed = " ".join(f"{c}={b}" for c, b in part.fixed) or "(none)"
    tail = part.tail
    return f"fixed {fixed}; tail {tail.family.family.label}{list(tail.family.scope)} " + (
        f"prefix {list(tail.stream.prefix)} cycle {list(tail.stream.cycle)}"
    )


def cmd_fiber(args):
    enc = encoder.encode(load_phase(args.file))
    point = Node(args.atom) if args.atom is not None else parse_edge_point(args.edge_point)
    try:
        fib = encoder.fiber(enc, point)
        factored = encoder.factor(fib, enc)
    except encoder.EncodingError as exc:
        raise CommandError(exc.name, str(exc)) from None
    lines = [f"fiber of {point.to_json()} in {enc.kind}: {len(fib)} part(s)"]
    if factored.J is not None:
        lines.append(f"J = {_bits(factored.J.bits)}")
    lines += [f"  [{k}] {_part_line(p)}" for k, p in enumerate(fib.parts, start=1)]
    result = {"point": point.to_json(), "kind": enc.kind, "fiber": fib.to_json(), "factored": factored.to_json()}
    return result, lines


def cmd_diff(args):
    enc_i = encoder.encode(load_phase(args.file_i))
    enc_ii = encoder.encode(load_phase(args.file_ii))
    try:
        report = encoder.diff(enc_i, enc_ii, args.atom)
    except encoder.EncodingError as exc:
        raise CommandError(exc.name, str(exc)) from None
    lines = [
        f"atom {report.atom}",
        f"phase1: J={_bits(report.J.bits)} (cluster {report.cluster}), p={report.p}",
    ]
    lines += [f"  K edge {e}: {_bits(c)} tail {s}" for e, c, s in report.phase1_parts]
    lines.append(f"phase2: no J factor, q={report.q}")
    lines += [f"  L edge {e}: {_bits(c)} tail {s}" for e, c, s in report.phase2_parts]
    lines.append(f"J={_bits(report.J.bits)} present only in phase1")
    return report.to_json(), lines


def cmd_compare(args):
    a, b = load_phase(args.file_a), load_phase(args.file_b)
    verdict = graph.obstruction(a, b)
    if verdict.verdict == "NotHomeomorphic":
        line = f"NOT HOMEOMORPHIC: {verdict.witness}"
    elif verdict.verdict == "Homeomorphic":
        pairs = ", ".join(f"{x}->{y}" for x, y in sorted(verdict.mapping.items()))
        line = f"HOMEOMORPHIC: {verdict.detail} ({pairs})"
    else:
        line = f"INCONCLUSIVE: {verdict.detail}"
    return verdict.to_json(), [line]


def cmd_check(args):
    enc = encoder.encode(load_phase(args.file))
    try:
        verdict = encoder.cover_check(enc, args.depth)
    except (encoder.DepthTooSmall, encoder.DepthTooLarge) as exc:
        raise CommandError(exc.name, str(exc)) from None
    problems = enc.verify()
    result = verdict.to_json()
    result["encoding_problems"] = problems
    lines = [
        f"cover check at depth {verdict.depth}: {verdict.checked} assignments, "
        f"kraft sum {format_rational(verdict.kraft.kraft_sum)}: {'PASS' if verdict.ok else 'FAIL'}"
    ]
    if verdict.gap is not None:
        lines.append(f"gap witness {_bits(verdict.gap)}")
    if verdict.overlap is not None:
        lines.append(f"overlap witness {_bits(verdict.overlap)}")
    lines += problems
    if not verdict.ok or problems:
        raise CommandError("CoverCheckFailed", "; ".join(lines), result)
    return result, lines


def cmd_emit_fixtures(args):
    try:
        paths = emit_fixtures(args.directory)
    except OSError as exc:
        raise CommandError("FileError", f"{args.directory}: {exc.strerror or exc}") from None
    return {"written": [str(p) for p in paths]}, [f"wrote {p}" for p in paths]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit the JSON report")
    common.add_argument("--output", metavar="PATH", default=argparse.SUPPRESS, help="write output to PATH")

    parser = argparse.ArgumentParser(
        prog="cantornet", description="Cantor-space encodings of clustered and connected atom networks."
    )
    parser.add_argument("--json", action="store_true", help="emit the JSON report")
    parser.add_argument("--output", metavar="PATH", help="write output to PATH")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate a phase document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", parents=[common], help="graph invariants of a phase")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("encode", parents=[common], help="prefix-code encoding of a phase")
    p.add_argument("file")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("fiber", parents=[common], help="preimage of a node or edge point")
    p.add_argument("file")
    point = p.add_mutually_exclusive_group(required=True)
    point.add_argument("--atom", metavar="ID")
    point.add_argument("--edge-point", metavar="CLUSTER:EDGE:T")
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("diff", parents=[common], help="compare one atom's fibers across phases")
    p.add_argument("file_i", metavar="FILE_I")
    p.add_argument("file_ii", metavar="FILE_II")
    p.add_argument("--atom", metavar="ID", required=True)
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("compare", parents=[common], help="homeomorphism test between two phases")
    p.add_argument("file_a", metavar="FILE_A")
    p.add_argument("file_b", metavar="FILE_B")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("check", parents=[common], help="exhaustive block cover check")
    p.add_argument("file")
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("emit-fixtures", parents=[common], help="write the two demo phase documents")
    p.add_argument("directory")
    p.set_defaults(func=cmd_emit_fixtures)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    diagnostics, result, lines, status = [], None, [], 0
    try:
        result, lines = args.func(args)
    except CommandError as exc:
        diagnostics.append({"error": exc.name, "message": str(exc)})
        result = exc.result
        status = 2 if exc.name == "UsageError" else 1
    if args.json:
        report = {
            "schema": SCHEMA,
            "command": argv,
            "ok": status == 0,
            "result": result,
            "diagnostics": diagnostics,
        }
        text = json.dumps(report, indent=2) + "\n"
    elif status:
        text = "".join(f"error: {d['error']}: {d['message']}\n" for d in diagnostics)
    else:
        text = "".join(line + "\n" for line in lines)
    if args.output and not (status and not args.json):
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            sys.stderr.write(f"error: FileError: {args.output}: {exc.strerror or exc}\n")
            return 1
    elif status and not args.json:
        sys.stderr.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
