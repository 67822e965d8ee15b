"""``twl`` command line: JSON reports on stdout, diagnostics on stderr.

Exit codes: 0 ok, 1 a checked bound failed, 2 bad input, 3 resource limit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import distal
from ._accel import backend_name
from .cells import CellDescriptor, cell_partition, corner_profile, decode_cell, reduced_matrix
from .errors import InputError, TwlError
from .generate import CertifiedInstance, gen_certified
from .graph import Graph, VertexOrder, adjacency_matrix, parse_graph, parse_order, parse_vertex_set
from .matrix import (PatternConstants, corner_matrix, corner_row_pairs, format_matrix, max_grid_minor,
                     max_mixed_minor, parse_matrix)
from .neighborhoods import neighborhoods_in, representative_set, shatter_table, vc_dimension
from .trigraph import ContractionSequence, exact_twinwidth, order_from_sequence, verify_sequence


class _Inputs:
    """Reads files once and remembers their digests for the report."""

    def __init__(self):
        self.digests: dict[str, str] = {}

    def read(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        self.digests[path] = hashlib.sha256(data).hexdigest()
        return data.decode()

    def json(self, path: str):
        try:
            return json.loads(self.read(path))
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from None

    def graph(self, path: str) -> tuple[Graph, CertifiedInstance | None]:
        """A graph file, or a certified-instance JSON document."""
        text = self.read(path)
        if text.lstrip().startswith("{"):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}: invalid JSON ({exc})") from None
            inst = CertifiedInstance.from_json(data, check=False)
            return inst.graph, inst
        return parse_graph(text), None

    def order(self, args, g: Graph, inst: CertifiedInstance | None) -> VertexOrder:
        if args.order:
            return parse_order(self.read(args.order), g.n)
        if inst is not None:
            return inst.order
        return VertexOrder.identity(g.n)


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise InputError(f"--{name.replace('_', '-')} is required for this command")
    return value


def _vertex_set(args, g: Graph) -> list[int]:
    return parse_vertex_set(_need(args, "set"), g.n)


# ------------------------------------------------------------- commands ---

def cmd_gen(args, io: _Inputs):
    t, n = _need(args, "t"), _need(args, "n")
    inst = gen_certified(t, n, args.seed)
    return inst.to_json()


def cmd_tww(args, io: _Inputs):
    g, inst = io.graph(_need(args, "in_"))
    if args.action == "exact":
        res = exact_twinwidth(g, limit=args.limit)
        return {"tww": res.tww, "sequence": res.sequence.to_json()}
    if args.seq:
        seq = ContractionSequence.of(io.json(args.seq))
    elif inst is not None:
        seq = inst.sequence
    else:
        raise InputError("--seq is required unless --in is an instance JSON")
    if args.action == "verify":
        d = args.t if args.t is not None else (inst.t if inst else None)
        if d is None:
            raise InputError("--t is required unless --in is an instance JSON")
        check = verify_sequence(g, seq, d)
        out = {"ok": check.ok, "width": check.width, "trace": [s.to_json() for s in check.trace]}
        if not check.ok:
            raise _Failed(out, f"sequence reaches red degree {check.width} > {d}")
        return out
    order = order_from_sequence(g, seq)
    return {"order": list(order.perm)}


def _matrix_input(args, io: _Inputs):
    path = _need(args, "in_")
    text = io.read(path)
    if args.order or text.lstrip().startswith("{"):
        g, inst = io.graph(path)
        return adjacency_matrix(g, io.order(args, g, inst))
    return parse_matrix(text)


def cmd_minors(args, io: _Inputs):
    if args.action == "constants":
        return PatternConstants(_need(args, "t"), args.variant).to_json()
    mat = _matrix_input(args, io)
    out = {}
    if not args.grid or args.mixed:
        r = max_mixed_minor(mat, cap=args.cap)
        out["mixed"] = {"t": r.t, "exact": r.exact, "division": r.witness and r.witness.to_json()}
    if args.grid:
        r = max_grid_minor(mat, cap=args.cap)
        out["grid"] = {"t": r.t, "exact": r.exact, "division": r.witness and r.witness.to_json()}
    if len(out) == 1:
        (only,) = out.values()
        return only
    return out


def cmd_corners(args, io: _Inputs):
    mat = _matrix_input(args, io)
    if mat.m < 2 or mat.n < 2:
        raise InputError("corner matrix needs at least 2 rows and 2 columns")
    bound = corner_row_pairs(mat)
    out = {"corner": format_matrix(corner_matrix(mat)).splitlines(), "p": bound.p, "pairs": bound.pairs,
           "columnBound": bound.column_bound, "distinct": bound.distinct, "ok": bound.ok}
    if not bound.ok:
        raise _Failed(out, "distinct-column bound violated")
    return out


def cmd_nbhd(args, io: _Inputs):
    g, _ = io.graph(_need(args, "in_"))
    A = _vertex_set(args, g)
    fam = neighborhoods_in(g, A)
    out = fam.report()
    out["representatives"] = representative_set(g, A)
    if args.shatter:
        out["shatter"] = shatter_table(g)
        out["vcDimension"] = vc_dimension(g)
    return out


def cmd_cells(args, io: _Inputs):
    g, inst = io.graph(_need(args, "in_"))
    order = io.order(args, g, inst)
    A = _vertex_set(args, g)
    if args.action == "decode":
        doc = io.json(_need(args, "cells"))
        if isinstance(doc, dict) and isinstance(doc.get("result"), dict):
            doc = doc["result"]  # a whole ``twl cells`` report
        cells = doc.get("cells") if isinstance(doc, dict) else None
        if not isinstance(cells, list):
            raise InputError("--cells must hold a partition JSON object with a 'cells' list")
        decoded, mismatches = [], []
        for i, c in enumerate(cells):
            members = decode_cell(g, order, A, CellDescriptor.from_json(c["descriptor"]))
            decoded.append(members)
            if "members" in c and sorted(c["members"]) != members:
                mismatches.append(i)
        out = {"cells": decoded, "mismatches": mismatches, "ok": not mismatches}
        if mismatches:
            raise _Failed(out, f"{len(mismatches)} descriptors decode to different members")
        return out
    if args.action == "profile":
        M = reduced_matrix(g, order, A)
        return {"profiles": [sorted(corner_profile(M, j).rows) for j in range(g.n)]}
    part = cell_partition(g, order, A, _need(args, "theta"), args.t)
    out = part.to_json()
    out["blocks"] = len(part.blocks)
    out["maxParameters"] = part.max_parameters()
    return out


def cmd_cutting(args, io: _Inputs):
    g, inst = io.graph(_need(args, "in_"))
    A = _vertex_set(args, g)
    res = distal.cutting(g, io.order(args, g, inst), A, _need(args, "r"), args.seed,
                         theta=args.theta or 2, c0=args.c0)
    out = res.report()
    out["crossingCounts"] = list(res.crossing_counts)
    out["partition"] = [list(p) for p in res.parts]
    return out


def cmd_regularity(args, io: _Inputs):
    g, inst = io.graph(_need(args, "in_"))
    res = distal.regularity(g, _need(args, "eps"), args.seed, io.order(args, g, inst),
                            theta=args.theta or 2)
    out = res.report(g.n)
    out["defect"] = res.defect
    out["partition"] = [list(p) for p in res.parts]
    return out


def cmd_suite(args, io: _Inputs):
    from .suite import SuiteConfig, emit_suite

    config = SuiteConfig.from_json(io.json(args.config)) if args.config else SuiteConfig.default()
    out_dir = Path(args.out or "suite-out")
    summary = emit_suite(config, out_dir)
    if summary["failures"]:
        raise _Failed(summary, f"{len(summary['failures'])} suite cases failed")
    return summary


COMMANDS = {
    "gen": cmd_gen, "tww": cmd_tww, "minors": cmd_minors, "corners": cmd_corners, "nbhd": cmd_nbhd,
    "cells": cmd_cells, "cutting": cmd_cutting, "regularity": cmd_regularity, "suite": cmd_suite,
}


class _Failed(Exception):
    """A result was computed but a checked bound failed: report it and exit 1."""

    def __init__(self, result, message):
        super().__init__(message)
        self.result = result


# --------------------------------------------------------------- parsing ---

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="in_", metavar="FILE", help="graph, matrix or instance JSON")
    common.add_argument("--order", metavar="FILE", help="vertex order file")
    common.add_argument("--set", metavar="IDS", help="comma-separated vertex ids (the set A)")
    common.add_argument("--t", type=int)
    common.add_argument("--theta", type=int)
    common.add_argument("--r", type=float)
    common.add_argument("--eps", type=float)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int)
    common.add_argument("--variant", choices=("classic", "ck"), default="classic")
    common.add_argument("--out", metavar="DIR")
    common.add_argument("--pretty", action="store_true", help="indent the JSON report")

    p = argparse.ArgumentParser(prog="twl", description="Twin-width and neighbourhood-complexity toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="random certified instance")
    g.add_argument("--n", type=int)

    tw = sub.add_parser("tww", parents=[common], help="twin-width tools")
    tw.add_argument("action", choices=("exact", "verify", "order"))
    tw.add_argument("--seq", metavar="FILE", help="contraction sequence JSON")
    tw.add_argument("--limit", type=int, default=10)

    mn = sub.add_parser("minors", parents=[common], help="grid and mixed minors")
    mn.add_argument("action", nargs="?", choices=("search", "constants"), default="search")
    mn.add_argument("--mixed", action="store_true")
    mn.add_argument("--grid", action="store_true")

    sub.add_parser("corners", parents=[common], help="corner matrix and row pairs")

    nb = sub.add_parser("nbhd", parents=[common], help="neighbourhood traces over A")
    nb.add_argument("--shatter", action="store_true", help="also the shatter table and VC-dimension")

    ce = sub.add_parser("cells", parents=[common], help="cell partition, profiles, decoding")
    ce.add_argument("action", nargs="?", choices=("partition", "decode", "profile"), default="partition")
    ce.add_argument("--cells", metavar="FILE", help="partition JSON to decode")

    cu = sub.add_parser("cutting", parents=[common], help="verified cutting of A")
    cu.add_argument("--c0", type=float, default=distal.SAMPLE_CONSTANT)

    sub.add_parser("regularity", parents=[common], help="verified 0-1 regularity partition")

    su = sub.add_parser("suite", parents=[common], help="write the report corpus")
    su.add_argument("--config", metavar="FILE")
    return p


def run_command(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    io = _Inputs()
    start = time.perf_counter()
    code = 0
    try:
        result = COMMANDS[args.command](args, io)
    except _Failed as exc:
        result, code = exc.result, 1
        print(f"twl: {exc}", file=stderr)
    except TwlError as exc:
        print(f"twl: {exc}", file=stderr)
        return exc.exit_code
    report = {
        "command": args.command,
        "argv": list(argv if argv is not None else sys.argv[1:]),
        "inputs": io.digests,
        "seed": args.seed,
        "result": result,
        "timing": {"seconds": round(time.perf_counter() - start, 6), "backend": backend_name()},
    }
    json.dump(report, stdout, indent=2 if args.pretty else None, sort_keys=False)
    stdout.write("\n")
    return code


def main():  # pragma: no cover
    sys.exit(run_command())


__all__ = ["run_command", "build_parser", "main"]
