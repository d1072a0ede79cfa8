"""Command-line interface: analyze codes, compute weights, search witnesses,
take duals and closures, and drive the verification harness.

Exit codes: 0 success, 1 usage or input error, 2 verification failure,
3 inapplicable request (e.g. exhaustive verification over Q).
The environment variable RANKWEIGHT_WORKERS overrides the verify worker
count (default: available parallelism).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .documents import (
    CodeDocument,
    document_from_code,
    document_to_json,
    parse_code_file,
    render_code_document,
    tower_to_json,
)
from .errors import (
    BadR,
    EquivalenceViolation,
    InfiniteField,
    ParseError,
    RankWeightError,
    SearchExhausted,
)
from .fields import format_element
from .ranksupport import (
    closure,
    dual,
    is_extended,
    is_rank_degenerate,
    rank_support_code,
    restriction,
)
from .verify import TowerTask, VerifyPlan, resolve_workers, run_verify, standard_plan, summary_to_text
from .weights import find_witness, weight_report


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; the contract wants 1
        raise _UsageError(message)


def _k_rows(kspace):
    return [[format_element(x) for x in row] for row in kspace.space.rows]


def _l_rows(space):
    return [[format_element(x) for x in row] for row in space.rows]


def emit_report(report: dict, fmt: str) -> str:
    """Render a report dict as JSON (stable key order) or aligned text."""
    if fmt == "json":
        return json.dumps(report, indent=2)
    return _report_text(report)


def _format_value(value):
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        if all(isinstance(r, list) for r in value):
            return "; ".join("(" + ", ".join(str(x) for x in r) + ")" for r in value) or "(empty)"
        return "(" + ", ".join(str(x) for x in value) + ")"
    if isinstance(value, dict):
        return json.dumps(value)
    return str(value)


def _report_text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if key == "hierarchy":
            lines.append("hierarchy:")
            header = f"  {'r':>3} {'dRr':>5} {'Mr':>5} {'OSr':>5} {'Dr':>5}"
            lines.append(header)
            for row in value:
                cells = [row.get(c) for c in ("r", "dRr", "Mr", "OSr", "Dr")]
                text = f"  {cells[0]:>3} " + " ".join(
                    f"{('-' if c is None else c):>5}" for c in cells[1:]
                )
                if row.get("reason"):
                    text += f"   ({row['reason']})"
                lines.append(text)
        else:
            lines.append(f"{key}: {_format_value(value)}")
    return "\n".join(lines)


def _load(path: str) -> CodeDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_code_file(fh.read())


def cmd_analyze(args) -> int:
    doc = _load(args.file)
    code = doc.to_code()
    report = {
        "tower": tower_to_json(doc),
        "n": code.length,
        "dim": code.dim,
        "rank_support": _k_rows(rank_support_code(code)),
        "restriction": _k_rows(restriction(code)),
        "dual": _l_rows(dual(code).space),
        "closure": _l_rows(closure(code).space),
        "degenerate": is_rank_degenerate(code),
        "extended": is_extended(code),
    }
    print(emit_report(report, args.format))
    return 0


def cmd_weights(args) -> int:
    doc = _load(args.file)
    code = doc.to_code()
    rep = weight_report(code, witness_seed=args.seed)
    rows = rep.hierarchy
    if args.r is not None:
        if not 1 <= args.r <= code.dim:
            raise BadR(f"--r {args.r} outside 1..dim C = {code.dim}")
        rows = [rows[args.r - 1]]
    hierarchy = []
    for row in rows:
        entry = {"r": row.r, "dRr": row.d_Rr, "Mr": row.M_r, "OSr": row.OS_r, "Dr": row.D_r}
        if not row.applicable:
            entry["reason"] = row.reason
        hierarchy.append(entry)
    report = {
        "tower": tower_to_json(doc),
        "n": code.length,
        "dim": code.dim,
        "rank_distance": rep.rank_distance,
    }
    if rep.rank_distance is None:
        report["rank_distance_reason"] = rep.rank_distance_reason
    report["hierarchy"] = hierarchy
    report["witness"] = None if rep.witness is None else [format_element(x) for x in rep.witness]
    if rep.witness is None:
        report["witness_status"] = rep.witness_status
    report["degenerate"] = rep.degenerate
    print(emit_report(report, args.format))
    return 0


def cmd_witness(args) -> int:
    doc = _load(args.file)
    code = doc.to_code()
    status = "found"
    witness = None
    try:
        witness = find_witness(
            code, strategy=args.strategy, seed=args.seed, height=args.height
        )
        if witness is None:
            status = "none_exists"
    except SearchExhausted as e:
        status = f"undecided: {e}"
    report = {
        "tower": tower_to_json(doc),
        "n": code.length,
        "dim": code.dim,
        "strategy": args.strategy,
        "status": status,
        "witness": None if witness is None else [format_element(x) for x in witness],
    }
    print(emit_report(report, args.format))
    return 0


def _emit_code(doc: CodeDocument, transformed) -> int:
    out = document_from_code(transformed)
    print(render_code_document(out))
    return 0


def cmd_dual(args) -> int:
    doc = _load(args.file)
    return _emit_code(doc, dual(doc.to_code()))


def cmd_closure(args) -> int:
    doc = _load(args.file)
    return _emit_code(doc, closure(doc.to_code()))


def _parse_csv_modulus(text: str, characteristic: int):
    """CSV coefficients: ints, 'a/b' over Q, or base-generator strings like 'u'."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise _UsageError(f"empty coefficient in modulus {text!r}")
        try:
            out.append(int(part))
            continue
        except ValueError:
            pass
        if characteristic == 0 and "/" in part:
            try:
                out.append(Fraction(part))
                continue
            except (ValueError, ZeroDivisionError) as e:
                raise _UsageError(f"bad modulus coefficient {part!r}: {e}")
        out.append(part)  # element string over the base generator
    return tuple(out)


def cmd_verify(args) -> int:
    workers = resolve_workers(None)
    if args.char is not None:
        if args.ext_modulus is None:
            raise _UsageError("--char requires --ext-modulus")
        base_modulus = None
        if args.base_modulus is not None:
            base_modulus = tuple(int(c) for c in args.base_modulus.split(","))
        task = TowerTask(
            characteristic=args.char,
            extension_modulus=_parse_csv_modulus(args.ext_modulus, args.char),
            base_degree=args.base_degree,
            base_modulus=base_modulus,
            max_n=args.max_n if args.max_n is not None else 2,
        )
        plan = VerifyPlan(
            towers=[task],
            theorem=args.theorem,
            workers=workers,
            seed=args.seed,
            force=args.force,
        )
    else:
        plan = standard_plan(theorem=args.theorem, workers=workers, seed=args.seed)
        plan.force = args.force
        if args.max_n is not None:
            for t in plan.towers:
                t.max_n = min(t.max_n, args.max_n)
    if args.random is not None:
        plan.source = "random"
        plan.random_count = args.random
    summary = run_verify(plan)
    if args.format == "json":
        print(json.dumps(summary, indent=2))
    else:
        print(summary_to_text(summary))
    return 0 if summary["ok"] else 2


def build_parser() -> _Parser:
    parser = _Parser(prog="rankweight", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("analyze", help="rank support, restriction, dual, closure, flags")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("weights", help="rank distance and the four generalized weights")
    p.add_argument("file")
    p.add_argument("--r", type=int, default=None, help="report a single row r")
    p.add_argument("--seed", type=int, default=0, help="seed for the witness search")
    add_format(p)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("witness", help="find a codeword with the support of the code")
    p.add_argument("file")
    p.add_argument("--strategy", choices=("auto", "constructive", "exhaustive", "random"), default="auto")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--height", type=int, default=5, help="coordinate height for random search over Q")
    add_format(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("dual", help="emit the dual code as a code document")
    p.add_argument("file")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("closure", help="emit the generalized closure as a code document")
    p.add_argument("file")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("verify", help="run theorem verification suites")
    p.add_argument("--char", type=int, default=None, help="tower characteristic (0 for Q)")
    p.add_argument("--base-degree", type=int, default=1)
    p.add_argument("--base-modulus", default=None, help="CSV over GF(p), low to high")
    p.add_argument(
        "--ext-modulus",
        default=None,
        help="CSV over the base, low to high; use --ext-modulus=-2,0,0,1 for a leading minus",
    )
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--theorem", choices=("equivdef", "witness", "delsarte", "closure", "trace", "all"), default="all")
    p.add_argument("--random", type=int, default=None, metavar="COUNT")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", action="store_true", help="override the resource guards")
    add_format(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except InfiniteField as e:
        print(f"inapplicable: {e}", file=sys.stderr)
        return 3
    except EquivalenceViolation as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return 2
    except (ParseError, RankWeightError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
