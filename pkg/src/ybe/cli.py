"""Command line front-end: ``ybe <command> ...``.

Solution files are JSON documents::

    {"name": "SF4", "n": 4, "left": [[1,2,4,3], [1,2,4,3], [2,1,3,4], [2,1,3,4]]}

with 1-based letters; ``left[x][y]`` is the image of y under the left action
of x.  Exit status: 0 when every requested check passes, 1 when a check
fails, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import algebra, braided, pbw
from .solution import (
    Solution,
    SolutionError,
    cyclic_degree,
    enumerate_square_free,
    format_word,
    from_left_action,
    parse_word,
    perm_order,
    validate,
)

MAX_N = 64


class SolutionFileError(SolutionError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    return line, offset - (text.rfind("\n", 0, offset) + 1) + 1


def _row_offset(text: str, row: int) -> Optional[int]:
    """Offset of the ``row``-th inner list of the "left" array, if it can be found."""
    start = text.find('"left"')
    if start < 0:
        return None
    start = text.find("[", start)
    depth = 0
    seen = -1
    for i in range(start, len(text)):
        ch = text[i]
        if ch == "[":
            depth += 1
            if depth == 2:
                seen += 1
                if seen == row:
                    return i
        elif ch == "]":
            depth -= 1
            if depth == 0:
                break
    return None


def _no_duplicates(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise SolutionFileError(f"duplicate key {key!r}")
        out[key] = value
    return out


def parse_solution_file(data: bytes | str) -> Solution:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        doc = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise SolutionFileError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise SolutionFileError("expected a JSON object", 1, 1)
    for key in ("n", "left"):
        if key not in doc:
            raise SolutionFileError(f"missing key {key!r}")
    n, left = doc["n"], doc["left"]
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= MAX_N:
        raise SolutionFileError(f"n out of bounds (1..{MAX_N}): {n!r}",
                                *_line_col(text, text.find('"n"')))
    if not isinstance(left, list) or len(left) != n:
        raise SolutionFileError(f"left must be a list of {n} rows",
                                *_line_col(text, text.find('"left"')))
    rows = []
    for x, row in enumerate(left):
        offset = _row_offset(text, x)
        where = _line_col(text, offset) if offset is not None else (None, None)
        if (not isinstance(row, list) or len(row) != n
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in row)
                or sorted(row) != list(range(1, n + 1))):
            raise SolutionFileError(f"row {x + 1} not a permutation", *where)
        rows.append([v - 1 for v in row])
    name = doc.get("name")
    return from_left_action(rows, name=name if isinstance(name, str) else None)


def solution_document(s: Solution) -> dict:
    doc = {"n": s.n, "left": [[v + 1 for v in row] for row in s.left]}
    if s.name:
        doc["name"] = s.name
    return doc


# -- report rendering -------------------------------------------------------------

def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _flatten(value, prefix=""):
    if isinstance(value, dict) and value:
        for k, v in value.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    else:
        yield prefix, value


def render(report: dict, as_json: bool) -> str:
    report = _jsonable(report)
    if as_json:
        return json.dumps(report, indent=2, sort_keys=True)
    lines = []
    for key, value in _flatten(report):
        if isinstance(value, (list, dict, bool)) or value is None:
            value = json.dumps(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


# -- commands ---------------------------------------------------------------------

class UsageError(Exception):
    pass


def _load(path: str) -> Solution:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_solution_file(data)


def _context(s: Solution) -> braided.GroupContext:
    return braided.make_context(s)


def _quotient(ctx: braided.GroupContext) -> braided.FiniteBraidedGroup:
    try:
        return braided.quotient(ctx)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _perm_text(perm) -> list[int]:
    return [v + 1 for v in perm]


def cmd_validate(args) -> tuple[dict, bool]:
    s = _load(args.file)
    report = validate(s)
    return {"name": s.name, "n": s.n, **report.as_dict(), "ok": report.ok}, report.ok


def cmd_degree(args):
    s = _load(args.file)
    p = cyclic_degree(s)
    return {"n": s.n, "p": p, "orders": [perm_order(row) for row in s.left]}, True


def cmd_order(args):
    s = _load(args.file)
    e = pbw.find_good_enumeration(s)
    rs = pbw.relations_of(s, e)
    rules = [f"x{j + 1} x{i + 1} -> x{a + 1} x{b + 1}"
             for (j, i), (a, b) in sorted(rs.rules.items())]
    report = {
        "enumeration": {f"x{x + 1}": pos + 1 for x, pos in enumerate(e)},
        "conditions": rs.flags(),
        "rules": rules,
    }
    return report, rs.ok


def cmd_reduce(args):
    s = _load(args.file)
    ctx = _context(s)
    try:
        w = parse_word(args.word, s.n)
    except SolutionError as exc:
        raise UsageError(str(exc)) from None
    g = braided.reduce_word(ctx, ctx.translate(w))
    report = {
        "word": format_word(w),
        "enumeration": {f"x{x + 1}": pos + 1 for x, pos in enumerate(ctx.enumeration)},
        "p": ctx.p,
        "alpha": list(g.alpha),
        "kappa": list(g.kappa),
        "element": str(g),
        "canonical_word": format_word(braided.canonical_word(ctx, g)),
    }
    return report, True


def _write_table(path: Path, fbg: braided.FiniteBraidedGroup, table) -> None:
    labels = [fbg.label(i) for i in range(fbg.order)]
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([""] + labels)
        for i, row in enumerate(table):
            writer.writerow([labels[i]] + [labels[v] for v in row])


def cmd_quotient(args):
    s = _load(args.file)
    ctx = _context(s)
    fbg = _quotient(ctx)
    report = {
        "p": ctx.p,
        "n": ctx.n,
        "order": fbg.order,
        "expected_order": ctx.p ** ctx.n,
        "x_embeds": braided.x_embeds(fbg),
        "letters": {f"x{i + 1}": fbg.label(fbg.letter_index(i)) for i in range(ctx.n)},
    }
    ok = fbg.order == ctx.p ** ctx.n
    if args.table:
        out = Path(args.table)
        _write_table(out, fbg, fbg.mul.tolist())
        stem = out.with_suffix("")
        _write_table(stem.with_name(stem.name + ".left.csv"), fbg, fbg.left_act.tolist())
        _write_table(stem.with_name(stem.name + ".right.csv"), fbg, fbg.right_act.tolist())
        report["table"] = str(out)
    if args.check_axioms:
        axioms = braided.check_braided_axioms(fbg)
        report["axioms"] = axioms["checks"]
        if axioms["witnesses"]:
            report["axiom_witnesses"] = axioms["witnesses"]
        ok = ok and axioms["ok"]
    return report, ok


def cmd_pgroup(args):
    s = _load(args.file)
    pg = braided.permutation_group(s)
    p = cyclic_degree(s)
    report = {
        "order": pg.order,
        "generators": [_perm_text(g) for g in pg.generators],
        "p": p,
        "divides_p_to_n": (p ** s.n) % pg.order == 0,
    }
    return report, report["divides_p_to_n"]


def _theorem_a(ctx, args):
    r = braided.check_normal_form(ctx, args.len_bound if args.len_bound is not None else 3,
                                  seed=args.seed)
    return {"words": r["words"], "samples": r["samples"],
            "failures": [list(map(str, f)) for f in r["failures"][:10]], "ok": r["ok"]}, r["ok"]


def _theorem_b(ctx, args):
    fbg = _quotient(ctx)
    axioms = braided.check_braided_axioms(fbg)
    epi = braided.quotient_epimorphism_check(fbg, braided.permutation_group(ctx.solution))
    ideal = braided.check_fp_ideal(ctx, args.len_bound if args.len_bound is not None else 2)
    socle = all(braided.in_socle(ctx, braided.generator(ctx, i, e * ctx.p))
                for i in range(ctx.n) for e in (1, -1))
    embeds = braided.x_embeds(fbg)
    report = {
        "p": ctx.p,
        "quotient_order": fbg.order,
        "expected_order": ctx.p ** ctx.n,
        "axioms": axioms["checks"],
        "x_embeds": embeds,
        "permutation_group_order": epi["group_order"],
        "epimorphism": {k: v for k, v in epi.items() if k not in ("quotient_order", "group_order")},
        "fp_in_socle": socle,
        "fp_ideal": {"checked": ideal["checked"], "violations": len(ideal["violations"])},
    }
    ok = (fbg.order == ctx.p ** ctx.n and axioms["ok"] and epi["ok"] and ideal["ok"]
          and socle and (embeds or ctx.p == 1))
    return report, ok


def _theorem_c(ctx, args):
    try:
        field = algebra.parse_field(args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    basis = algebra.check_free_basis(ctx, field)
    roundtrip = algebra.check_roundtrip(ctx, seed=args.seed, field=field)
    central = algebra.check_power_sums_central(ctx, field)
    report = {
        "field": field.name,
        "free_basis": {"pairs": basis["pairs"], "failures": len(basis["failures"])},
        "roundtrip": {"samples": roundtrip["samples"], "failures": len(roundtrip["failures"])},
        "power_sums": central["power_sums"],
    }
    return report, basis["ok"] and roundtrip["ok"] and central["ok"]


def cmd_check(args):
    s = _load(args.file)
    ctx = _context(s)
    runner = {"A": _theorem_a, "B": _theorem_b, "C": _theorem_c}[args.theorem]
    report, ok = runner(ctx, args)
    return {"theorem": args.theorem, **report, "ok": ok}, ok


def cmd_enumerate(args):
    try:
        sols = enumerate_square_free(args.n, up_to_iso=args.up_to_iso)
    except SolutionError as exc:
        raise UsageError(str(exc)) from None
    report = {
        "n": args.n,
        "up_to_iso": args.up_to_iso,
        "count": len(sols),
        "solutions": [{"left": solution_document(s)["left"], "p": cyclic_degree(s)} for s in sols],
    }
    return report, True


def cmd_algebra(args):
    s = _load(args.file)
    ctx = _context(s)
    try:
        field = algebra.parse_field(args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = {"field": field.name, "p": ctx.p}
    ok = True
    if args.center_check:
        central = algebra.check_power_sums_central(ctx, field)
        report["power_sums"] = central["power_sums"]
        ok = central["ok"]
    return report, ok


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    parser = argparse.ArgumentParser(prog="ybe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, func, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.add_argument("file")
        sp.set_defaults(func=func)
        return sp

    with_file("validate", cmd_validate, "check the solution axioms")
    with_file("degree", cmd_degree, "cyclic degree p")
    with_file("order", cmd_order, "good enumeration and rewriting rules")
    sp = with_file("reduce", cmd_reduce, "normal form of a word in G")
    sp.add_argument("--word", required=True, help='e.g. "x3 x1^-2"')
    sp = with_file("quotient", cmd_quotient, "the finite quotient G / F_p")
    sp.add_argument("--table", help="write the multiplication table as CSV")
    sp.add_argument("--check-axioms", action="store_true")
    with_file("pgroup", cmd_pgroup, "the permutation group of left actions")
    sp = with_file("check", cmd_check, "run a theorem suite")
    sp.add_argument("--theorem", required=True, choices=["A", "B", "C"])
    sp.add_argument("--len-bound", type=_non_negative, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--field", default="rational", help="rational or p:<q> (theorem C)")
    sp = sub.add_parser("enumerate", help="list square-free solutions of order n", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--up-to-iso", action="store_true")
    sp.set_defaults(func=cmd_enumerate)
    sp = with_file("algebra", cmd_algebra, "group algebra checks")
    sp.add_argument("--center-check", action="store_true")
    sp.add_argument("--field", default="rational", help="rational or p:<q>")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 after --help
        return exc.code if isinstance(exc.code, int) else 2
    try:
        report, ok = args.func(args)
    except (UsageError, SolutionError, pbw.OrderingError) as exc:
        print(f"ybe: error: {exc}", file=sys.stderr)
        return 2
    print(render(report, args.json))
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())
