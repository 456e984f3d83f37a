"""Command-line front end.

Exit status: 0 success, 1 usage error, 2 model or analysis error, 3 size cap
exceeded.  Errors go to stderr as a single ``error: <Kind>: <detail>`` line.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .cutset import default_cap, format_dnf, minimal_cut_sets, sorted_products
from .errors import FaultTreeError, LimitExceeded, UnknownGate
from .fixpoint import least_fixpoint_vector
from .loops import analyze_structure
from .model import FaultTree
from .parser import parse_trajectory, parse_tree
from .quantify import Method, top_probability
from .simulate import simulate
from .solutions import all_candidates, build_state_table, enumerate_solutions


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _pairs(text: str, what: str) -> dict[str, bool]:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, value = item.partition("=")
        name = name.strip()
        value = value.strip()
        if not sep or value not in ("0", "1") or not name:
            raise UsageError(f"bad {what} entry {item!r}; expected id=0 or id=1")
        if name in out:
            raise UsageError(f"{name} given twice in {what}")
        out[name] = value == "1"
    return out


def parse_assignment(tree: FaultTree, text: str) -> dict[str, bool]:
    """``id=0|1`` pairs, comma separated, covering every basic event exactly."""
    values = _pairs(text, "assignment")
    unknown = sorted(set(values) - set(tree.basic_ids))
    if unknown:
        raise UsageError(f"unknown basic events in assignment: {','.join(unknown)}")
    missing = [b for b in tree.basic_ids if b not in values]
    if missing:
        raise UsageError(f"assignment misses basic events: {','.join(missing)}")
    return values


def parse_candidates(tree: FaultTree, text: str) -> list[dict[str, bool]]:
    """``all`` or semicolon-separated gate vectors such as ``A=0,B=1;A=1,B=1``."""
    if text.strip() == "all":
        return all_candidates(tree)
    vectors = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        values = _pairs(chunk, "candidate")
        if set(values) != set(tree.gate_ids):
            raise UsageError(f"candidate {chunk!r} must give every gate exactly once")
        vectors.append(values)
    return vectors


def _top(tree: FaultTree, name: str | None) -> str:
    if name is None:
        return tree.tops[0]
    if name not in tree.gate_index:
        raise UsageError(f"--top {name} is not a gate")
    return name


def _bits(values: dict[str, bool]) -> str:
    return " ".join(f"{k}={int(v)}" for k, v in values.items())


def cmd_validate(tree, args):
    report = {
        "basics": len(tree.basics),
        "gates": len(tree.gates),
        "tops": list(tree.tops),
        "valid": True,
    }
    text = f"ok: {len(tree.basics)} basic events, {len(tree.gates)} gates, tops {','.join(tree.tops)}"
    return report, text


def cmd_loops(tree, args):
    report = analyze_structure(tree, cap=args.cap)
    lines = []
    for c in report.components:
        label = c.loop_class.value if c.loop_class else "Unclassified"
        line = f"{label}: {','.join(c.gates)}"
        if c.diagnostic:
            line += f" ({c.diagnostic})"
        lines.append(line)
    return report.to_dict(), "\n".join(lines)


def cmd_eval(tree, args):
    assignment = parse_assignment(tree, args.assign)
    state = tree.as_state(least_fixpoint_vector(tree, tree.assignment_vector(assignment)))
    return {"assignment": assignment, "state": state}, _bits(state)


def cmd_mcs(tree, args):
    top = _top(tree, args.top)
    products = minimal_cut_sets(tree, top, cap=args.cap)
    return {"top": top, "cut_sets": sorted_products(products)}, "\n".join(format_dnf(products))


def cmd_solutions(tree, args):
    report = enumerate_solutions(tree, parse_assignment(tree, args.assign))
    lines = [f"solution: {_bits(s)}" for s in report.solutions]
    lines.append(f"least: {_bits(report.least)}")
    lines.append("dual: " + (",".join(g for g, d in report.dual.items() if d) or "none"))
    return report.to_dict(), "\n".join(lines)


def cmd_table(tree, args):
    candidates = parse_candidates(tree, args.candidates) if args.candidates else None
    table = build_state_table(tree, candidates)
    lines = []
    for r in table.rows:
        marks = "".join("+" if a else "-" for a in r.available)
        dual = ",".join(g for g, d in r.dual.items() if d) or "-"
        lines.append(f"{_bits(r.assignment)} | {marks} | least {_bits(r.least)} | dual {dual}")
    return table.to_dict(), "\n".join(lines), table.to_csv()


def cmd_simulate(tree, args):
    result = simulate(tree, parse_trajectory(_read(args.trajectory)))
    lines = []
    for step in result.timeline:
        if step.result.is_fixpoint:
            lines.append(f"t={step.time:g}: {_bits(step.result.state)} ({step.result.sweeps} sweeps)")
        else:
            lines.append(f"t={step.time:g}: oscillation over {len(step.result.cycle)} states")
    lines.append(f"final: {_bits(result.final)}" if result.final is not None else "final: none (oscillation)")
    return result.to_dict(), "\n".join(lines)


def cmd_quantify(tree, args):
    top = _top(tree, args.top)
    result = top_probability(tree, top, Method(args.method))
    text = f"{result.method.value}: {result.value!r}"
    for w in result.warnings:
        text += f"\nwarning: {w}"
    return {"top": top, **result.to_dict()}, text


COMMANDS = {
    "validate": cmd_validate,
    "loops": cmd_loops,
    "eval": cmd_eval,
    "mcs": cmd_mcs,
    "solutions": cmd_solutions,
    "table": cmd_table,
    "simulate": cmd_simulate,
    "quantify": cmd_quantify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ftloops", description="Fault-tree analysis for trees with logical loops.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("model", help="model file, or - for stdin")
        p.add_argument("--format", choices=["json", "text", "csv"], default="json")
        p.add_argument("--cap", type=int, default=None, help="DNF product cap (default $FT_PRODUCT_CAP or 100000)")
        return p

    command("validate", "parse and validate a model")
    command("loops", "report SCCs and loop classes")
    command("eval", "least fixed point for one assignment").add_argument("--assign", required=True)
    command("mcs", "minimal cut sets of a top").add_argument("--top")
    command("solutions", "all consistent gate vectors for one assignment").add_argument("--assign", required=True)
    command("table", "state table over every assignment").add_argument(
        "--candidates", help="'all' or gate vectors such as 'A=0,B=0;A=1,B=1'"
    )
    command("simulate", "replay a basic-event trajectory").add_argument("--trajectory", required=True)
    q = command("quantify", "top event probability")
    q.add_argument("--top")
    q.add_argument("--method", choices=[m.value for m in Method], default=Method.EXHAUSTIVE.value)
    return parser


def _emit(report, text, fmt, csv_text=None) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"
    if fmt == "csv":
        return csv_text
    return text + "\n" if text else ""


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.format == "csv" and args.command != "table":
            raise UsageError("--format csv is only available for table")
        if args.cap is None:
            try:
                args.cap = default_cap()
            except ValueError:
                raise UsageError("FT_PRODUCT_CAP must be an integer") from None
        if args.cap < 1:
            raise UsageError("--cap must be positive")
        tree = parse_tree(_read(args.model))
        out = COMMANDS[args.command](tree, args)
        stdout.write(_emit(*out[:2], args.format, out[2] if len(out) > 2 else None))
        return 0
    except UsageError as exc:
        stderr.write(f"error: UsageError: {exc}\n")
        return 1
    except UnknownGate as exc:
        stderr.write(f"error: {exc.code}: {exc}\n")
        return 1
    except LimitExceeded as exc:
        stderr.write(f"error: {exc.code}: {exc}\n")
        return 3
    except FaultTreeError as exc:
        stderr.write(f"error: {exc.code}: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
