"""Reader and canonical writer for the fault-tree DSL, plus the trajectory CSV reader.

One statement per line::

    # comment
    basic Aa p=0.1 kind=repairable
    gate A = Aa | (Ab & B) | koon(2, x, y, z)
    top A, B

``|`` binds looser than ``&``.  Identifiers are ``[A-Za-z_][A-Za-z0-9_]*``
and case-sensitive; gates may be referenced before they are declared.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import (
    BadKooN,
    BadProbability,
    DslSyntaxError,
    DuplicateId,
    EmptyTops,
    NonMonotoneTime,
    UnresolvedReference,
)
from .model import (
    And,
    BasicEvent,
    BasicRef,
    Expr,
    FaultTree,
    Gate,
    GateRef,
    Kind,
    KooN,
    Or,
    build_tree,
)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_FLOAT = re.compile(r"[-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?")
_INT = re.compile(r"\d+")
_WS = re.compile(r"[ \t\r\f\v]*")

MAX_NESTING = 64


@dataclass(frozen=True)
class _Name:
    id: str
    line: int
    col: int


@dataclass(frozen=True)
class _RawNode:
    op: str  # "or", "and", "koon"
    children: tuple
    k: int = 0
    line: int = 0
    col: int = 0


_Raw = Union[_Name, _RawNode]


class _LineParser:
    """Recursive descent over a single statement line."""

    def __init__(self, text: str, lineno: int):
        self.text = text
        self.pos = 0
        self.lineno = lineno
        self.depth = 0

    def error(self, message: str, pos: int | None = None) -> DslSyntaxError:
        return DslSyntaxError(message, line=self.lineno, col=(self.pos if pos is None else pos) + 1)

    def skip(self) -> None:
        self.pos = _WS.match(self.text, self.pos).end()

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek(self, literal: str) -> bool:
        self.skip()
        return self.text.startswith(literal, self.pos)

    def accept(self, literal: str) -> bool:
        if self.peek(literal):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str) -> None:
        if not self.accept(literal):
            found = self.text[self.pos:self.pos + 1] or "end of line"
            raise self.error(f"expected {literal!r}, found {found!r}")

    def ident(self) -> _Name:
        self.skip()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            found = self.text[self.pos:self.pos + 1] or "end of line"
            raise self.error(f"expected identifier, found {found!r}")
        self.pos = m.end()
        return _Name(m.group(), self.lineno, m.start() + 1)

    def match(self, pattern: re.Pattern, what: str) -> str:
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group()

    def finish(self) -> None:
        if not self.at_end():
            raise self.error(f"unexpected {self.text[self.pos]!r}")

    # expr := term ("|" term)*
    def expr(self) -> _Raw:
        start = self._col()
        terms = [self.term()]
        while self.accept("|"):
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else _RawNode("or", tuple(terms), line=self.lineno, col=start)

    # term := factor ("&" factor)*
    def term(self) -> _Raw:
        start = self._col()
        factors = [self.factor()]
        while self.accept("&"):
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else _RawNode("and", tuple(factors), line=self.lineno, col=start)

    # factor := ID | "(" expr ")" | "koon(" INT "," ID ("," ID)* ")"
    def factor(self) -> _Raw:
        start = self._col()
        if self.accept("koon("):
            digits = self.match(_INT, "integer threshold")
            if len(digits) > 9:
                raise self.error("threshold too large")
            k = int(digits)
            names = []
            self.expect(",")
            names.append(self.ident())
            while self.accept(","):
                names.append(self.ident())
            self.expect(")")
            return _RawNode("koon", tuple(names), k=k, line=self.lineno, col=start)
        if self.accept("("):
            self.depth += 1
            if self.depth > MAX_NESTING:
                raise self.error(f"parentheses nested deeper than {MAX_NESTING}")
            inner = self.expr()
            self.expect(")")
            self.depth -= 1
            return inner
        return self.ident()

    def _col(self) -> int:
        self.skip()
        return self.pos + 1


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_tree(text: str) -> FaultTree:
    """Parse DSL text into a validated tree.  Every error carries line and column."""
    basics: list[BasicEvent] = []
    where: dict[str, tuple[int, int]] = {}
    raw_gates: list[tuple[_Name, _Raw]] = []
    tops: list[_Name] = []

    def declare(name: _Name) -> None:
        if name.id in where:
            first = where[name.id][0]
            raise DuplicateId(f"{name.id} (first declared on line {first})", line=name.line, col=name.col)
        where[name.id] = (name.line, name.col)

    for lineno, line in enumerate(text.splitlines(), start=1):
        p = _LineParser(_strip_comment(line), lineno)
        if p.at_end():
            continue
        keyword = p.ident()
        if keyword.id == "basic":
            name = p.ident()
            declare(name)
            prob = None
            kind = Kind.NON_REPAIRABLE
            if p.accept("p="):
                ppos = p._col()
                prob = float(p.match(_FLOAT, "probability"))
                if not 0.0 <= prob <= 1.0 or math.isnan(prob):
                    raise BadProbability(f"{name.id}: p={prob}", line=lineno, col=ppos)
            if p.accept("kind="):
                kpos = p._col()
                word = p.ident().id
                try:
                    kind = Kind(word)
                except ValueError:
                    raise DslSyntaxError(f"unknown kind {word!r}", line=lineno, col=kpos) from None
            p.finish()
            basics.append(BasicEvent(name.id, kind, prob))
        elif keyword.id == "gate":
            name = p.ident()
            declare(name)
            p.expect("=")
            body = p.expr()
            p.finish()
            raw_gates.append((name, body))
        elif keyword.id == "top":
            tops.append(p.ident())
            while p.accept(","):
                tops.append(p.ident())
            p.finish()
        else:
            raise DslSyntaxError(
                f"expected 'basic', 'gate' or 'top', found {keyword.id!r}",
                line=lineno,
                col=keyword.col,
            )

    basic_ids = {b.id for b in basics}
    gate_ids = {name.id for name, _ in raw_gates}

    def resolve(node: _Raw) -> Expr:
        if isinstance(node, _Name):
            if node.id in basic_ids:
                return BasicRef(node.id)
            if node.id in gate_ids:
                return GateRef(node.id)
            raise UnresolvedReference(node.id, line=node.line, col=node.col)
        if node.op == "koon":
            if not 1 <= node.k <= len(node.children):
                raise BadKooN(f"koon({node.k}) over {len(node.children)} inputs", line=node.line, col=node.col)
            return KooN(node.k, [resolve(c) for c in node.children])
        cls = Or if node.op == "or" else And
        return cls([resolve(c) for c in node.children])

    gates = [Gate(name.id, resolve(body)) for name, body in raw_gates]
    if not tops:
        raise EmptyTops("no top statement")
    seen_tops = []
    for t in tops:
        if t.id not in gate_ids:
            raise UnresolvedReference(f"top {t.id} is not a gate", line=t.line, col=t.col)
        if t.id not in seen_tops:
            seen_tops.append(t.id)
    return build_tree(basics, gates, seen_tops)


def _format_expr(expr: Expr) -> str:
    if isinstance(expr, (BasicRef, GateRef)):
        return expr.id
    if isinstance(expr, KooN):
        return f"koon({expr.k}," + ",".join(r.id for r in expr.inputs) + ")"
    if len(expr.children) == 1:
        return _format_expr(expr.children[0])
    op = " | " if isinstance(expr, Or) else " & "
    return "(" + op.join(_format_expr(c) for c in expr.children) + ")"


def serialize(tree: FaultTree) -> str:
    """Canonical text: basics, then gates in declaration order, then tops."""
    lines = []
    for b in tree.basics:
        line = f"basic {b.id}"
        if b.prob is not None:
            line += f" p={b.prob!r}"
        if b.kind is not Kind.NON_REPAIRABLE:
            line += f" kind={b.kind.value}"
        lines.append(line)
    for g in tree.gates:
        lines.append(f"gate {g.id} = {_format_expr(g.body)}")
    lines.append("top " + ", ".join(tree.tops))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class TrajectoryEvent:
    time: float
    basic_id: str
    value: bool


Trajectory = tuple  # tuple[TrajectoryEvent, ...]


def parse_trajectory(text: str) -> tuple[TrajectoryEvent, ...]:
    """Read ``time,basic_id,value`` lines; value is 0 or 1, times never decrease.

    Blank lines and ``#`` comments are skipped.
    """
    events = []
    last = -math.inf
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        row = line.split(",")
        if len(row) != 3:
            raise DslSyntaxError(f"expected 3 fields, found {len(row)}", line=lineno, col=1)
        t_text, basic_id, v_text = (f.strip() for f in row)
        try:
            t = float(t_text)
        except ValueError:
            raise DslSyntaxError(f"bad time {t_text!r}", line=lineno, col=1) from None
        if not math.isfinite(t) or t < 0:
            raise DslSyntaxError(f"time must be a nonnegative number, got {t_text!r}", line=lineno, col=1)
        if not _IDENT.fullmatch(basic_id):
            raise DslSyntaxError(f"bad identifier {basic_id!r}", line=lineno, col=2)
        if v_text not in ("0", "1"):
            raise DslSyntaxError(f"value must be 0 or 1, got {v_text!r}", line=lineno, col=3)
        if t < last:
            raise NonMonotoneTime(f"time {t_text} after {last:g}", line=lineno, col=1)
        last = t
        events.append(TrajectoryEvent(t, basic_id, v_text == "1"))
    return tuple(events)


def format_trajectory(events) -> str:
    return "".join(f"{e.time:g},{e.basic_id},{int(e.value)}\n" for e in events)


__all__ = [
    "Trajectory",
    "TrajectoryEvent",
    "format_trajectory",
    "parse_trajectory",
    "parse_tree",
    "serialize",
]
