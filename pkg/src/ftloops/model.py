"""Fault-tree model: basic events, gate expressions, validation, K-of-N expansion.

Gate bodies are negation-free by construction: the only expression nodes are
references, AND, OR and K-of-N thresholds.  Gates may reference each other
cyclically, including directly themselves.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    BadKooN,
    BadProbability,
    DuplicateId,
    EmptyTops,
    ModelError,
    UnknownGate,
    UnresolvedReference,
)


class Kind(enum.Enum):
    NON_REPAIRABLE = "nonrepairable"
    REPAIRABLE = "repairable"


@dataclass(frozen=True)
class BasicEvent:
    id: str
    kind: Kind = Kind.NON_REPAIRABLE
    prob: float | None = None


@dataclass(frozen=True)
class BasicRef:
    id: str


@dataclass(frozen=True)
class GateRef:
    id: str


@dataclass(frozen=True)
class Or:
    children: tuple[Expr, ...]

    def __init__(self, children: Iterable[Expr]):
        object.__setattr__(self, "children", tuple(children))


@dataclass(frozen=True)
class And:
    children: tuple[Expr, ...]

    def __init__(self, children: Iterable[Expr]):
        object.__setattr__(self, "children", tuple(children))


@dataclass(frozen=True)
class KooN:
    """At least ``k`` of ``inputs`` are TRUE."""

    k: int
    inputs: tuple[Union[BasicRef, GateRef], ...]

    def __init__(self, k: int, inputs: Iterable[Union[BasicRef, GateRef]]):
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "inputs", tuple(inputs))


Expr = Union[BasicRef, GateRef, Or, And, KooN]
Ref = Union[BasicRef, GateRef]

# Gate id -> value, or basic id -> value.
StateVector = dict
Assignment = dict


@dataclass(frozen=True)
class Gate:
    id: str
    body: Expr


def walk(expr: Expr) -> Iterator[Expr]:
    """Yield every node of ``expr`` in pre-order (iteratively)."""
    stack = [expr]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (Or, And)):
            stack.extend(reversed(node.children))
        elif isinstance(node, KooN):
            stack.extend(reversed(node.inputs))


def referenced_ids(expr: Expr) -> set[str]:
    return {n.id for n in walk(expr) if isinstance(n, (BasicRef, GateRef))}


def referenced_gates(expr: Expr) -> set[str]:
    return {n.id for n in walk(expr) if isinstance(n, GateRef)}


def _collapse(cls, children: list[Expr]) -> Expr:
    return children[0] if len(children) == 1 else cls(children)


def expand_koon(expr: Expr) -> Expr:
    """Replace every K-of-N node by an OR of all k-element AND terms.

    Single-term ORs and single-input ANDs collapse to their only child, so
    1-of-n yields a plain OR and n-of-n a plain AND.  Nodes without K-of-N
    descendants are returned unchanged, which makes the expansion idempotent.
    """
    if isinstance(expr, KooN):
        if not 1 <= expr.k <= len(expr.inputs):
            raise BadKooN(f"koon({expr.k}) over {len(expr.inputs)} inputs")
        terms = [
            _collapse(And, list(combo))
            for combo in itertools.combinations(expr.inputs, expr.k)
        ]
        return _collapse(Or, terms)
    if isinstance(expr, (Or, And)):
        children = [expand_koon(c) for c in expr.children]
        if all(new is old for new, old in zip(children, expr.children)):
            return expr
        return type(expr)(children)
    return expr


def evaluate(expr: Expr, values: Mapping[str, bool]) -> bool:
    """Truth value of ``expr`` with every referenced id looked up in ``values``."""
    if isinstance(expr, (BasicRef, GateRef)):
        return values[expr.id]
    if isinstance(expr, Or):
        return any(evaluate(c, values) for c in expr.children)
    if isinstance(expr, And):
        return all(evaluate(c, values) for c in expr.children)
    if isinstance(expr, KooN):
        return sum(values[r.id] for r in expr.inputs) >= expr.k
    raise TypeError(f"not an expression node: {expr!r}")


def _validate_expr(expr: Expr, gate_id: str, basics: set[str], gates: set[str]) -> None:
    for node in walk(expr):
        if isinstance(node, BasicRef):
            if node.id not in basics:
                raise UnresolvedReference(f"gate {gate_id} references unknown basic event {node.id}")
        elif isinstance(node, GateRef):
            if node.id not in gates:
                raise UnresolvedReference(f"gate {gate_id} references unknown gate {node.id}")
        elif isinstance(node, (Or, And)):
            if not node.children:
                raise ValueError(f"gate {gate_id}: empty {type(node).__name__}")
        elif isinstance(node, KooN):
            if not isinstance(node.k, int) or not 1 <= node.k <= len(node.inputs):
                raise BadKooN(f"gate {gate_id}: koon({node.k}) over {len(node.inputs)} inputs")
        else:
            raise TypeError(f"gate {gate_id}: not an expression node: {node!r}")


@dataclass(frozen=True)
class FaultTree:
    """A validated, immutable fault tree.  Construction checks every invariant."""

    basics: tuple[BasicEvent, ...]
    gates: tuple[Gate, ...]
    tops: tuple[str, ...]
    basic_index: Mapping[str, int] = field(init=False, repr=False, compare=False)
    gate_index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "basics", tuple(self.basics))
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "tops", tuple(self.tops))

        seen: set[str] = set()
        for item in (*self.basics, *self.gates):
            if not item.id:
                raise ModelError("empty identifier")
            if item.id in seen:
                raise DuplicateId(item.id)
            seen.add(item.id)
        for b in self.basics:
            if b.prob is not None and not 0.0 <= b.prob <= 1.0:
                raise BadProbability(f"{b.id}: p={b.prob}")

        basic_ids = {b.id for b in self.basics}
        gate_ids = {g.id for g in self.gates}
        for g in self.gates:
            _validate_expr(g.body, g.id, basic_ids, gate_ids)
        if not self.tops:
            raise EmptyTops("no top gate declared")
        for t in self.tops:
            if t not in gate_ids:
                raise UnresolvedReference(f"top {t} is not a gate")

        object.__setattr__(self, "basic_index", {b.id: i for i, b in enumerate(self.basics)})
        object.__setattr__(self, "gate_index", {g.id: i for i, g in enumerate(self.gates)})

    @property
    def basic_ids(self) -> list[str]:
        return [b.id for b in self.basics]

    @property
    def gate_ids(self) -> list[str]:
        return [g.id for g in self.gates]

    def basic(self, basic_id: str) -> BasicEvent:
        return self.basics[self.basic_index[basic_id]]

    def gate(self, gate_id: str) -> Gate:
        try:
            return self.gates[self.gate_index[gate_id]]
        except KeyError:
            raise UnknownGate(gate_id) from None

    @cached_property
    def expanded_bodies(self) -> dict[str, Expr]:
        return {g.id: expand_koon(g.body) for g in self.gates}

    @cached_property
    def dependencies(self) -> dict[str, list[str]]:
        """Gate id -> sorted ids of the gates its body references."""
        return {g.id: sorted(referenced_gates(g.body)) for g in self.gates}

    def reachable(self, top: str) -> tuple[list[str], list[str]]:
        """Gates and basic events reachable from ``top``, in declaration order."""
        self.gate(top)
        gates_seen = {top}
        basics_seen: set[str] = set()
        stack = [top]
        while stack:
            gid = stack.pop()
            for node in walk(self.gate(gid).body):
                if isinstance(node, GateRef) and node.id not in gates_seen:
                    gates_seen.add(node.id)
                    stack.append(node.id)
                elif isinstance(node, BasicRef):
                    basics_seen.add(node.id)
        return (
            [g for g in self.gate_ids if g in gates_seen],
            [b for b in self.basic_ids if b in basics_seen],
        )

    @cached_property
    def sweep(self) -> Callable[[Sequence[bool], Sequence[bool]], tuple[bool, ...]]:
        """One synchronous application of every gate body.

        Takes basic values and gate values (both in declaration order) and
        returns the new gate values.
        """
        return _compile_sweep(self)

    def assignment_vector(self, assignment: Mapping[str, bool]) -> tuple[bool, ...]:
        missing = [b for b in self.basic_ids if b not in assignment]
        if missing:
            raise ValueError(f"assignment does not cover basic events: {', '.join(missing)}")
        extra = [k for k in assignment if k not in self.basic_index]
        if extra:
            raise ValueError(f"assignment names unknown basic events: {', '.join(sorted(extra))}")
        return tuple(bool(assignment[b]) for b in self.basic_ids)

    def state_vector(self, state: Mapping[str, bool]) -> tuple[bool, ...]:
        missing = [g for g in self.gate_ids if g not in state]
        if missing:
            raise ValueError(f"state does not cover gates: {', '.join(missing)}")
        extra = [k for k in state if k not in self.gate_index]
        if extra:
            raise ValueError(f"state names unknown gates: {', '.join(sorted(extra))}")
        return tuple(bool(state[g]) for g in self.gate_ids)

    def as_state(self, vector: Sequence[bool]) -> dict[str, bool]:
        return dict(zip(self.gate_ids, vector))

    def as_assignment(self, vector: Sequence[bool]) -> dict[str, bool]:
        return dict(zip(self.basic_ids, vector))


def build_tree(
    basics: Iterable[BasicEvent],
    gates: Iterable[Gate],
    tops: Iterable[str],
) -> FaultTree:
    """Validate and assemble a fault tree.

    Raises DuplicateId, UnresolvedReference, EmptyTops, BadKooN or
    BadProbability on invalid input.
    """
    return FaultTree(tuple(basics), tuple(gates), tuple(tops))


def _expr_source(expr: Expr, tree: FaultTree) -> str:
    if isinstance(expr, BasicRef):
        return f"a[{tree.basic_index[expr.id]}]"
    if isinstance(expr, GateRef):
        return f"s[{tree.gate_index[expr.id]}]"
    if isinstance(expr, KooN):
        inputs = ", ".join(_expr_source(r, tree) for r in expr.inputs)
        return f"(sum(({inputs},)) >= {expr.k})"
    op = " or " if isinstance(expr, Or) else " and "
    return "(" + op.join(_expr_source(c, tree) for c in expr.children) + ")"


def _compile_sweep(tree: FaultTree):
    # All gate bodies become one generated lambda over index lookups; very deep
    # nesting falls back to the tree-walking evaluator.
    if not tree.gates:
        return lambda a, s: ()
    try:
        parts = [f"bool({_expr_source(g.body, tree)})" for g in tree.gates]
        src = "lambda a, s: (" + ", ".join(parts) + ",)"
        return eval(compile(src, "<sweep>", "eval"), {"sum": sum, "bool": bool})
    except (RecursionError, SyntaxError, MemoryError):
        basic_ids = tree.basic_ids
        gate_ids = tree.gate_ids
        bodies = [g.body for g in tree.gates]

        def sweep(a, s):
            values = dict(zip(basic_ids, a))
            values.update(zip(gate_ids, s))
            return tuple(evaluate(b, values) for b in bodies)

        return sweep
