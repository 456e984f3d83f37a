"""Exhaustive enumeration of every gate vector consistent with the equations.

Only gates on cycles are guessed; the remaining gates are functionally
determined by them and are propagated.  The result exposes dual solutions,
i.e. assignments for which more than one consistent gate vector exists.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .cutset import Dnf, default_cap, to_dnf
from .errors import TooManyBasics, TooManyLoopGates
from .fixpoint import least_fixpoint_vector
from .loops import loop_gates
from .model import FaultTree

MAX_LOOP_GATES = 20
MAX_TABLE_BASICS = 20


@dataclass(frozen=True)
class SolutionReport:
    assignment: dict[str, bool]
    solutions: tuple[dict[str, bool], ...]
    least: dict[str, bool]
    dual: dict[str, bool]

    def to_dict(self) -> dict:
        return {
            "assignment": self.assignment,
            "solutions": list(self.solutions),
            "least": self.least,
            "dual": self.dual,
        }


def _loop_indices(tree: FaultTree) -> list[int]:
    loops = [tree.gate_index[g] for g in loop_gates(tree)]
    if len(loops) > MAX_LOOP_GATES:
        raise TooManyLoopGates(f"{len(loops)} gates on cycles, limit {MAX_LOOP_GATES}")
    return loops


def _solution_vectors(
    tree: FaultTree, basics: tuple[bool, ...], loops: list[int]
) -> list[tuple[bool, ...]]:
    pinned = set(loops)
    free = [i for i in range(len(tree.gates)) if i not in pinned]
    sweep = tree.sweep
    found = []
    for guess in itertools.product((False, True), repeat=len(loops)):
        state = [False] * len(tree.gates)
        for i, v in zip(loops, guess):
            state[i] = v
        # Off-cycle gates form a DAG once the loop gates are pinned.
        for _ in range(len(free) + 1):
            nxt = sweep(basics, state)
            changed = False
            for i in free:
                if nxt[i] != state[i]:
                    state[i] = nxt[i]
                    changed = True
            if not changed:
                break
        vec = tuple(state)
        if sweep(basics, vec) == vec:
            found.append(vec)
    return found


def enumerate_solutions(tree: FaultTree, assignment: Mapping[str, bool]) -> SolutionReport:
    """Every consistent gate vector for ``assignment``, with the least one and dual flags."""
    return _report(tree, tree.assignment_vector(assignment), _loop_indices(tree))


def _report(tree: FaultTree, basics: tuple[bool, ...], loops: list[int]) -> SolutionReport:
    found = _solution_vectors(tree, basics, loops)
    least = tuple(all(col) for col in zip(*found)) if found else ()
    fixpoint = least_fixpoint_vector(tree, basics)
    if least != fixpoint or least not in found:
        raise AssertionError(f"pointwise minimum {least} is not the least fixed point {fixpoint}")
    dual = {g: len({s[i] for s in found}) > 1 for i, g in enumerate(tree.gate_ids)}
    return SolutionReport(
        assignment=tree.as_assignment(basics),
        solutions=tuple(tree.as_state(s) for s in found),
        least=tree.as_state(least),
        dual=dual,
    )


def basic_only_part(tree: FaultTree, gate_id: str, cap: int | None = None) -> Dnf:
    """Products of the gate's own DNF that mention no gate at all."""
    gate_ids = set(tree.gate_ids)
    products = to_dnf(tree.expanded_bodies[gate_id], default_cap() if cap is None else cap)
    return frozenset(p for p in products if not p & gate_ids)


@dataclass(frozen=True)
class StateRow:
    assignment: dict[str, bool]
    available: tuple[bool, ...]
    solutions: tuple[dict[str, bool], ...]
    least: dict[str, bool]
    dual: dict[str, bool]


@dataclass(frozen=True)
class StateTable:
    basics: tuple[str, ...]
    gates: tuple[str, ...]
    candidates: tuple[dict[str, bool], ...]
    rows: tuple[StateRow, ...]

    def to_dict(self) -> dict:
        return {
            "basics": list(self.basics),
            "gates": list(self.gates),
            "candidates": list(self.candidates),
            "rows": [
                {
                    "assignment": r.assignment,
                    "available": list(r.available),
                    "solutions": list(r.solutions),
                    "least": r.least,
                    "dual": r.dual,
                }
                for r in self.rows
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = list(self.basics)
        header += [f"candidate_{i}" for i in range(len(self.candidates))]
        header += ["solutions"]
        header += [f"least_{g}" for g in self.gates]
        header += [f"dual_{g}" for g in self.gates]
        writer.writerow(header)
        for r in self.rows:
            writer.writerow(
                [int(r.assignment[b]) for b in self.basics]
                + ["+" if a else "-" for a in r.available]
                + [len(r.solutions)]
                + [int(r.least[g]) for g in self.gates]
                + [int(r.dual[g]) for g in self.gates]
            )
        return buf.getvalue()


def all_candidates(tree: FaultTree) -> list[dict[str, bool]]:
    """Every gate vector, in binary counting order (first gate most significant)."""
    return [
        tree.as_state(v) for v in itertools.product((False, True), repeat=len(tree.gates))
    ]


def build_state_table(
    tree: FaultTree, candidates: Sequence[Mapping[str, bool]] | None = None
) -> StateTable:
    """One row per assignment, in binary counting order (first basic most significant).

    A candidate gate vector is marked available when one synchronous
    application of the equations maps it to itself.
    """
    n = len(tree.basics)
    if n > MAX_TABLE_BASICS:
        raise TooManyBasics(f"{n} basic events, limit {MAX_TABLE_BASICS}")
    cand_vectors = [tree.state_vector(c) for c in candidates or ()]
    sweep = tree.sweep
    loops = _loop_indices(tree)
    rows = []
    for basics in itertools.product((False, True), repeat=n):
        report = _report(tree, basics, loops)
        rows.append(
            StateRow(
                assignment=report.assignment,
                available=tuple(sweep(basics, c) == c for c in cand_vectors),
                solutions=report.solutions,
                least=report.least,
                dual=report.dual,
            )
        )
    return StateTable(
        basics=tuple(tree.basic_ids),
        gates=tuple(tree.gate_ids),
        candidates=tuple(tree.as_state(c) for c in cand_vectors),
        rows=tuple(rows),
    )
