"""Evaluation of the gate system for a fixed basic-event assignment.

All sweeps are synchronous: every gate is recomputed from the previous gate
vector.  Starting from all-FALSE the sweeps ascend monotonically to the least
fixed point; from an arbitrary start they may instead fall into a cycle, which
is reported rather than resolved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .model import FaultTree


@dataclass(frozen=True)
class RelaxResult:
    """Outcome of relaxing from a start vector.

    Exactly one of ``state`` (a fixed point) and ``cycle`` (an oscillation of
    length >= 2) is set.  ``sweeps`` counts synchronous applications performed.
    """

    state: dict[str, bool] | None
    cycle: tuple[dict[str, bool], ...] | None
    sweeps: int

    @property
    def is_fixpoint(self) -> bool:
        return self.state is not None


def least_fixpoint_vector(tree: FaultTree, basics: Sequence[bool]) -> tuple[bool, ...]:
    """Least solution as a gate tuple, from a basic-value tuple (declaration order)."""
    sweep = tree.sweep
    state = (False,) * len(tree.gates)
    for _ in range(len(tree.gates) + 1):
        nxt = sweep(basics, state)
        if nxt == state:
            return state
        state = nxt
    raise AssertionError("monotone ascent did not settle within |gates| + 1 sweeps")


def eval_least_fixpoint(tree: FaultTree, assignment: Mapping[str, bool]) -> dict[str, bool]:
    """Pointwise-least gate vector consistent with every gate equation."""
    return tree.as_state(least_fixpoint_vector(tree, tree.assignment_vector(assignment)))


def relax_vector(
    tree: FaultTree, basics: Sequence[bool], start: Sequence[bool]
) -> tuple[tuple[bool, ...] | None, list[tuple[bool, ...]] | None, int]:
    sweep = tree.sweep
    current = tuple(start)
    history = [current]
    seen = {current: 0}
    sweeps = 0
    while True:
        nxt = sweep(basics, current)
        sweeps += 1
        if nxt == current:
            return current, None, sweeps
        if nxt in seen:
            j = seen[nxt]
            cycle = history[j:]
            if j == 0:
                # The start state was never produced by a sweep; list the cycle
                # beginning with the first state that was.
                cycle = cycle[1:] + cycle[:1]
            return None, cycle, sweeps
        seen[nxt] = len(history)
        history.append(nxt)
        current = nxt


def relax_from_state(
    tree: FaultTree, assignment: Mapping[str, bool], start: Mapping[str, bool]
) -> RelaxResult:
    """Sweep from ``start`` under ``assignment`` until a state repeats."""
    state, cycle, sweeps = relax_vector(
        tree, tree.assignment_vector(assignment), tree.state_vector(start)
    )
    if state is not None:
        return RelaxResult(tree.as_state(state), None, sweeps)
    return RelaxResult(None, tuple(tree.as_state(s) for s in cycle), sweeps)


def satisfies(tree: FaultTree, assignment: Mapping[str, bool], state: Mapping[str, bool]) -> bool:
    """True when one synchronous application maps ``state`` to itself."""
    vec = tree.state_vector(state)
    return tree.sweep(tree.assignment_vector(assignment), vec) == vec
