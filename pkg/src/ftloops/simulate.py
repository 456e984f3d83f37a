"""Event-driven simulation of basic-event flips over a cyclic fault tree.

Gates carry memory: after each timestamp the system relaxes from the previous
gate vector, not from all-FALSE.  With non-repairable events this always lands
on the least fixed point of the final assignment regardless of event order;
a repairable event that fails and is repaired can leave a loop latched TRUE.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import IllegalRepair, UnknownBasic
from .fixpoint import RelaxResult, relax_vector
from .model import FaultTree, Kind
from .parser import TrajectoryEvent


@dataclass(frozen=True)
class SimStep:
    time: float
    assignment: dict[str, bool]
    result: RelaxResult


@dataclass(frozen=True)
class SimResult:
    """Per-timestamp relaxation results.

    When a step oscillates the run stops there: ``oscillated`` is set, ``final``
    is None and the last step's ``result.cycle`` holds the cycle.
    """

    timeline: tuple[SimStep, ...]
    final: dict[str, bool] | None
    oscillated: bool

    def trace(self, gate_id: str) -> list[bool]:
        """Value of one gate after each step (fixpoint steps only)."""
        return [s.result.state[gate_id] for s in self.timeline if s.result.is_fixpoint]

    def to_dict(self) -> dict:
        return {
            "timeline": [
                {
                    "time": s.time,
                    "assignment": s.assignment,
                    "state": s.result.state,
                    "sweeps": s.result.sweeps,
                    "oscillation": list(s.result.cycle) if s.result.cycle else None,
                }
                for s in self.timeline
            ],
            "final": self.final,
            "oscillated": self.oscillated,
        }


def simulate(tree: FaultTree, trajectory: Iterable[TrajectoryEvent]) -> SimResult:
    """Apply events in time order from the all-FALSE state.

    Events sharing a timestamp are applied together, in file order, before
    the gates settle.  A non-repairable event may not go from TRUE to FALSE.
    """
    events = sorted(trajectory, key=lambda e: e.time)  # stable: ties keep file order
    for e in events:
        if e.basic_id not in tree.basic_index:
            raise UnknownBasic(e.basic_id)

    basics = [False] * len(tree.basics)
    state = (False,) * len(tree.gates)
    timeline = []
    for time, group in itertools.groupby(events, key=lambda e: e.time):
        for e in group:
            i = tree.basic_index[e.basic_id]
            if basics[i] and not e.value and tree.basics[i].kind is Kind.NON_REPAIRABLE:
                raise IllegalRepair(f"{e.basic_id} is non-repairable but goes TRUE->FALSE at t={time:g}")
            basics[i] = e.value
        vec = tuple(basics)
        fixed, cycle, sweeps = relax_vector(tree, vec, state)
        if fixed is None:
            result = RelaxResult(None, tuple(tree.as_state(s) for s in cycle), sweeps)
            timeline.append(SimStep(time, tree.as_assignment(vec), result))
            return SimResult(tuple(timeline), None, True)
        state = fixed
        timeline.append(SimStep(time, tree.as_assignment(vec), RelaxResult(tree.as_state(state), None, sweeps)))
    return SimResult(tuple(timeline), tree.as_state(state), False)
