"""Gate dependency graph, strongly connected components and loop classification."""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import CapExceeded
from .model import FaultTree


class LoopClass(enum.Enum):
    ACYCLIC = "Acyclic"
    ORDINARY = "Ordinary"
    LINEAR = "LinearInterrelated"
    NON_LINEAR = "NonLinearInterrelated"


def strongly_connected_components(
    vertices: Iterable[str], edges: Mapping[str, Sequence[str]]
) -> list[set[str]]:
    """Tarjan's algorithm, iterative.  Components come out dependencies-first."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    result: list[set[str]] = []
    counter = 0

    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(edges.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(edges.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                result.append(comp)
    return result


def _ordered(components: list[set[str]], edges: Mapping[str, Sequence[str]]) -> list[list[str]]:
    # Dependencies before dependents; among ready components the one with the
    # lexicographically smallest member goes first.
    owner = {v: i for i, comp in enumerate(components) for v in comp}
    pending = [0] * len(components)
    dependents: list[set[int]] = [set() for _ in components]
    for i, comp in enumerate(components):
        deps = {owner[w] for v in comp for w in edges.get(v, ()) if w in owner} - {i}
        pending[i] = len(deps)
        for d in deps:
            dependents[d].add(i)
    heap = [(min(comp), i) for i, comp in enumerate(components) if pending[i] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, i = heapq.heappop(heap)
        out.append(sorted(components[i]))
        for j in dependents[i]:
            pending[j] -= 1
            if pending[j] == 0:
                heapq.heappush(heap, (min(components[j]), j))
    return out


def components_of(tree: FaultTree, gates: Iterable[str] | None = None) -> list[list[str]]:
    """SCCs of the dependency graph restricted to ``gates``, dependencies first."""
    nodes = sorted(tree.gate_ids if gates is None else gates)
    keep = set(nodes)
    edges = {g: [h for h in tree.dependencies[g] if h in keep] for g in nodes}
    return _ordered(strongly_connected_components(nodes, edges), edges)


def loop_gates(tree: FaultTree) -> list[str]:
    """Gates lying on some cycle, in declaration order."""
    on_cycle = set()
    for comp in components_of(tree):
        if len(comp) > 1 or comp[0] in tree.dependencies[comp[0]]:
            on_cycle.update(comp)
    return [g for g in tree.gate_ids if g in on_cycle]


@dataclass(frozen=True)
class Component:
    gates: tuple[str, ...]
    loop_class: LoopClass | None
    diagnostic: str | None = None


@dataclass(frozen=True)
class SccReport:
    components: tuple[Component, ...]
    edges: dict[str, list[str]] = field(repr=False, compare=False, default_factory=dict)

    def class_of(self, gate_id: str) -> LoopClass | None:
        for comp in self.components:
            if gate_id in comp.gates:
                return comp.loop_class
        raise KeyError(gate_id)

    def to_dict(self) -> dict:
        return {
            "components": [
                {
                    "gates": list(c.gates),
                    "class": c.loop_class.value if c.loop_class else None,
                    **({"diagnostic": c.diagnostic} if c.diagnostic else {}),
                }
                for c in self.components
            ]
        }


def _classify(tree: FaultTree, members: list[str], cap: int) -> LoopClass:
    from .cutset import to_dnf

    inside = set(members)
    if len(members) == 1 and members[0] not in tree.dependencies[members[0]]:
        return LoopClass.ACYCLIC
    refs = {g: [h for h in tree.dependencies[g] if h in inside] for g in members}
    if all(len(r) == 1 for r in refs.values()):
        # Out-degree one inside a strongly connected set is a single cycle.
        return LoopClass.ORDINARY
    for g in members:
        for product in to_dnf(tree.expanded_bodies[g], cap):
            if len(product & inside) >= 2:
                return LoopClass.NON_LINEAR
    return LoopClass.LINEAR


def analyze_structure(tree: FaultTree, cap: int | None = None) -> SccReport:
    """Partition the gates into SCCs and classify each one.

    A component whose DNF conversion exceeds the product cap is reported with
    ``loop_class=None`` and a diagnostic instead of failing the analysis.
    """
    from .cutset import default_cap

    if cap is None:
        cap = default_cap()
    comps = []
    for members in components_of(tree):
        try:
            comps.append(Component(tuple(members), _classify(tree, members, cap)))
        except CapExceeded as exc:
            comps.append(Component(tuple(members), None, f"CapExceeded: {exc}"))
    return SccReport(tuple(comps), dict(tree.dependencies))
