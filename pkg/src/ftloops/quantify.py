"""TOP probability for non-repairable trees with independent basic events."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

from .cutset import minimal_cut_sets
from .errors import MissingProbability, RepairableUnsupported, TooLarge
from .fixpoint import least_fixpoint_vector
from .model import FaultTree, Kind

MAX_ENUMERATION_BASICS = 20
MAX_INCLUSION_EXCLUSION_CUTSETS = 20


class Method(enum.Enum):
    EXHAUSTIVE = "enumeration"
    INCLUSION_EXCLUSION = "inclusion-exclusion"
    RARE_EVENT = "rare-event"


@dataclass(frozen=True)
class QuantResult:
    method: Method
    value: float
    cutset_count: int | None
    warnings: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "value": self.value,
            "cutset_count": self.cutset_count,
            "warnings": list(self.warnings),
        }


def _check_inputs(tree: FaultTree, top: str) -> list[str]:
    _, basics = tree.reachable(top)
    repairable = [b for b in basics if tree.basic(b).kind is Kind.REPAIRABLE]
    if repairable:
        raise RepairableUnsupported(repairable)
    missing = [b for b in basics if tree.basic(b).prob is None]
    if missing:
        raise MissingProbability(missing)
    return basics


def _exhaustive(tree: FaultTree, top: str, basics: list[str]) -> float:
    if len(basics) > MAX_ENUMERATION_BASICS:
        raise TooLarge(f"{len(basics)} basic events reachable, enumeration limit {MAX_ENUMERATION_BASICS}")
    positions = [tree.basic_index[b] for b in basics]
    probs = [tree.basic(b).prob for b in basics]
    top_index = tree.gate_index[top]
    vector = [False] * len(tree.basics)
    terms = []
    for outcome in itertools.product((False, True), repeat=len(basics)):
        for i, v in zip(positions, outcome):
            vector[i] = v
        if least_fixpoint_vector(tree, tuple(vector))[top_index]:
            terms.append(math.prod(p if v else 1.0 - p for p, v in zip(probs, outcome)))
    return math.fsum(terms)


def _inclusion_exclusion(tree: FaultTree, cutsets: list[frozenset]) -> float:
    if len(cutsets) > MAX_INCLUSION_EXCLUSION_CUTSETS:
        raise TooLarge(f"{len(cutsets)} cut sets, inclusion-exclusion limit {MAX_INCLUSION_EXCLUSION_CUTSETS}")
    prob = {b.id: b.prob for b in tree.basics}
    terms = []

    def extend(start: int, union: frozenset, size: int) -> None:
        for j in range(start, len(cutsets)):
            u = union | cutsets[j]
            sign = 1.0 if size % 2 == 0 else -1.0
            terms.append(sign * math.prod(prob[e] for e in u))
            extend(j + 1, u, size + 1)

    extend(0, frozenset(), 0)
    return math.fsum(terms)


def top_probability(tree: FaultTree, top: str, method: Method | str = Method.EXHAUSTIVE) -> QuantResult:
    """Probability that ``top`` is TRUE at the analysis time.

    ``enumeration`` sums over every outcome of the reachable basic events,
    ``inclusion-exclusion`` works from the minimal cut sets, and
    ``rare-event`` is the sum of cut-set probabilities, clamped to 1.
    """
    method = Method(method)
    tree.gate(top)
    basics = _check_inputs(tree, top)
    if method is Method.EXHAUSTIVE:
        return QuantResult(method, _exhaustive(tree, top, basics), None)

    cutsets = sorted(minimal_cut_sets(tree, top), key=lambda p: (len(p), sorted(p)))
    if method is Method.INCLUSION_EXCLUSION:
        return QuantResult(method, _inclusion_exclusion(tree, cutsets), len(cutsets))

    prob = {b.id: b.prob for b in tree.basics}
    value = math.fsum(math.prod(prob[e] for e in c) for c in cutsets)
    warnings = ()
    if value > 1.0:
        warnings = (f"rare-event sum {value!r} exceeds 1; clamped",)
        value = 1.0
    return QuantResult(method, value, len(cutsets), warnings)
