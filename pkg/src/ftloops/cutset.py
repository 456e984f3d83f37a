"""Sum-of-products algebra and minimal cut sets of cyclic fault trees.

A product is a frozenset of positive literals (basic-event or gate ids) and a
DNF is a frozenset of products.  The empty DNF is constant FALSE; a DNF holding
the empty product is constant TRUE.

Cycles are removed by self-elimination: in ``X = A | (B & X)`` the least
solution is ``X = A``, so every product that mentions ``X`` is dropped from
``X``'s own equation.  Solving an SCC is Gaussian elimination with that rule:
eliminate one member, substitute it into the rest, repeat, then back-substitute.
"""

from __future__ import annotations

import os
from typing import Iterable, Mapping, Sequence

from .errors import CapExceeded, RepairableUnsupported
from .model import And, BasicRef, Expr, FaultTree, GateRef, Kind, KooN, Or, expand_koon

Product = frozenset
Dnf = frozenset

FALSE: Dnf = frozenset()
TRUE: Dnf = frozenset({frozenset()})

DEFAULT_CAP = 100_000


def default_cap() -> int:
    """Product cap, overridable through the ``FT_PRODUCT_CAP`` environment variable."""
    value = os.environ.get("FT_PRODUCT_CAP")
    return int(value) if value else DEFAULT_CAP


def dnf(*products: Iterable[str]) -> Dnf:
    """Convenience constructor: ``dnf("a", ["b", "c"])`` is a | (b & c)."""
    return frozenset(frozenset([p]) if isinstance(p, str) else frozenset(p) for p in products)


def _check_cap(count: int, cap: int) -> None:
    if count > cap:
        raise CapExceeded(f"{count} products exceed cap {cap}")


def normalize(products: Iterable[Iterable[str]], cap: int = DEFAULT_CAP) -> Dnf:
    """Apply idempotence and absorption: drop every product that contains another."""
    unique = {frozenset(p) for p in products}
    _check_cap(len(unique), cap)
    kept: list[frozenset] = []
    for p in sorted(unique, key=len):
        if not any(k <= p for k in kept):
            kept.append(p)
    return frozenset(kept)


def dnf_or(parts: Iterable[Dnf], cap: int = DEFAULT_CAP) -> Dnf:
    return normalize((p for part in parts for p in part), cap)


def dnf_and(parts: Iterable[Dnf], cap: int = DEFAULT_CAP) -> Dnf:
    result = TRUE
    for part in parts:
        _check_cap(len(result) * len(part), cap)
        result = normalize((p | q for p in result for q in part), cap)
        if not result:
            return FALSE
    return result


def to_dnf(expr: Expr, cap: int = DEFAULT_CAP) -> Dnf:
    """Normalized DNF of a gate body; references become single-literal products."""
    if isinstance(expr, (BasicRef, GateRef)):
        return frozenset({frozenset({expr.id})})
    if isinstance(expr, KooN):
        return to_dnf(expand_koon(expr), cap)
    if isinstance(expr, Or):
        return dnf_or((to_dnf(c, cap) for c in expr.children), cap)
    if isinstance(expr, And):
        return dnf_and((to_dnf(c, cap) for c in expr.children), cap)
    raise TypeError(f"not an expression node: {expr!r}")


def substitute(target: Dnf, var: str, replacement: Dnf, cap: int = DEFAULT_CAP) -> Dnf:
    """Replace literal ``var`` in ``target`` by ``replacement``."""
    if not any(var in p for p in target):
        return target
    out = [p for p in target if var not in p]
    hits = [p - {var} for p in target if var in p]
    _check_cap(len(out) + len(hits) * len(replacement), cap)
    out.extend(h | r for h in hits for r in replacement)
    return normalize(out, cap)


def eliminate_self(var: str, products: Dnf) -> Dnf:
    """Least solution of ``var = products``: drop every product mentioning ``var``."""
    return frozenset(p for p in products if var not in p)


def holds(products: Dnf, true_ids: Iterable[str] | Mapping[str, bool]) -> bool:
    """Truth of a DNF when exactly ``true_ids`` are TRUE."""
    if isinstance(true_ids, Mapping):
        true_ids = {k for k, v in true_ids.items() if v}
    else:
        true_ids = set(true_ids)
    return any(p <= true_ids for p in products)


def sorted_products(products: Dnf) -> list[list[str]]:
    """Display order: by size, then lexicographically."""
    return sorted((sorted(p) for p in products), key=lambda p: (len(p), p))


def format_dnf(products: Dnf) -> list[str]:
    """Text lines ``{a}``, ``{b,c}``; FALSE renders as a single ``FALSE`` line."""
    if not products:
        return ["FALSE"]
    return ["{" + ",".join(p) + "}" for p in sorted_products(products)]


def solve_component(
    equations: dict[str, Dnf],
    order: Sequence[str],
    cap: int = DEFAULT_CAP,
) -> dict[str, Dnf]:
    """Least solution of a system of monotone DNF equations.

    ``equations`` maps each member of the system to its DNF, which may mention
    members and any other literals.  ``order`` fixes the elimination sequence.
    The result expresses every member without member literals.
    """
    eqs = dict(equations)
    order = list(order)
    for i, var in enumerate(order):
        eqs[var] = eliminate_self(var, eqs[var])
        for other in order[i + 1:]:
            eqs[other] = substitute(eqs[other], var, eqs[var], cap)
    for i in range(len(order) - 2, -1, -1):
        var = order[i]
        for later in order[i + 1:]:
            eqs[var] = substitute(eqs[var], later, eqs[later], cap)
    return eqs


def _repairable_reachable(tree: FaultTree, top: str) -> list[str]:
    _, basics = tree.reachable(top)
    return [b for b in basics if tree.basic(b).kind is Kind.REPAIRABLE]


def minimal_cut_sets(
    tree: FaultTree,
    top: str,
    cap: int | None = None,
    elimination_order: Sequence[str] | None = None,
) -> Dnf:
    """Minimal cut sets of ``top`` under least-fixed-point semantics.

    Components are solved bottom-up.  Inside a component members are eliminated
    in ``elimination_order`` (members it omits follow, lexicographically); the
    result does not depend on that order.
    """
    from .loops import components_of

    if cap is None:
        cap = default_cap()
    tree.gate(top)
    repairable = _repairable_reachable(tree, top)
    if repairable:
        raise RepairableUnsupported(repairable)

    reachable, _ = tree.reachable(top)
    priority = {g: i for i, g in enumerate(elimination_order or ())}
    solved: dict[str, Dnf] = {}
    for component in components_of(tree, reachable):
        eqs = {}
        for gid in component:
            body = to_dnf(tree.expanded_bodies[gid], cap)
            for dep in tree.dependencies[gid]:
                if dep in solved:
                    body = substitute(body, dep, solved[dep], cap)
            eqs[gid] = body
        order = sorted(component, key=lambda g: (priority.get(g, len(priority)), g))
        solved.update(solve_component(eqs, order, cap))
    return solved[top]
