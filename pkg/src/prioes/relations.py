"""Small finite-relation utilities: closure, reduction, cycle search.

Relations are sets of ordered pairs over hashable nodes. Everything here is
quadratic or cubic in the node count, which is fine for the structure sizes
the library enumerates exhaustively.
"""

from __future__ import annotations

from collections.abc import Iterable, Hashable
from typing import TypeVar

N = TypeVar("N", bound=Hashable)

Pair = tuple[N, N]


def successors(pairs: Iterable[tuple[N, N]]) -> dict[N, set[N]]:
    succ: dict[N, set[N]] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    return succ


def transitive_closure(pairs: Iterable[tuple[N, N]]) -> set[tuple[N, N]]:
    """Strict transitive closure (reflexive pairs only appear on cycles)."""
    succ = successors(pairs)
    closure: set[tuple[N, N]] = set()
    for start in succ:
        seen: set[N] = set()
        stack = list(succ[start])
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(succ.get(node, ()))
        closure.update((start, n) for n in seen)
    return closure


def reflexive_transitive_closure(
    nodes: Iterable[N], pairs: Iterable[tuple[N, N]]
) -> set[tuple[N, N]]:
    closure = transitive_closure(pairs)
    closure.update((n, n) for n in nodes)
    return closure


def transitive_reduction(pairs: Iterable[tuple[N, N]]) -> set[tuple[N, N]]:
    """Hasse pairs of an acyclic relation.

    Reflexive pairs are ignored. The result is the unique minimal relation
    whose transitive closure equals the closure of ``pairs``.
    """
    strict = {(a, b) for a, b in transitive_closure(pairs) if a != b}
    succ = successors(strict)
    reduced = set()
    for a, b in strict:
        if not any((m, b) in strict for m in succ.get(a, ()) if m != b):
            reduced.add((a, b))
    return reduced


def find_cycle(pairs: Iterable[tuple[N, N]]) -> list[N] | None:
    """Return one directed cycle as a node list (first node not repeated)."""
    succ = successors(pairs)
    for key in succ:
        succ[key] = sorted(succ[key], key=repr)  # deterministic witnesses
    white, grey, black = 0, 1, 2
    colour: dict[N, int] = {}
    for root in sorted(succ, key=repr):
        if colour.get(root, white) != white:
            continue
        path: list[N] = [root]
        iters = [iter(succ.get(root, ()))]
        colour[root] = grey
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                colour[path.pop()] = black
                iters.pop()
                continue
            state = colour.get(nxt, white)
            if state == grey:
                return path[path.index(nxt):]
            if state == white:
                colour[nxt] = grey
                path.append(nxt)
                iters.append(iter(succ.get(nxt, ())))
    return None


def is_partial_order(nodes: Iterable[N], pairs: set[tuple[N, N]]) -> bool:
    nodes = list(nodes)
    if any((n, n) not in pairs for n in nodes):
        return False
    for a, b in pairs:
        if a != b and (b, a) in pairs:
            return False
    succ = successors(pairs)
    return all((a, c) in pairs for a, b in pairs for c in succ.get(b, ()))
