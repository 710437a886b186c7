"""Brute-force reference semantics used by the tests.

Nothing here touches ``EventStructure.tables`` or the enumerator. Enabling
is read straight off the relation sets, and traces are found by testing
every duplicate-free sequence against the trace definition.
"""

from __future__ import annotations

from itertools import permutations

from prioes.core import EventStructure, Variant


def is_enabled(es: EventStructure, done: frozenset[str], e: str) -> bool:
    if e in done:
        return False
    v = es.variant
    if v is Variant.PRIME:
        causes_ok = all(a in done for a, b in es.order if b == e and a != e)
    else:
        causes_ok = all(b.members & done for b in es.bundles if b.target == e)
    if not causes_ok:
        return False
    if v is Variant.EXTENDED_BUNDLE:
        # e ~> x: once x has occurred, e is disabled
        return not any(a == e and x in done for a, x in es.disabling)
    return not any(frozenset((e, x)) in es.conflict for x in done)


def enabled_set(es: EventStructure, done) -> frozenset[str]:
    done = frozenset(done)
    return frozenset(e for e in es.events if is_enabled(es, done, e))


def is_trace(es: EventStructure, sigma, use_priority: bool) -> bool:
    sigma = tuple(sigma)
    if len(set(sigma)) != len(sigma):
        return False
    for k, e in enumerate(sigma):
        if not is_enabled(es, frozenset(sigma[:k]), e):
            return False
    if not use_priority:
        return True
    pos = {e: k for k, e in enumerate(sigma)}
    for i in range(len(sigma)):
        en = enabled_set(es, sigma[:i])
        for lo, hi in es.priority:
            if lo in pos and hi in pos and lo in en and hi in en and pos[lo] < pos[hi]:
                return False
    return True


def all_sequences(events):
    for r in range(len(events) + 1):
        yield from permutations(events, r)


def traces(es: EventStructure, use_priority: bool = False) -> set[tuple[str, ...]]:
    return {s for s in all_sequences(es.events) if is_trace(es, s, use_priority)}


def traces_over(es: EventStructure, c, use_priority: bool = False) -> set[tuple[str, ...]]:
    c = frozenset(c)
    return {s for s in permutations(sorted(c)) if is_trace(es, s, use_priority)}


def configurations(es: EventStructure, use_priority: bool = False) -> set[frozenset[str]]:
    return {frozenset(s) for s in traces(es, use_priority)}
