"""Random well-formed structures for property tests and experiments.

Every generator takes a ``random.Random`` so runs are reproducible, and
Hypothesis can drive them through ``st.randoms()``.
"""

from __future__ import annotations

import random
import string
from itertools import combinations, permutations

from .core import EventStructure, RawStructure, Variant, validate
from .relations import reflexive_transitive_closure

NAMES = string.ascii_lowercase


def random_priority(rng: random.Random, events, density: float) -> list[tuple[str, str]]:
    """Acyclic by construction: pairs only go up a random total order."""
    ranked = list(events)
    rng.shuffle(ranked)
    return [(lo, hi) for lo, hi in combinations(ranked, 2) if rng.random() < density]


def _prime(rng, events, raw):
    ranked = list(events)
    rng.shuffle(ranked)
    p_enable = rng.uniform(0.1, 0.5)
    raw.enablings = [(a, b) for a, b in combinations(ranked, 2) if rng.random() < p_enable]
    order = reflexive_transitive_closure(events, raw.enablings)
    p_conflict = rng.uniform(0.0, 0.4)
    conflict = {
        frozenset((a, b))
        for a, b in combinations(events, 2)
        if (a, b) not in order and (b, a) not in order and rng.random() < p_conflict
    }
    # close under heredity; conflicting pairs with a common successor make
    # the closure reflexive, so such seeds are dropped instead
    up = {e: {b for a, b in order if a == e} for e in events}
    closed = set()
    for pair in conflict:
        a, b = tuple(pair)
        grown = {frozenset((x, y)) for x in up[a] for y in up[b]}
        if all(len(p) == 2 for p in grown):
            closed |= grown
    raw.conflicts = sorted(tuple(sorted(p)) for p in closed)


def _bundles(rng, events, max_bundles=2, max_size=3):
    bundles = []
    p_has = rng.uniform(0.2, 0.7)
    for target in events:
        if rng.random() >= p_has:
            continue
        others = [e for e in events if e != target]
        if not others:
            continue
        for _ in range(rng.randint(1, max_bundles)):
            k = rng.randint(1, min(max_size, len(others)))
            bundles.append((tuple(sorted(rng.sample(others, k))), target))
    return bundles


def random_structure(
    variant: Variant | str,
    rng: random.Random,
    *,
    max_events: int = 7,
    n_events: int | None = None,
    priority_density: float | None = None,
) -> EventStructure:
    """A random valid structure of the given variant, with random priority."""
    variant = Variant(variant)
    if n_events is not None:
        n = n_events
    elif rng.random() < 0.15:
        n = rng.randint(0, max_events)
    else:
        n = rng.randint(max_events // 2 + 1, max_events)
    events = list(NAMES[:n])
    raw = RawStructure(variant=variant, events=[(e, e) for e in events])

    if variant is Variant.PRIME:
        _prime(rng, events, raw)
    else:
        raw.bundles = _bundles(rng, events)
        p_rel = rng.uniform(0.0, 0.3)
        if variant is Variant.EXTENDED_BUNDLE:
            dis = {(a, b) for a, b in permutations(events, 2) if rng.random() < p_rel}
            for members, _ in raw.bundles:
                dis.update(permutations(members, 2))
            raw.disablings = sorted(dis)
        else:
            con = {tuple(sorted(p)) for p in combinations(events, 2) if rng.random() < p_rel}
            if variant is Variant.BUNDLE:
                for members, _ in raw.bundles:
                    con.update(combinations(sorted(members), 2))
            raw.conflicts = sorted(con)

    density = priority_density if priority_density is not None else rng.uniform(0.0, 0.5)
    raw.priority = random_priority(rng, events, density)
    return validate(raw)


def drop_random_pairs(rng: random.Random, es: EventStructure) -> EventStructure:
    """Same structure with a random subset of its priority pairs."""
    return es.with_priority(p for p in sorted(es.priority) if rng.random() < 0.5)
