"""Search random structures for non-minimal reduced or retained priority.

Two claims are tested:

* prime: after ``reduce_priority`` no single kept pair can be deleted
  without changing ``T(es, ⋖)``;
* bundle: for every configuration ``C``, no single pair retained after
  ignorance can be deleted without changing ``⌊T⌋_C``.

Every counterexample found is shrunk greedily (events, then relation
pairs) and printed as a document that ``prioes minimality`` can re-check.
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from prioes.cli.parser import render
from prioes.core import EventStructure, RawStructure, Variant, check, validate
from prioes.generate import random_structure
from prioes.reduction import check_minimality, ignore_at_configuration, reduce_priority
from prioes.semantics import enumerate_configurations


@dataclass
class SearchConfig:
    variant: Variant = Variant.PRIME
    samples: int = 500
    seed: int = 2
    max_events: int = 7
    shrink: bool = True


def prime_failure(es: EventStructure) -> bool:
    if es.variant is not Variant.PRIME:
        return False
    return not check_minimality(es, reduce_priority(es).kept)


def bundle_failure(es: EventStructure) -> bool:
    if es.variant is not Variant.BUNDLE:
        return False
    for c in enumerate_configurations(es):
        if ignore_at_configuration(es, c).beyond_theorem:
            return True
    return False


def _candidates(raw: RawStructure):
    """Smaller raw structures: drop one event (and its relations) or one pair."""
    for e, _ in raw.events:
        yield RawStructure(
            raw.variant,
            [x for x in raw.events if x[0] != e],
            conflicts=[p for p in raw.conflicts if e not in p],
            enablings=[p for p in raw.enablings if e not in p],
            bundles=[(m, t) for m, t in raw.bundles if e not in m and t != e],
            disablings=[p for p in raw.disablings if e not in p],
            priority=[p for p in raw.priority if e not in p],
        )
    for field in ("conflicts", "enablings", "bundles", "disablings", "priority"):
        items = getattr(raw, field)
        for k in range(len(items)):
            smaller = RawStructure(
                raw.variant,
                list(raw.events),
                conflicts=list(raw.conflicts),
                enablings=list(raw.enablings),
                bundles=list(raw.bundles),
                disablings=list(raw.disablings),
                priority=list(raw.priority),
            )
            setattr(smaller, field, items[:k] + items[k + 1:])
            yield smaller


def shrink(es: EventStructure, failing) -> EventStructure:
    current = es.to_raw()
    improved = True
    while improved:
        improved = False
        for cand in _candidates(current):
            if not check(cand).ok:
                continue
            if failing(validate(cand)):
                current = cand
                improved = True
                break
    return validate(current)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--variant", choices=["prime", "bundle"], default="prime")
    ap.add_argument("--samples", type=int, default=SearchConfig.samples)
    ap.add_argument("--seed", type=int, default=SearchConfig.seed)
    ap.add_argument("--max-events", type=int, default=SearchConfig.max_events)
    ap.add_argument("--no-shrink", action="store_true")
    args = ap.parse_args()
    cfg = SearchConfig(Variant(args.variant), args.samples, args.seed, args.max_events, not args.no_shrink)

    failing = prime_failure if cfg.variant is Variant.PRIME else bundle_failure
    rng = random.Random(cfg.seed)
    found = []
    for _ in range(cfg.samples):
        es = random_structure(cfg.variant, rng, max_events=cfg.max_events)
        if failing(es):
            found.append(es)
    print(f"{len(found)} of {cfg.samples} {cfg.variant} structures violate minimality")
    if found and cfg.shrink:
        smallest = min((shrink(es, failing) for es in found[:10]), key=lambda e: (len(e.events), len(e.priority)))
        print("smallest shrunk counterexample:\n")
        print(render(smallest.to_raw()), end="")


if __name__ == "__main__":
    main()
