"""Redundant priority pairs: structural dropping and per-configuration ignorance.

Structural drop rules (a pair ``(e, e')`` means ``e ⋖ e'``):

=========  ================================================================
prime      ``e' # e``, ``e' <= e`` or ``e <= e'`` (closure of ``<=``)
bundle     ``e # e'`` or a bundle relating them in either direction
ebundle    ``e' ~> e`` or a bundle relating them in either direction
dual       ``e # e'`` only
=========  ================================================================

Ignorance for a configuration ``C`` drops ``(e, e')`` when ``e' ⪯_C e`` or
``e ⪯_C e'`` (bundle), or only when ``e' ⪯_C e`` (ebundle). Every result here
can be re-checked by :func:`oracle_trace_equal`, which compares
exhaustively enumerated trace sets.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

from .core import EventStructure, Variant
from .errors import EventSetMismatch, NotAConfiguration, TheoremViolation, VariantUnsupported
from .posets import precedence
from .semantics import DEFAULT_SIZE_LIMIT, is_configuration, trace_tuples

Pair = tuple[str, str]


class DropReason(str, Enum):
    CONFLICT_OVERLAP = "CONFLICT_OVERLAP"
    ENABLING_OVERLAP = "ENABLING_OVERLAP"
    DISABLING_OVERLAP = "DISABLING_OVERLAP"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ReductionReport:
    kept: frozenset[Pair]
    dropped: tuple[tuple[Pair, DropReason], ...]
    variant: Variant

    @property
    def dropped_pairs(self) -> frozenset[Pair]:
        return frozenset(p for p, _ in self.dropped)


def drop_reason(es: EventStructure, lo: str, hi: str) -> DropReason | None:
    """Why ``lo ⋖ hi`` is structurally redundant, or ``None``."""
    v = es.variant
    if v in (Variant.PRIME, Variant.BUNDLE, Variant.DUAL) and es.in_conflict(lo, hi):
        return DropReason.CONFLICT_OVERLAP
    if v is Variant.PRIME:
        if es.leq(hi, lo) or es.leq(lo, hi):
            return DropReason.ENABLING_OVERLAP
    elif v in (Variant.BUNDLE, Variant.EXTENDED_BUNDLE):
        if es.in_some_bundle_of(lo, hi) or es.in_some_bundle_of(hi, lo):
            return DropReason.ENABLING_OVERLAP
    if v is Variant.EXTENDED_BUNDLE and es.disables(hi, lo):
        return DropReason.DISABLING_OVERLAP
    return None


def reduce_priority(es: EventStructure) -> ReductionReport:
    kept, dropped = set(), []
    for lo, hi in sorted(es.priority):
        reason = drop_reason(es, lo, hi)
        if reason is None:
            kept.add((lo, hi))
        else:
            dropped.append(((lo, hi), reason))
    return ReductionReport(frozenset(kept), tuple(dropped), es.variant)


def reduced(es: EventStructure) -> EventStructure:
    return es.with_priority(reduce_priority(es).kept)


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceEquality:
    equal: bool
    witness: tuple[str, ...] | None = None
    only_in: int | None = None  # 1 or 2: which side admits the witness

    def __bool__(self) -> bool:
        return self.equal


def _trace_set(es, use_priority, scope, limit) -> frozenset[tuple[str, ...]]:
    return frozenset(trace_tuples(es, use_priority, over=scope, limit=limit))


def oracle_trace_equal(
    es1: EventStructure,
    es2: EventStructure,
    scope: Iterable[str] | None = None,
    *,
    use_priority: bool = True,
    limit: int = DEFAULT_SIZE_LIMIT,
) -> TraceEquality:
    """Exhaustively compare trace sets, globally or over one configuration.

    On inequality the witness is a shortest (then lexicographically least)
    trace admitted by exactly one side.
    """
    if es1.labels != es2.labels:
        raise EventSetMismatch("structures differ in events or labels", (es1.events, es2.events))
    if scope is not None:
        scope = frozenset(scope)
    t1 = _trace_set(es1, use_priority, scope, limit)
    t2 = _trace_set(es2, use_priority, scope, limit)
    if t1 == t2:
        return TraceEquality(True)
    witness = min(t1 ^ t2, key=lambda s: (len(s), s))
    return TraceEquality(False, witness, 1 if witness in t1 else 2)


# ---------------------------------------------------------------------------
# minimality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinimalityVerdict:
    minimal: bool
    removable: frozenset[Pair] | None = None
    traces: frozenset[tuple[str, ...]] | None = None  # unchanged set, as certificate
    checked: int = 0

    def __bool__(self) -> bool:
        return self.minimal


def check_minimality(
    es: EventStructure,
    relation: Iterable[Pair],
    scope: Iterable[str] | None = None,
    *,
    full_subsets: bool = False,
    limit: int = DEFAULT_SIZE_LIMIT,
) -> MinimalityVerdict:
    """Is every pair of ``relation`` needed for its trace set?

    ``relation`` must be a subset of ``es.priority``. Whole-structure scope
    compares ``T(es, relation)`` with ``T(es, relation \\ {p})`` for each pair
    ``p``; with ``scope=C`` the comparison is over ``⌊T⌋_C`` and only pairs
    inside ``C × C`` are candidates (others never constrain a trace over
    ``C``). ``full_subsets`` tries every proper subset instead of single
    deletions.
    """
    relation = frozenset(relation)
    if not relation <= es.priority:
        raise ValueError("relation must be a subset of the structure's priority")
    if scope is not None:
        scope = frozenset(scope)
        candidates = sorted(p for p in relation if p[0] in scope and p[1] in scope)
    else:
        candidates = sorted(relation)
    base = _trace_set(es.with_priority(relation), True, scope, limit)
    if full_subsets:
        removals = [
            frozenset(c) for r in range(1, len(candidates) + 1) for c in combinations(candidates, r)
        ]
    else:
        removals = [frozenset([p]) for p in candidates]
    for k, removal in enumerate(removals, start=1):
        other = _trace_set(es.with_priority(relation - removal), True, scope, limit)
        if other == base:
            return MinimalityVerdict(False, removal, base, k)
    return MinimalityVerdict(True, None, None, len(removals))


# ---------------------------------------------------------------------------
# configuration-level ignorance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IgnoranceReport:
    configuration: frozenset[str]
    ignorable: frozenset[Pair]
    retained: frozenset[Pair]
    # retained pairs inside C x C whose single removal leaves ⌊T⌋_C unchanged
    beyond_theorem: frozenset[Pair] = field(default=frozenset())


def ignorable_pairs(es: EventStructure, c: Iterable[str]) -> frozenset[Pair]:
    lposet = precedence(es, c)
    if es.variant is Variant.BUNDLE:
        return frozenset(p for p in es.priority if lposet.related(*p))
    return frozenset((lo, hi) for lo, hi in es.priority if lposet.leq(hi, lo) and lo != hi)


def ignore_at_configuration(
    es: EventStructure, c: Iterable[str], *, limit: int = DEFAULT_SIZE_LIMIT
) -> IgnoranceReport:
    """Priority pairs that can be ignored for traces over configuration ``c``.

    The result is re-verified against the trace oracle before it is
    returned; a disagreement raises :class:`TheoremViolation`.
    """
    if es.variant is Variant.PRIME:
        raise VariantUnsupported(
            "prime structures have no ignorance beyond reduce_priority", es.variant
        )
    if es.variant is Variant.DUAL:
        raise VariantUnsupported(
            "ignorance is not possible under causal ambiguity w.r.t. a single poset", es.variant
        )
    c = frozenset(c)
    if not is_configuration(es, c):
        raise NotAConfiguration(f"{{{', '.join(sorted(c))}}} is not a configuration", c)
    ignorable = ignorable_pairs(es, c)
    retained = es.priority - ignorable
    check = oracle_trace_equal(es, es.with_priority(retained), c, limit=limit)
    if not check:
        raise TheoremViolation(
            f"ignoring {sorted(ignorable)} changes the traces over the configuration",
            check.witness,
        )
    base = _trace_set(es.with_priority(retained), True, c, limit)
    extra = frozenset(
        p
        for p in retained
        if p[0] in c
        and p[1] in c
        and _trace_set(es.with_priority(retained - {p}), True, c, limit) == base
    )
    return IgnoranceReport(c, ignorable, retained, extra)
