"""Event-structure data model and structural validation.

Four variants share one immutable :class:`EventStructure` value:

* ``prime``   -- conflict ``#`` plus a partial order ``<=`` (given by
  generating pairs, closed during validation);
* ``bundle``  -- conflict plus bundles ``X |-> e`` whose sets are pairwise
  conflicting;
* ``ebundle`` -- disabling ``e ~> e'`` (``e'`` disables ``e``) plus bundles
  whose sets are pairwise mutually disabling;
* ``dual``    -- conflict plus unconstrained bundles.

Every variant carries a priority relation: a pair ``(e, e')`` means ``e'``
has strictly higher priority than ``e``.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import permutations

from .errors import ValidationError
from .relations import find_cycle, reflexive_transitive_closure, transitive_reduction

EVENT_ID = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.']*\Z")


class Variant(str, Enum):
    PRIME = "prime"
    BUNDLE = "bundle"
    EXTENDED_BUNDLE = "ebundle"
    DUAL = "dual"

    def __str__(self) -> str:
        return self.value


BUNDLE_VARIANTS = (Variant.BUNDLE, Variant.EXTENDED_BUNDLE, Variant.DUAL)
CONFLICT_VARIANTS = (Variant.PRIME, Variant.BUNDLE, Variant.DUAL)


@dataclass(frozen=True)
class Bundle:
    """A bundle ``members |-> target``."""

    members: frozenset[str]
    target: str

    def __str__(self) -> str:
        return "{" + ", ".join(sorted(self.members)) + "} -> " + self.target

    def sort_key(self) -> tuple:
        return (self.target, tuple(sorted(self.members)))


@dataclass
class RawStructure:
    """Unvalidated structure data, in declaration order.

    This is what the parser produces and what :func:`validate` consumes.
    ``events`` holds ``(id, label)`` pairs.
    """

    variant: Variant | str
    events: list[tuple[str, str]] = field(default_factory=list)
    conflicts: list[tuple[str, str]] = field(default_factory=list)
    enablings: list[tuple[str, str]] = field(default_factory=list)
    bundles: list[tuple[tuple[str, ...], str]] = field(default_factory=list)
    disablings: list[tuple[str, str]] = field(default_factory=list)
    priority: list[tuple[str, str]] = field(default_factory=list)


@dataclass(frozen=True)
class Violation:
    code: str
    witness: tuple
    message: str = ""

    def __str__(self) -> str:
        wit = ", ".join(_fmt_witness(w) for w in self.witness)
        text = f"{self.code} ({wit})"
        return f"{text}: {self.message}" if self.message else text


def _fmt_witness(w) -> str:
    if isinstance(w, (tuple, list)):
        return "(" + ", ".join(_fmt_witness(x) for x in w) + ")"
    if isinstance(w, (set, frozenset)):
        return "{" + ", ".join(sorted(map(str, w))) + "}"
    return str(w)


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def add(self, code: str, *witness, message: str = "") -> None:
        self.violations.append(Violation(code, tuple(witness), message))


@dataclass(frozen=True)
class EventStructure:
    """A validated, immutable event structure with its priority relation.

    Build instances with :func:`validate`; the constructor does not check
    invariants. ``order`` is the reflexive-transitive closure of the Prime
    enabling generators and is empty for the bundle variants.
    """

    variant: Variant
    events: tuple[str, ...]
    labels: tuple[tuple[str, str], ...]
    conflict: frozenset[frozenset[str]] = frozenset()
    enabling: frozenset[tuple[str, str]] = frozenset()
    order: frozenset[tuple[str, str]] = frozenset()
    bundles: frozenset[Bundle] = frozenset()
    disabling: frozenset[tuple[str, str]] = frozenset()
    priority: frozenset[tuple[str, str]] = frozenset()

    # -- relation queries ------------------------------------------------

    @cached_property
    def labeling(self) -> dict[str, str]:
        return dict(self.labels)

    def label(self, event: str) -> str:
        return self.labeling[event]

    def in_conflict(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.conflict

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.order

    def disables(self, a: str, b: str) -> bool:
        """True iff ``a ~> b``, i.e. an occurrence of ``b`` rules ``a`` out."""
        return (a, b) in self.disabling

    def predecessors(self, event: str) -> frozenset[str]:
        """Strict ``<=``-predecessors of ``event`` (Prime only; else empty)."""
        return self._predecessors.get(event, frozenset())

    @cached_property
    def _predecessors(self) -> dict[str, frozenset[str]]:
        preds: dict[str, set[str]] = {}
        for a, b in self.order:
            if a != b:
                preds.setdefault(b, set()).add(a)
        return {k: frozenset(v) for k, v in preds.items()}

    def bundles_to(self, event: str) -> tuple[Bundle, ...]:
        return self._bundles_by_target.get(event, ())

    @cached_property
    def _bundles_by_target(self) -> dict[str, tuple[Bundle, ...]]:
        by: dict[str, list[Bundle]] = {}
        for b in sorted(self.bundles, key=Bundle.sort_key):
            by.setdefault(b.target, []).append(b)
        return {k: tuple(v) for k, v in by.items()}

    def in_some_bundle_of(self, cause: str, effect: str) -> bool:
        """``exists X. cause in X and X |-> effect``."""
        return any(cause in b.members for b in self.bundles_to(effect))

    # -- derived structures ------------------------------------------------

    def with_priority(self, pairs: Iterable[tuple[str, str]]) -> EventStructure:
        raw = self.to_raw()
        raw.priority = sorted(pairs)
        return validate(raw)

    def without_priority(self) -> EventStructure:
        return self.with_priority(())

    def to_raw(self) -> RawStructure:
        """Canonical raw form: sorted declarations, Prime order as generators."""
        return RawStructure(
            variant=self.variant,
            events=list(self.labels),
            conflicts=sorted(tuple(sorted(p)) for p in self.conflict),
            enablings=sorted(self.enabling),
            bundles=[
                (tuple(sorted(b.members)), b.target)
                for b in sorted(self.bundles, key=Bundle.sort_key)
            ],
            disablings=sorted(self.disabling),
            priority=sorted(self.priority),
        )

    @cached_property
    def tables(self) -> Tables:
        return Tables.build(self)

    def __str__(self) -> str:
        return f"<{self.variant.value} ES with {len(self.events)} events>"


@dataclass(frozen=True)
class Tables:
    """Bitmask encoding used by the enumeration engine.

    Event ``events[i]`` is bit ``i``; ids are sorted so ascending bit order is
    lexicographic id order.
    """

    events: tuple[str, ...]
    index: Mapping[str, int]
    preds: tuple[int, ...]
    bundles: tuple[tuple[int, ...], ...]
    blockers: tuple[int, ...]
    higher: tuple[int, ...]

    @classmethod
    def build(cls, es: EventStructure) -> Tables:
        index = {e: i for i, e in enumerate(es.events)}
        n = len(es.events)

        def mask(items: Iterable[str]) -> int:
            m = 0
            for x in items:
                m |= 1 << index[x]
            return m

        preds = [0] * n
        for e in es.events:
            preds[index[e]] = mask(es.predecessors(e))
        bundles = tuple(
            tuple(mask(b.members) for b in es.bundles_to(e)) for e in es.events
        )
        # Events whose earlier occurrence makes e impossible: conflict partners,
        # or (ebundle) the events that disable e.
        blockers = [0] * n
        for pair in es.conflict:
            a, b = tuple(pair)
            blockers[index[a]] |= 1 << index[b]
            blockers[index[b]] |= 1 << index[a]
        for a, b in es.disabling:
            blockers[index[a]] |= 1 << index[b]
        higher = [0] * n
        for lo, hi in es.priority:
            higher[index[lo]] |= 1 << index[hi]
        return cls(es.events, index, tuple(preds), bundles, tuple(blockers), tuple(higher))

    def mask(self, events: Iterable[str]) -> int:
        m = 0
        for e in events:
            m |= 1 << self.index[e]
        return m

    def unmask(self, m: int) -> frozenset[str]:
        return frozenset(e for i, e in enumerate(self.events) if m >> i & 1)

    def enabled(self, done: int) -> int:
        """Enabled-set mask after the events in ``done`` have occurred."""
        en = 0
        for i in range(len(self.events)):
            if done >> i & 1 or self.blockers[i] & done or self.preds[i] & ~done:
                continue
            for b in self.bundles[i]:
                if not b & done:
                    break
            else:
                en |= 1 << i
        return en


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def check(raw: RawStructure | EventStructure) -> ValidationReport:
    """Collect every violated structural constraint of ``raw``."""
    if isinstance(raw, EventStructure):
        raw = raw.to_raw()
    report = ValidationReport()
    try:
        variant = Variant(raw.variant)
    except ValueError:
        report.add("UNKNOWN_VARIANT", raw.variant)
        return report

    ids: list[str] = []
    seen: set[str] = set()
    for eid, lab in raw.events:
        if not isinstance(eid, str) or not EVENT_ID.match(eid):
            report.add("INVALID_EVENT_ID", eid)
            continue
        if eid in seen:
            report.add("DUPLICATE_EVENT", eid)
            continue
        if not isinstance(lab, str) or not lab or any(c.isspace() for c in lab):
            report.add("INVALID_LABEL", eid, lab)
        seen.add(eid)
        ids.append(eid)

    def known(*events: str) -> bool:
        missing = [e for e in events if e not in seen]
        for e in missing:
            report.add("UNKNOWN_EVENT", e)
        return not missing

    def variant_only(items, allowed, what):
        if items and variant not in allowed:
            report.add("VARIANT_MISMATCH", what, variant.value)
            return []
        return items

    conflicts = variant_only(raw.conflicts, CONFLICT_VARIANTS, "conflict")
    enablings = variant_only(raw.enablings, (Variant.PRIME,), "enable")
    bundles = variant_only(raw.bundles, BUNDLE_VARIANTS, "bundle")
    disablings = variant_only(raw.disablings, (Variant.EXTENDED_BUNDLE,), "disable")

    conflict: set[frozenset[str]] = set()
    for a, b in conflicts:
        if not known(a, b):
            continue
        if a == b:
            report.add("REFLEXIVE_CONFLICT", (a, a))
        else:
            conflict.add(frozenset((a, b)))

    disabling: set[tuple[str, str]] = set()
    for a, b in disablings:
        if not known(a, b):
            continue
        if a == b:
            report.add("REFLEXIVE_DISABLING", (a, a))
        else:
            disabling.add((a, b))

    enabling = {(a, b) for a, b in enablings if known(a, b)}
    order: set[tuple[str, str]] = set()
    if variant is Variant.PRIME:
        strict = {(a, b) for a, b in enabling if a != b}
        cycle = find_cycle(strict)
        if cycle:
            report.add("ENABLING_CYCLE", tuple(cycle))
        else:
            order = reflexive_transitive_closure(ids, strict)
            _check_heredity(ids, conflict, order, report)

    bundle_set: set[Bundle] = set()
    for members, target in bundles:
        if not known(*members, target):
            continue
        if not members:
            report.add("EMPTY_BUNDLE", target)
            continue
        b = Bundle(frozenset(members), target)
        if target in b.members:
            report.add("SELF_TARGETING_BUNDLE", tuple(sorted(b.members)), target, message=str(b))
            continue
        bundle_set.add(b)
    for b in sorted(bundle_set, key=Bundle.sort_key):
        _check_stability(variant, b, conflict, disabling, report)

    priority = {(a, b) for a, b in raw.priority if known(a, b)}
    cycle = find_cycle(priority)
    if cycle:
        report.add("PRIORITY_CYCLE", tuple(cycle))
    return report


def _check_heredity(ids, conflict, order, report) -> None:
    # e # e' and e' <= e'' must give e # e''.
    succ: dict[str, list[str]] = {}
    for a, b in order:
        if a != b:
            succ.setdefault(a, []).append(b)
    for pair in sorted(conflict, key=sorted):
        for e, e1 in permutations(sorted(pair)):
            for e2 in sorted(succ.get(e1, ())):
                if frozenset((e, e2)) not in conflict:
                    report.add(
                        "CONFLICT_HEREDITY_VIOLATION",
                        (e, e1, e2),
                        message=f"{e} # {e1} and {e1} <= {e2} but not {e} # {e2}",
                    )


def _check_stability(variant, b: Bundle, conflict, disabling, report) -> None:
    members = sorted(b.members)
    if variant is Variant.BUNDLE:
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                if frozenset((x, y)) not in conflict:
                    report.add("STABILITY_VIOLATION", (x, y), message=f"bundle {b}")
    elif variant is Variant.EXTENDED_BUNDLE:
        for x, y in permutations(members, 2):
            if (x, y) not in disabling:
                report.add("STABILITY_VIOLATION", (x, y), message=f"bundle {b}")


def validate(raw: RawStructure | EventStructure) -> EventStructure:
    """Validate raw data and materialise closures.

    Raises :class:`ValidationError` listing every violation. Validating an
    already validated structure returns an equal structure.
    """
    report = check(raw)
    if not report.ok:
        raise ValidationError(report)
    if isinstance(raw, EventStructure):
        raw = raw.to_raw()
    variant = Variant(raw.variant)
    labels = tuple(sorted(dict(raw.events).items()))
    events = tuple(e for e, _ in labels)
    enabling = frozenset((a, b) for a, b in raw.enablings if a != b)
    order = frozenset()
    if variant is Variant.PRIME:
        order = frozenset(reflexive_transitive_closure(events, enabling))
    return EventStructure(
        variant=variant,
        events=events,
        labels=labels,
        conflict=frozenset(frozenset(p) for p in raw.conflicts),
        enabling=enabling,
        order=order,
        bundles=frozenset(Bundle(frozenset(m), t) for m, t in raw.bundles),
        disabling=frozenset(raw.disablings),
        priority=frozenset(raw.priority),
    )


def build(
    variant: Variant | str,
    events: Iterable[str] | Mapping[str, str],
    *,
    conflicts: Iterable[tuple[str, str]] = (),
    enablings: Iterable[tuple[str, str]] = (),
    bundles: Iterable[tuple[Iterable[str], str]] = (),
    disablings: Iterable[tuple[str, str]] = (),
    priority: Iterable[tuple[str, str]] = (),
) -> EventStructure:
    """Convenience constructor: ``build("bundle", "abcd", bundles=[("a", "b")])``."""
    if isinstance(events, Mapping):
        evs = list(events.items())
    else:
        evs = [(e, e) for e in events]
    raw = RawStructure(
        variant=variant,
        events=evs,
        conflicts=list(conflicts),
        enablings=list(enablings),
        bundles=[(tuple(m), t) for m, t in bundles],
        disablings=list(disablings),
        priority=list(priority),
    )
    return validate(raw)


def transitive_reduction_view(es: EventStructure, relation: str = "order") -> set[tuple[str, str]]:
    """Hasse-style view of ``<=`` (``relation="order"``) or of the priority.

    Priority is returned pair-for-pair: after reduction it need not be
    transitive, so taking the reduction of its closure would change it.
    """
    if relation == "priority":
        return set(es.priority)
    if relation != "order":
        raise ValueError(f"unknown relation {relation!r}")
    return transitive_reduction(es.order)
