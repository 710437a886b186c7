"""Labelled partial orders over configurations and Dual-ES causes.

For bundle structures the precedence ``e ≺_C e'`` holds when ``e`` lies in a
bundle pointing at ``e'``; extended bundle structures add ``e ~> e'``. The
lposet of a configuration ``C`` is ``⟨C, ⪯_C, l|C⟩`` with ``⪯_C`` the
reflexive-transitive closure of ``≺_C``. Prime structures are supported too,
using ``<=`` restricted to ``C``.

Dual structures have no single lposet per configuration. Instead, an event's
cause is chosen from its prefix under one of four interpretations; see
:func:`des_causes`.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product

from .core import EventStructure, Variant
from .errors import InvalidCauseChoice, NotAConfiguration, NotAPartialOrder, NotATrace, VariantUnsupported
from .relations import reflexive_transitive_closure, transitive_reduction
from .semantics import DEFAULT_SIZE_LIMIT, configuration_masks, format_sequence, is_configuration, is_trace


@dataclass(frozen=True)
class Lposet:
    carrier: frozenset[str]
    order: frozenset[tuple[str, str]]
    labels: tuple[tuple[str, str], ...] = ()

    @classmethod
    def from_relation(
        cls,
        carrier: Iterable[str],
        pairs: Iterable[tuple[str, str]],
        labeling: Mapping[str, str] | None = None,
    ) -> Lposet:
        """Close ``pairs`` reflexively and transitively; reject cycles."""
        carrier = frozenset(carrier)
        pairs = [(a, b) for a, b in pairs if a in carrier and b in carrier]
        order = reflexive_transitive_closure(carrier, pairs)
        for a, b in order:
            if a != b and (b, a) in order:
                raise NotAPartialOrder(f"precedence is cyclic through {a} and {b}", (a, b))
        labeling = labeling or {}
        labels = tuple(sorted((e, labeling.get(e, e)) for e in carrier))
        return cls(carrier, frozenset(order), labels)

    @classmethod
    def empty(cls) -> Lposet:
        return cls(frozenset(), frozenset(), ())

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.order

    def related(self, a: str, b: str) -> bool:
        return (a, b) in self.order or (b, a) in self.order

    @property
    def labeling(self) -> dict[str, str]:
        return dict(self.labels)

    def covering(self) -> set[tuple[str, str]]:
        """Hasse pairs, as drawn in lposet boxes."""
        return transitive_reduction(self.order)

    def restrict(self, subset: Iterable[str]) -> Lposet:
        subset = frozenset(subset)
        return Lposet(
            subset,
            frozenset((a, b) for a, b in self.order if a in subset and b in subset),
            tuple((e, l) for e, l in self.labels if e in subset),
        )

    def sort_key(self) -> tuple:
        return (len(self.carrier), tuple(sorted(self.carrier)), tuple(sorted(self.order)))

    def __str__(self) -> str:
        if not self.carrier:
            return "η"
        cover = sorted(self.covering())
        body = ", ".join(sorted(self.carrier))
        if cover:
            body += " | " + ", ".join(f"{a}<{b}" for a, b in cover)
        return "⟨" + body + "⟩"


def is_prefix(p: Lposet, q: Lposet) -> bool:
    """``p`` is a prefix of ``q``: ``A ⊆ A'``, ``≤ = ≤' ∩ (A' × A)``, ``f = f'|A``."""
    if not p.carrier <= q.carrier:
        return False
    restricted = {(a, b) for a, b in q.order if b in p.carrier}
    if set(p.order) != restricted:
        return False
    ql = q.labeling
    return p.labeling == {e: ql[e] for e in p.carrier}


def precedence_pairs(es: EventStructure, c: Iterable[str]) -> set[tuple[str, str]]:
    """The generating relation ``≺_C`` on ``C``."""
    c = set(c)
    pairs: set[tuple[str, str]] = set()
    if es.variant is Variant.PRIME:
        return {(a, b) for a, b in es.order if a in c and b in c and a != b}
    for b in es.bundles:
        if b.target in c:
            pairs.update((x, b.target) for x in b.members if x in c)
    if es.variant is Variant.EXTENDED_BUNDLE:
        pairs.update((x, y) for x, y in es.disabling if x in c and y in c)
    return pairs


def precedence(es: EventStructure, c: Iterable[str]) -> Lposet:
    """The lposet ``⟨C, ⪯_C, l|C⟩`` of configuration ``c``."""
    if es.variant is Variant.DUAL:
        raise VariantUnsupported(
            "dual structures have no single lposet per configuration; use des_poset",
            es.variant,
        )
    c = frozenset(c)
    if not is_configuration(es, c):
        raise NotAConfiguration(f"{{{', '.join(sorted(c))}}} is not a configuration", c)
    return Lposet.from_relation(c, precedence_pairs(es, c), es.labeling)


@dataclass(frozen=True)
class LposetFamily:
    """Lposets sorted by size, with Hasse edges of the prefix order.

    ``prefix_edges`` holds index pairs into ``members``.
    """

    members: tuple[Lposet, ...]
    prefix_edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.members)

    def edges(self) -> list[tuple[Lposet, Lposet]]:
        return [(self.members[i], self.members[j]) for i, j in self.prefix_edges]

    def is_downward_closed(self) -> bool:
        have = set(self.members)
        for q in self.members:
            for p in lposet_prefixes(q):
                if p not in have:
                    return False
        return True


def lposet_prefixes(q: Lposet) -> list[Lposet]:
    """Every prefix of ``q``: its restrictions to down-closed subsets."""
    events = sorted(q.carrier)
    below = {e: {a for a, b in q.order if b == e} for e in events}
    out = []
    for r in range(len(events) + 1):
        for subset in combinations(events, r):
            s = set(subset)
            if all(below[e] <= s for e in s):
                out.append(q.restrict(s))
    return out


def lposet_family(es: EventStructure, *, limit: int = DEFAULT_SIZE_LIMIT) -> LposetFamily:
    """One lposet per configuration (priority ignored), with prefix edges."""
    if es.variant is Variant.DUAL:
        raise VariantUnsupported("dual structures have no lposet family", es.variant)
    t = es.tables
    members = sorted(
        (
            Lposet.from_relation(c, precedence_pairs(es, c), es.labeling)
            for c in map(t.unmask, configuration_masks(es, limit=limit))
        ),
        key=Lposet.sort_key,
    )
    index = {m: i for i, m in enumerate(members)}
    strict = {
        (index[p], index[q])
        for q in members
        for p in members
        if p != q and len(p.carrier) < len(q.carrier) and is_prefix(p, q)
    }
    edges = transitive_reduction(strict) if strict else set()
    return LposetFamily(tuple(members), tuple(sorted(edges)))


def linearizations(p: Lposet) -> list[tuple[str, ...]]:
    """All total orders of the carrier extending the order, lexicographic."""
    events = sorted(p.carrier)
    below = {e: {a for a, b in p.order if b == e and a != e} for e in events}
    out: list[tuple[str, ...]] = []
    seq: list[str] = []
    placed: set[str] = set()

    def rec():
        if len(seq) == len(events):
            out.append(tuple(seq))
            return
        for e in events:
            if e not in placed and below[e] <= placed:
                placed.add(e)
                seq.append(e)
                rec()
                seq.pop()
                placed.discard(e)

    rec()
    return out


def priority_respecting_linearizations(
    p: Lposet, priority: Iterable[tuple[str, str]]
) -> list[tuple[str, ...]]:
    """Linearizations of ``p`` after applying configuration-level ignorance.

    Priority pairs between ``⪯``-related events are ignored, as for bundle
    structures. Every remaining pair ``lo ⋖ hi`` inside the carrier is
    imposed as "``hi`` before ``lo``". The result is empty if that
    creates a cycle.
    """
    extra = [
        (hi, lo)
        for lo, hi in priority
        if lo in p.carrier and hi in p.carrier and not p.related(lo, hi)
    ]
    try:
        q = Lposet.from_relation(p.carrier, set(p.order) | set(extra), p.labeling)
    except NotAPartialOrder:
        return []
    return linearizations(q)


# ---------------------------------------------------------------------------
# Dual ES causality
# ---------------------------------------------------------------------------


class Interpretation(str, Enum):
    LIBERAL = "liberal"
    BUNDLE_SATISFACTION = "bsat"
    MINIMAL = "minimal"
    EARLY = "early"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CauseSet:
    target: str
    prefix: tuple[str, ...]
    cause: frozenset[str]
    interpretation: Interpretation

    def __str__(self) -> str:
        return "{" + ", ".join(sorted(self.cause)) + "}"


def _cause_key(cause: frozenset[str]) -> tuple:
    return tuple(sorted(cause))


def _require_dual(es: EventStructure) -> None:
    if es.variant is not Variant.DUAL:
        raise VariantUnsupported("cause interpretations are defined for dual structures only", es.variant)


def des_causes(
    es: EventStructure,
    prefix: Sequence[str],
    target: str,
    interpretation: Interpretation | str,
) -> list[CauseSet]:
    """Causes of ``target`` after ``prefix`` under an interpretation.

    * liberal: subsets of the prefix meeting every bundle of ``target``;
    * bsat: sets obtainable by letting each bundle pick exactly one
      prefix event of its own set (the set of picks);
    * minimal: liberal causes with no liberal proper subset;
    * early: the bsat cause whose latest event is earliest, comparing
      position sets as binary numbers (bit ``i`` = position ``i``).
    """
    _require_dual(es)
    interp = Interpretation(interpretation)
    prefix = tuple(prefix)
    if not is_trace(es, prefix + (target,)):
        raise NotATrace(f"{format_sequence(prefix + (target,))} is not a trace", prefix + (target,))
    pos = {e: i for i, e in enumerate(prefix)}
    bundles = [b.members & set(prefix) for b in es.bundles_to(target)]

    def liberal(s: frozenset[str]) -> bool:
        return all(b & s for b in bundles)

    if interp is Interpretation.LIBERAL:
        found = {
            frozenset(s)
            for r in range(len(prefix) + 1)
            for s in combinations(prefix, r)
            if liberal(frozenset(s))
        }
    elif interp is Interpretation.MINIMAL:
        lib = [
            frozenset(s)
            for r in range(len(prefix) + 1)
            for s in combinations(prefix, r)
            if liberal(frozenset(s))
        ]
        found = {s for s in lib if not any(t < s for t in lib)}
    else:
        found = {frozenset(pick) for pick in product(*(sorted(b) for b in bundles))}
        if interp is Interpretation.EARLY:
            found = {min(found, key=lambda s: sum(1 << pos[e] for e in s))}
    return [CauseSet(target, prefix, s, interp) for s in sorted(found, key=_cause_key)]


def des_poset(
    es: EventStructure,
    trace: Sequence[str],
    interpretation: Interpretation | str,
    cause_choice: Mapping[str, Iterable[str]],
) -> Lposet:
    """Order a Dual-ES trace by chosen causes: ``x ⪯ e`` iff ``x`` is in ``e``'s cause.

    Events without bundles may be omitted from ``cause_choice`` (their only
    cause is empty). Every chosen cause is checked against
    :func:`des_causes` at the event's own prefix.
    """
    _require_dual(es)
    trace = tuple(trace)
    if not is_trace(es, trace):
        raise NotATrace(f"{format_sequence(trace)} is not a trace", trace)
    unknown = set(cause_choice) - set(trace)
    if unknown:
        raise InvalidCauseChoice(f"causes given for events outside the trace: {sorted(unknown)}", unknown)
    pairs = []
    for k, e in enumerate(trace):
        valid = {c.cause for c in des_causes(es, trace[:k], e, interpretation)}
        chosen = frozenset(cause_choice.get(e, ()))
        if chosen not in valid:
            raise InvalidCauseChoice(
                f"{{{', '.join(sorted(chosen))}}} is not a {Interpretation(interpretation)} cause of {e}",
                (e, chosen),
            )
        pairs.extend((x, e) for x in chosen)
    return Lposet.from_relation(trace, pairs, es.labeling)


def des_posets(
    es: EventStructure, trace: Sequence[str], interpretation: Interpretation | str
) -> list[Lposet]:
    """Every poset obtainable from ``trace`` by some valid cause choice."""
    trace = tuple(trace)
    options = [
        [c.cause for c in des_causes(es, trace[:k], e, interpretation)]
        for k, e in enumerate(trace)
    ]
    seen = set()
    for combo in product(*options):
        seen.add(des_poset(es, trace, interpretation, dict(zip(trace, combo))))
    return sorted(seen, key=Lposet.sort_key)
