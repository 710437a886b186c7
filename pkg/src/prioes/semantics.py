"""Enabled sets, trace checking and exhaustive enumeration.

A trace is a duplicate-free event sequence in which every event is enabled
at its prefix. With priority, two further constraints apply. Suppose
``lo ⋖ hi``, both events occur in the sequence, and both are enabled at a
common prefix. Then ``hi`` must occur before ``lo``. Events outside the
sequence never constrain it, so prioritized traces are prefix closed.

Enumeration is a depth-first search over bitmasks, with children visited in
lexicographic event-id order, so results come out lexicographically sorted.
The priority constraint is checked incrementally. When ``y`` is appended at
position ``p``, every event of higher priority that was co-enabled with
``y`` at some prefix ``σ_i`` (``i <= p``) can no longer be appended.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .core import EventStructure
from .errors import NotATrace, SizeLimitExceeded, UnknownEvent

DEFAULT_SIZE_LIMIT = 14

EMPTY_TRACE_TEXT = "ε"


@dataclass(frozen=True)
class Trace:
    """A sequence admitted by a structure (with or without priority)."""

    events: tuple[str, ...]
    prioritized: bool = False
    structure: EventStructure | None = field(default=None, compare=False, repr=False)

    @property
    def bar(self) -> frozenset[str]:
        return frozenset(self.events)

    def prefix(self, i: int) -> tuple[str, ...]:
        return self.events[:i]

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __str__(self) -> str:
        return format_sequence(self.events)


@dataclass(frozen=True)
class TraceCheck:
    """Outcome of :func:`is_trace`; falsy when the sequence is rejected.

    On failure exactly one of ``step`` (0-based index of the first event not
    enabled at its prefix) or ``priority`` (``(i, higher, lower)``: both were
    enabled at prefix ``σ_i`` but ``lower`` came first) is set.
    """

    ok: bool
    step: int | None = None
    priority: tuple[int, str, str] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "trace"
        if self.step is not None:
            return f"event #{self.step + 1} is not enabled at its prefix"
        i, hi, lo = self.priority
        return f"{lo} ⋖ {hi} both enabled after prefix of length {i} but {lo} occurs first"


def format_sequence(events: Sequence[str]) -> str:
    if not events:
        return EMPTY_TRACE_TEXT
    if all(len(e) == 1 for e in events):
        return "".join(events)
    return " ".join(events)


def parse_sequence(es: EventStructure, text: str) -> tuple[str, ...]:
    """Inverse of :func:`format_sequence` for the events of ``es``.

    Accepts comma/space separated ids, or concatenated one-character ids.
    """
    text = text.strip()
    if text in ("", EMPTY_TRACE_TEXT):
        return ()
    if any(c in text for c in ", \t"):
        parts = [p for p in text.replace(",", " ").split() if p]
    elif text in es.labeling:
        parts = [text]
    else:
        parts = list(text)
    _require_known(es, parts)
    return tuple(parts)


def _require_known(es: EventStructure, events: Iterable[str]) -> None:
    for e in events:
        if e not in es.labeling:
            raise UnknownEvent(f"unknown event {e!r}", e)


def _check_size(es: EventStructure, limit: int) -> None:
    if len(es.events) > limit:
        raise SizeLimitExceeded(
            f"{len(es.events)} events exceed the exhaustive-search limit {limit}",
            len(es.events),
        )


# ---------------------------------------------------------------------------
# definitional checks
# ---------------------------------------------------------------------------


def enabled_after(es: EventStructure, done: Iterable[str]) -> frozenset[str]:
    """Enabled set for an already-occurred event set (no trace check)."""
    t = es.tables
    return t.unmask(t.enabled(t.mask(done)))


def is_trace(es: EventStructure, sigma: Sequence[str], use_priority: bool = False) -> TraceCheck:
    """Check ``sigma`` against the trace definition, globally.

    This deliberately evaluates the quantified formula over all prefixes
    instead of sharing code with the incremental enumerator.
    """
    sigma = tuple(sigma)
    _require_known(es, sigma)
    t = es.tables
    done = 0
    en_at: list[int] = []
    for k, e in enumerate(sigma):
        en = t.enabled(done)
        en_at.append(en)
        bit = 1 << t.index[e]
        if not en & bit:
            return TraceCheck(False, step=k)
        done |= bit
    if not use_priority:
        return TraceCheck(True)
    pos = {e: k for k, e in enumerate(sigma)}
    for i, en in enumerate(en_at):
        for lo, hi in sorted(es.priority):
            if lo in pos and hi in pos:
                blo, bhi = 1 << t.index[lo], 1 << t.index[hi]
                if en & blo and en & bhi and not pos[hi] < pos[lo]:
                    return TraceCheck(False, priority=(i, hi, lo))
    return TraceCheck(True)


def enabled(es: EventStructure, sigma: Sequence[str]) -> frozenset[str]:
    """``en(σ)``: events enabled after trace ``sigma`` (priority ignored)."""
    res = is_trace(es, sigma)
    if not res:
        raise NotATrace(f"{format_sequence(sigma)} is not a trace: {res.describe()}", res)
    return enabled_after(es, sigma)


# ---------------------------------------------------------------------------
# enumeration engine
# ---------------------------------------------------------------------------


def _walk(
    es: EventStructure,
    use_priority: bool,
    max_len: int | None,
    allowed: int | None = None,
):
    """Yield ``(sequence_as_indices, done_mask)`` for every trace, in DFS order."""
    t = es.tables
    n = len(t.events)
    if max_len is None:
        max_len = n
    if allowed is None:
        allowed = (1 << n) - 1
    higher = t.higher if use_priority else (0,) * n
    cache: dict[int, int] = {}
    seq: list[int] = []
    ens: list[int] = []

    def rec(done: int, blocked: int):
        yield seq, done
        if len(seq) >= max_len:
            return
        en = cache.get(done)
        if en is None:
            en = cache[done] = t.enabled(done)
        ens.append(en)
        cand = en & allowed & ~blocked
        i = 0
        while cand >> i:
            if cand >> i & 1:
                nb = blocked
                hi = higher[i]
                if hi:
                    bit = 1 << i
                    for e in ens:
                        if e & bit:
                            nb |= hi & e
                seq.append(i)
                yield from rec(done | 1 << i, nb)
                seq.pop()
            i += 1
        ens.pop()

    yield from rec(0, 0)


def trace_tuples(
    es: EventStructure,
    use_priority: bool = False,
    max_len: int | None = None,
    *,
    over: Iterable[str] | None = None,
    limit: int = DEFAULT_SIZE_LIMIT,
) -> list[tuple[str, ...]]:
    """Traces as plain id tuples, lexicographically sorted.

    With ``over`` only traces whose event set equals ``over`` are returned.
    """
    _check_size(es, limit)
    t = es.tables
    ids = t.events
    if over is None:
        return [tuple(ids[i] for i in s) for s, _ in _walk(es, use_priority, max_len)]
    over = set(over)
    _require_known(es, over)
    target = t.mask(over)
    return [
        tuple(ids[i] for i in s)
        for s, done in _walk(es, use_priority, max_len, allowed=target)
        if done == target
    ]


def enumerate_traces(
    es: EventStructure,
    use_priority: bool = False,
    max_len: int | None = None,
    *,
    limit: int = DEFAULT_SIZE_LIMIT,
) -> list[Trace]:
    """All traces of length at most ``max_len`` (default ``|E|``), sorted."""
    return [
        Trace(s, use_priority, es)
        for s in trace_tuples(es, use_priority, max_len, limit=limit)
    ]


def configuration_masks(
    es: EventStructure, use_priority: bool = False, *, limit: int = DEFAULT_SIZE_LIMIT
) -> set[int]:
    _check_size(es, limit)
    if not use_priority:
        # Without priority the future only depends on the occurred set.
        t = es.tables
        seen = {0}
        frontier = [0]
        while frontier:
            done = frontier.pop()
            en = t.enabled(done)
            i = 0
            while en >> i:
                if en >> i & 1:
                    nxt = done | 1 << i
                    if nxt not in seen:
                        seen.add(nxt)
                        frontier.append(nxt)
                i += 1
        return seen
    return {done for _, done in _walk(es, True, None)}


def _config_key(c: frozenset[str]) -> tuple:
    return tuple(sorted(c))


def enumerate_configurations(
    es: EventStructure, use_priority: bool = False, *, limit: int = DEFAULT_SIZE_LIMIT
) -> list[frozenset[str]]:
    """``{σ̄ | σ a trace}``, sorted lexicographically by sorted event ids."""
    t = es.tables
    return sorted((t.unmask(m) for m in configuration_masks(es, use_priority, limit=limit)), key=_config_key)


def is_configuration(
    es: EventStructure, c: Iterable[str], use_priority: bool = False
) -> bool:
    c = set(c)
    _require_known(es, c)
    t = es.tables
    target = t.mask(c)
    if use_priority:
        return any(done == target for _, done in _walk(es, True, None, allowed=target))
    seen = {0}
    frontier = [0]
    while frontier:
        done = frontier.pop()
        if done == target:
            return True
        en = t.enabled(done) & target
        i = 0
        while en >> i:
            if en >> i & 1 and (done | 1 << i) not in seen:
                seen.add(done | 1 << i)
                frontier.append(done | 1 << i)
            i += 1
    return False


def traces_over_configuration(
    es: EventStructure,
    use_priority: bool,
    c: Iterable[str],
    *,
    limit: int = DEFAULT_SIZE_LIMIT,
) -> list[Trace]:
    """``⌊T⌋_C``: all traces whose event set is exactly ``c`` (maybe none)."""
    return [
        Trace(s, use_priority, es)
        for s in trace_tuples(es, use_priority, over=c, limit=limit)
    ]
