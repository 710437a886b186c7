"""Self-checks that re-derive library results by independent means.

:func:`run_checks` runs every check that applies to a structure's variant
and returns one :class:`CheckResult` per check. A failed check carries a
concrete witness. The checks cover the following:

* the enumerator against the trace definition, applied sequence by
  sequence;
* prefix closure, the subset law ``T(es, ⋖) ⊆ T(es)`` and monotonicity under
  removal of single pairs;
* configurations against the event sets of traces;
* soundness of ``reduce_priority``, and minimality where it is claimed;
* soundness of configuration-level ignorance, and minimality for bundle
  structures;
* lposet linearizations against traces over each configuration, and
  downward closure of the family;
* for dual structures, the inclusions between cause interpretations.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import EventStructure, Variant
from .errors import TheoremViolation
from .posets import Interpretation, des_causes, linearizations, lposet_family, precedence
from .reduction import check_minimality, ignore_at_configuration, oracle_trace_equal, reduce_priority
from .semantics import enumerate_configurations, format_sequence, is_trace, trace_tuples


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: Status
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.status} {self.name}" + (f": {self.detail}" if self.detail else "")


def _seq(s) -> str:
    return format_sequence(s)


def _pair(p) -> str:
    return f"{p[0]} ⋖ {p[1]}"


def _result(name: str, witness: str | None, ok_detail: str = "") -> CheckResult:
    if witness is None:
        return CheckResult(name, Status.PASS, ok_detail)
    return CheckResult(name, Status.FAIL, witness)


def _definitional_traces(es: EventStructure, use_priority: bool) -> set[tuple[str, ...]]:
    """Grow sequences one event at a time, keeping those :func:`is_trace` accepts.

    Pruning rejected sequences is exact because every prefix of a trace is
    a trace, as the definition only constrains positions up to the end.
    """
    found = {()}
    layer = [()]
    while layer:
        nxt = []
        for s in layer:
            for e in es.events:
                if e not in s and is_trace(es, s + (e,), use_priority):
                    nxt.append(s + (e,))
        found.update(nxt)
        layer = nxt
    return found


def check_engine(es: EventStructure) -> CheckResult:
    name = "engine-matches-definition"
    for use_priority in (False, True):
        got = set(trace_tuples(es, use_priority))
        want = _definitional_traces(es, use_priority)
        if got != want:
            s = min(got ^ want, key=lambda x: (len(x), x))
            side = "enumerated only" if s in got else "missed"
            return _result(name, f"{_seq(s)} {side} (priority={use_priority})")
    return _result(name, None)


def check_prefix_closure(es: EventStructure) -> CheckResult:
    for use_priority in (False, True):
        traces = set(trace_tuples(es, use_priority))
        for s in sorted(traces):
            if s and s[:-1] not in traces:
                return _result("prefix-closure", f"{_seq(s)} without its prefix")
    return _result("prefix-closure", None)


def check_subset_and_monotonicity(es: EventStructure) -> CheckResult:
    name = "priority-only-removes-traces"
    full = set(trace_tuples(es, True))
    plain = set(trace_tuples(es))
    if not full <= plain:
        return _result(name, f"{_seq(min(full - plain))} is prioritized but not a plain trace")
    for p in sorted(es.priority):
        weaker = set(trace_tuples(es.with_priority(es.priority - {p}), True))
        if not full <= weaker:
            return _result(name, f"removing {_pair(p)} loses {_seq(min(full - weaker))}")
    return _result(name, None)


def check_configurations(es: EventStructure) -> CheckResult:
    for use_priority in (False, True):
        bars = {frozenset(s) for s in trace_tuples(es, use_priority)}
        if set(enumerate_configurations(es, use_priority)) != bars:
            return _result("configurations", f"mismatch (priority={use_priority})")
    return _result("configurations", None)


def check_reduction(es: EventStructure) -> list[CheckResult]:
    report = reduce_priority(es)
    kept = es.with_priority(report.kept)
    eq = oracle_trace_equal(es, kept)
    out = [
        _result(
            "reduction-sound",
            None if eq else f"{_seq(eq.witness)} only in structure {eq.only_in}",
            f"{len(report.dropped)} dropped, {len(report.kept)} kept",
        )
    ]
    if es.variant is Variant.PRIME:
        verdict = check_minimality(es, report.kept)
        out.append(
            _result(
                "reduction-minimal",
                None if verdict else f"removing {_pair(min(verdict.removable))} keeps the traces",
            )
        )
    return out


def check_ignorance(es: EventStructure) -> list[CheckResult]:
    if es.variant not in (Variant.BUNDLE, Variant.EXTENDED_BUNDLE):
        return []
    sound_fail = None
    minimal_fail = None
    configs = enumerate_configurations(es)
    for c in configs:
        try:
            report = ignore_at_configuration(es, c)
        except TheoremViolation as exc:
            sound_fail = sound_fail or f"{{{', '.join(sorted(c))}}}: {_seq(exc.witness)}"
            continue
        if es.variant is Variant.BUNDLE and report.beyond_theorem and minimal_fail is None:
            p = min(report.beyond_theorem)
            minimal_fail = f"{{{', '.join(sorted(c))}}}: {_pair(p)} is also removable"
    out = [_result("ignorance-sound", sound_fail, f"{len(configs)} configurations")]
    if es.variant is Variant.BUNDLE:
        out.append(_result("ignorance-minimal", minimal_fail))
    return out


def check_lposets(es: EventStructure) -> list[CheckResult]:
    if es.variant is Variant.DUAL:
        return []
    witness = None
    for c in enumerate_configurations(es):
        lin = set(linearizations(precedence(es, c)))
        over = set(trace_tuples(es, over=c))
        if lin != over:
            s = min(lin ^ over, key=lambda x: (len(x), x))
            witness = f"{_seq(s)} over {{{', '.join(sorted(c))}}}"
            break
    family = lposet_family(es)
    closed = family.is_downward_closed()
    return [
        _result("lposet-linearizations", witness),
        _result("family-downward-closed", None if closed else "a prefix is missing"),
    ]


def check_causes(es: EventStructure) -> list[CheckResult]:
    if es.variant is not Variant.DUAL:
        return []
    witness = None
    for s in trace_tuples(es):
        for k, e in enumerate(s):
            got = {i: {c.cause for c in des_causes(es, s[:k], e, i)} for i in Interpretation}
            lib = got[Interpretation.LIBERAL]
            bsat = got[Interpretation.BUNDLE_SATISFACTION]
            if not (
                got[Interpretation.EARLY] <= bsat
                and bsat <= lib
                and got[Interpretation.MINIMAL] <= bsat
                and len(got[Interpretation.EARLY]) == 1
            ):
                witness = f"cause of {e} after {_seq(s[:k])}"
                break
        if witness:
            break
    return [_result("cause-inclusions", witness)]


def run_checks(es: EventStructure) -> list[CheckResult]:
    results = [
        check_engine(es),
        check_prefix_closure(es),
        check_subset_and_monotonicity(es),
        check_configurations(es),
    ]
    results += check_reduction(es)
    results += check_ignorance(es)
    results += check_lposets(es)
    results += check_causes(es)
    return results
