"""Known counterexamples and negative results, pinned as regressions."""

from __future__ import annotations

from conftest import load
from prioes.posets import des_posets, priority_respecting_linearizations
from prioes.reduction import check_minimality, ignore_at_configuration, oracle_trace_equal, reduce_priority
from prioes.semantics import is_trace, trace_tuples


def test_ppes_reduction_is_not_always_minimal():
    # z <= f and z ⋖ e ⋖ f: e always precedes z, so e and f are never co-enabled
    es = load("ppes-minimality-counterexample")
    kept = reduce_priority(es).kept
    assert kept == es.priority
    verdict = check_minimality(es, kept)
    assert not verdict
    assert verdict.removable == {("e", "f")}


def test_pbes_ignorance_is_not_always_minimal():
    es = load("pbes-minimality-counterexample")
    report = ignore_at_configuration(es, "abe")
    assert report.retained == es.priority
    assert report.beyond_theorem == {("e", "a")}
    assert not check_minimality(es, report.retained, "abe")


def test_fig4b_bundle_overlap_is_not_redundant():
    es = load("fig4b")
    assert ("c", "d") in reduce_priority(es).kept
    eq = oracle_trace_equal(es, es.without_priority())
    assert not eq and eq.only_in == 2


def _poset_with_cause(es, interp, cause):
    for p in des_posets(es, "abcd", interp):
        if {a for a, b in p.order if b == "d" and a != "d"} == set(cause):
            return p
    raise AssertionError(f"no {interp} poset with cause {cause}")


def test_dual_posets_admit_abcd_or_exclude_acbd():
    es = load("fig4b")
    assert not is_trace(es, "abcd", use_priority=True)
    assert is_trace(es, "acbd", use_priority=True)
    for interp, cause in [("liberal", "abc"), ("bsat", "bc"), ("minimal", "ac")]:
        p = _poset_with_cause(es, interp, cause)
        assert ("a", "b", "c", "d") in priority_respecting_linearizations(p, es.priority)
    early = _poset_with_cause(es, "early", "b")
    assert ("a", "c", "b", "d") not in priority_respecting_linearizations(early, es.priority)


def test_prioritized_trace_sets_of_the_dual_examples():
    only_a = set(trace_tuples(load("fig4a"))) - set(trace_tuples(load("fig4b"), True))
    assert ("a", "b", "c", "d") in only_a
