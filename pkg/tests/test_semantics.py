from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from prioes.core import Variant, build
from prioes.errors import NotATrace, SizeLimitExceeded, UnknownEvent
from prioes.generate import random_structure
from prioes.semantics import (
    enabled,
    enumerate_configurations,
    enumerate_traces,
    format_sequence,
    is_configuration,
    is_trace,
    parse_sequence,
    trace_tuples,
    traces_over_configuration,
)

FIG2A_TRACES = ["ε", "a", "ab", "abd", "ac", "acd", "c", "ca", "cad", "cd", "cda"]


def texts(traces):
    return [str(t) for t in traces]


def test_fig2a_traces_are_exactly_the_listed_ones(fig):
    assert texts(enumerate_traces(fig("fig2a"))) == FIG2A_TRACES


def test_fig2a_bd_is_not_a_trace(fig):
    res = is_trace(fig("fig2a"), "bd")
    assert not res and res.step == 0


def test_fig2a_abcd_is_not_a_trace(fig):
    assert not is_trace(fig("fig2a"), "abcd")


def test_ebad_trace_without_priority_only(fig):
    assert is_trace(fig("fig1a"), "ebad")
    assert is_trace(fig("fig1b"), "ebad", use_priority=False)
    res = is_trace(fig("fig1b"), "ebad", use_priority=True)
    assert not res
    assert res.priority == (1, "a", "b")
    assert "b ⋖ a" in res.describe()


def test_cad_is_not_a_prioritized_trace(fig):
    es = fig("fig2b")
    assert is_trace(es, "cad")
    res = is_trace(es, "cad", use_priority=True)
    assert not res and res.priority == (1, "d", "a")


def test_enabled_sets(fig):
    es = fig("fig2a")
    assert enabled(es, "") == {"a", "c"}
    assert enabled(es, "a") == {"b", "c"}
    assert enabled(es, "ab") == {"d"}
    with pytest.raises(NotATrace):
        enabled(es, "bd")


def test_fig1a_configuration_and_its_traces(fig):
    es = fig("fig1a")
    assert frozenset("eac") in enumerate_configurations(es)
    assert texts(traces_over_configuration(es, False, "eac")) == ["cea", "eac", "eca"]


def test_fig3a_excludes_befh(fig):
    es = fig("fig3a")
    assert frozenset("befh") not in enumerate_configurations(es)
    assert not is_configuration(es, "befh")


def test_fig2b_traces_over_abd(fig):
    es = fig("fig2b")
    assert texts(traces_over_configuration(es, True, "abd")) == ["abd"]


def test_dual_structure_has_the_extra_traces(fig):
    bes, des = fig("fig2a"), fig("fig2a-dual")
    extra = set(trace_tuples(des)) - set(trace_tuples(bes))
    long = {format_sequence(s) for s in extra if len(s) == 4}
    assert long == {"abcd", "abdc", "acbd", "acdb", "cabd", "cadb", "cdab"}
    assert {format_sequence(s) for s in extra if len(s) < 4} == {"abc", "acb", "cab"}


def test_empty_structure_has_only_the_empty_trace(fig):
    assert texts(enumerate_traces(fig("empty"), True)) == ["ε"]
    assert enumerate_configurations(fig("empty")) == [frozenset()]


def test_max_len(fig):
    assert texts(enumerate_traces(fig("fig2a"), max_len=1)) == ["ε", "a", "c"]


def test_size_limit():
    es = build("prime", [f"e{i}" for i in range(15)])
    with pytest.raises(SizeLimitExceeded):
        trace_tuples(es)


def test_sequence_text_round_trip(fig):
    es = fig("chain")
    assert format_sequence(("e1", "e2")) == "e1 e2"
    assert parse_sequence(es, "e1 e2") == ("e1", "e2")
    assert parse_sequence(es, "e1,e2") == ("e1", "e2")
    assert parse_sequence(es, "e1") == ("e1",)
    assert parse_sequence(fig("fig2a"), "abd") == ("a", "b", "d")
    assert parse_sequence(es, "ε") == ()
    with pytest.raises(UnknownEvent):
        parse_sequence(es, "e9")


def test_unknown_event_in_trace(fig):
    with pytest.raises(UnknownEvent):
        is_trace(fig("fig2a"), "az")


def test_priority_only_counts_common_enabling():
    # hi is enabled only after x, so lo may run first
    es = build("bundle", ["lo", "hi", "x"], bundles=[(("x",), "hi")], priority=[("lo", "hi")])
    assert is_trace(es, ["lo", "x", "hi"], True)
    assert not is_trace(es, ["x", "lo", "hi"], True)
    assert is_trace(es, ["x", "hi", "lo"], True)


def test_events_outside_the_trace_do_not_constrain_it():
    es = build("prime", ["lo", "hi"], priority=[("lo", "hi")])
    assert is_trace(es, ["lo"], True)
    assert not is_trace(es, ["lo", "hi"], True)


randoms = st.randoms(use_true_random=False)


@settings(max_examples=80, deadline=None)
@given(randoms, st.sampled_from(list(Variant)), st.booleans())
def test_enumeration_matches_brute_force(rng, variant, use_priority):
    es = random_structure(variant, rng, max_events=6)
    assert set(trace_tuples(es, use_priority)) == oracles.traces(es, use_priority)


@settings(max_examples=80, deadline=None)
@given(randoms, st.sampled_from(list(Variant)), st.booleans())
def test_is_trace_matches_oracle(rng, variant, use_priority):
    es = random_structure(variant, rng, max_events=5)
    for s in oracles.all_sequences(es.events):
        assert bool(is_trace(es, s, use_priority)) == oracles.is_trace(es, s, use_priority)


@settings(max_examples=60, deadline=None)
@given(randoms, st.sampled_from(list(Variant)), st.booleans())
def test_configurations_match_brute_force(rng, variant, use_priority):
    es = random_structure(variant, rng, max_events=6)
    got = set(enumerate_configurations(es, use_priority))
    assert got == oracles.configurations(es, use_priority)
    for c in got:
        assert is_configuration(es, c, use_priority)


@settings(max_examples=60, deadline=None)
@given(randoms, st.sampled_from(list(Variant)))
def test_traces_are_sorted_and_prefix_closed(rng, variant):
    es = random_structure(variant, rng)
    for use_priority in (False, True):
        seqs = trace_tuples(es, use_priority)
        assert seqs == sorted(seqs)
        have = set(seqs)
        assert all(s[:-1] in have for s in seqs if s)


@settings(max_examples=60, deadline=None)
@given(randoms, st.sampled_from(list(Variant)))
def test_traces_over_each_configuration(rng, variant):
    es = random_structure(variant, rng, max_events=6)
    for c in enumerate_configurations(es, True):
        got = set(trace_tuples(es, True, over=c))
        assert got == oracles.traces_over(es, c, True)
