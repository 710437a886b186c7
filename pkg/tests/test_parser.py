from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIGURES
from prioes.cli.parser import ParseError, SourceSpan, parse, render
from prioes.core import Variant, check, validate
from prioes.generate import random_structure

FIG1B = """\
es prime
event a
event b
event c
event d
event e
enable e -> a
enable a -> d
enable b -> d
conflict b c
conflict c d
priority b < a
priority d < c
priority d < e
"""


def test_fig1b_document():
    raw = parse(FIG1B).raw
    assert raw.variant is Variant.PRIME
    assert set(raw.enablings) == {("e", "a"), ("a", "d"), ("b", "d")}
    assert {frozenset(p) for p in raw.conflicts} == {frozenset("bc"), frozenset("cd")}
    assert set(raw.priority) == {("b", "a"), ("d", "c"), ("d", "e")}


def test_empty_body_is_a_valid_empty_structure():
    es = validate(parse("es prime\n").raw)
    assert es.events == ()


def test_self_targeting_bundle_is_left_to_validation():
    raw = parse("es bundle\nevent a\nevent b\nbundle {a,b} -> a\n").raw
    assert check(raw).codes() == {"SELF_TARGETING_BUNDLE"}


def test_labels_comments_and_spacing():
    doc = parse(
        "# header\nes dual   # trailing\n  event x1 : send\nevent y\nevent z\nbundle { x1 ,y } -> z\n"
    )
    assert doc.raw.events == [("x1", "send"), ("y", "y"), ("z", "z")]
    assert doc.raw.bundles == [(("x1", "y"), "z")]
    assert doc.declarations[0].span == SourceSpan(3, 3, 18)


def test_conflicts_are_unordered():
    assert parse("es prime\nevent a\nevent b\nconflict b a\n").raw.conflicts == [("a", "b")]


def test_direction_of_disable_and_priority():
    raw = parse("es ebundle\nevent a\nevent b\ndisable a ~> b\npriority a < b\n").raw
    es = validate(raw)
    assert es.disables("a", "b")  # b disables a
    assert ("a", "b") in es.priority  # b is higher


@pytest.mark.parametrize(
    "text, code, line, col",
    [
        ("event a\n", "SYNTAX_ERROR", 1, 1),
        ("", "SYNTAX_ERROR", 1, 1),
        ("es triangle\n", "SYNTAX_ERROR", 1, 4),
        ("es prime\nes prime\n", "SYNTAX_ERROR", 2, 1),
        ("es prime\nevent a\n  frobnicate a\n", "SYNTAX_ERROR", 3, 3),
        ("es prime\nevent a b\n", "SYNTAX_ERROR", 2, 1),
        ("es prime\npriority a > b\n", "SYNTAX_ERROR", 2, 1),
        ("es prime\nevent a\nbundle {a} -> a\n", "VARIANT_MISMATCH", 3, 1),
        ("es bundle\nenable a -> b\n", "VARIANT_MISMATCH", 2, 1),
        ("es bundle\ndisable a ~> b\n", "VARIANT_MISMATCH", 2, 1),
        ("es ebundle\nconflict a b\n", "VARIANT_MISMATCH", 2, 1),
        ("es prime\nevent a\nevent  a\n", "DUPLICATE_EVENT", 3, 8),
    ],
)
def test_parse_errors_carry_spans(text, code, line, col):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.code == code
    assert (info.value.span.line, info.value.span.col) == (line, col)


def test_span_lookup():
    doc = parse(FIG1B)
    assert doc.span_for(["c", "d"]).line == 11
    assert doc.span_for(["a"]).line == 2
    assert doc.span_for(["a", "c"]) is None


@pytest.mark.parametrize("path", sorted(FIGURES.glob("*.es")), ids=lambda p: p.stem)
def test_corpus_round_trip(path):
    raw = parse(path.read_text()).raw
    text = render(raw)
    assert parse(text).raw == raw
    assert render(parse(text).raw) == text


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(list(Variant)))
def test_random_round_trip(rng, variant):
    es = random_structure(variant, rng)
    raw = es.to_raw()
    raw.events = [(e, rng.choice([e, e.upper() + "_lbl"])) for e, _ in raw.events]
    once = parse(render(raw)).raw
    assert once == raw
    assert parse(render(once)).raw == once
    assert validate(once).labels == tuple(raw.events)
