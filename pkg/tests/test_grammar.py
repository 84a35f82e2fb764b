"""Module-expression grammar: parser, printer, round-trips, errors."""

import random

import pytest
from hypothesis import given, settings

from conftest import modules
from phv import (
    ParseError,
    SimpleFactor,
    Weight,
    canonical_key,
    catalog_instantiate,
    equivalent,
    format_module,
    module,
    parse_module,
)


def test_basic_example():
    m = parse_module("GL1 x SL2 : 3w1")
    assert m == catalog_instantiate("SK I-4")
    assert format_module(m) == "GL1 x SL2 : 3w1"


def test_multi_summand_example():
    m = parse_module("GL1^2 x SL4 x SL2 : (w2 # w1) + (w1 # 1) + (w1 # 1)")
    assert equivalent(m, catalog_instantiate("KI I-2"))


def test_no_tag_defaults():
    # torus rank 1: all summands share the single slot
    shared = parse_module("GL1 x SL2 : w1 + w1")
    assert all(s.slots == frozenset({0}) for s in shared.summands)
    # torus rank == summand count: one slot each
    split = parse_module("GL1^2 x SL2 : w1 + w1")
    assert [s.slots for s in split.summands] == [frozenset({0}), frozenset({1})]
    # torus rank between: summand i takes slot min(i, k-1)
    three = parse_module("GL1^2 x Sp2 x SL3 : (w1 # w1) + (w2 # 1) + (1 # w1*)")
    assert [s.slots for s in three.summands] == [
        frozenset({0}),
        frozenset({1}),
        frozenset({1}),
    ]
    # more torus than summands without tags is ambiguous
    with pytest.raises(ParseError):
        parse_module("GL1^3 x SL2 : w1 + w1")


def test_explicit_slots():
    m = parse_module("GL1^3 x SL2 : w1@1,3 + w1@2")
    assert [s.slots for s in m.summands] == [frozenset({0, 2}), frozenset({1})]
    empty = parse_module("GL1 x SL2 : 3w1@0")
    assert empty.summands[0].slots == frozenset()
    with pytest.raises(ParseError):
        parse_module("GL1 x SL2 : w1@0,1")  # zero tag cannot combine
    with pytest.raises(ParseError):
        parse_module("GL1 x SL2 : w1@2")  # slot beyond torus rank
    with pytest.raises(ParseError):
        parse_module("GL1^2 x SL2 : w1@1,1")  # duplicate


def test_gl_sugar_and_orthogonal_families():
    m = parse_module("GL3 : w1")
    assert m.group.torus_dim == 1
    assert m.group.factors == (SimpleFactor("A", 2),)
    assert parse_module("SO5 : w2").group.factors == (SimpleFactor("B", 2),)
    assert parse_module("Spin10 : w5").group.factors == (SimpleFactor("D", 5),)
    assert parse_module("SO8 : w1").group.factors == (SimpleFactor("D", 4),)
    assert parse_module("Sp3 : w1").group.factors == (SimpleFactor("C", 3),)
    for bad in ("SO3 : w1", "SO4 : w1", "SL0 : w1", "Sp0 : w1", "E6 5 : w1"):
        with pytest.raises(ParseError):
            parse_module(bad)


def test_sl1_is_trivial_only():
    m = parse_module("GL1 x SL1 x SL2 : 1 # w1")
    assert m.group.factors == (SimpleFactor("A", 1),)
    assert len(m.summands[0].weights) == 1
    with pytest.raises(ParseError):
        parse_module("GL1 x SL1 x SL2 : w1 # w1")


def test_dual_marker_and_multiterm_weights():
    m = parse_module("GL1 x SL4 : w1,w3 + 2w2*")
    w1 = m.summands[0].weights[0]
    assert w1 == Weight(((0, 1), (2, 1)))
    w2 = m.summands[1].weights[0]
    assert w2 == Weight(((1, 2),))  # the dual marker resolves on w2 itself


def test_arity_and_syntax_errors():
    cases = [
        "GL1 x SL3 : w1 # w1",  # two reps, one simple factor
        "GL1 x SL3 :",  # missing summand
        "SL3 w1",  # missing colon
        "GL1 x SL3 : w4",  # weight index beyond rank
        "GL1 x SL3 : 0w1",  # zero coefficient
        "GL1 x SL3 : w0",  # zero index
        "GL1 x SL3 : w1,w1",  # duplicate index
        "GL1 : w1",  # pure torus needs the trivial rep
        "GL1 + SL3 : w1",  # bad separator
        "",
    ]
    for text in cases:
        with pytest.raises(ParseError):
            parse_module(text)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse_module("GL1 x SL0 : w1")
    assert err.value.position == 6


def test_pure_torus_formatting():
    m = parse_module("GL1 : 1@1")
    assert m.group.torus_dim == 1 and not m.group.factors
    assert format_module(m) == "GL1 : 1@1"


def test_catalog_text_round_trips_bit_exact():
    from phv import catalog_list

    for entry in catalog_list():
        m = entry.build(**entry.representative)
        text = format_module(m)
        assert format_module(parse_module(text)) == text
        assert canonical_key(parse_module(text)) == canonical_key(m)


@settings(max_examples=150, deadline=None)
@given(modules())
def test_random_round_trip_canonical(m):
    text = format_module(m)
    again = parse_module(text)
    assert equivalent(again, m)
    # printing is stable from the second pass on
    assert format_module(again) == text


def test_seeded_bulk_round_trip():
    rng = random.Random(99)
    from conftest import random_module

    for _ in range(200):
        m = random_module(rng)
        assert equivalent(parse_module(format_module(m)), m)
