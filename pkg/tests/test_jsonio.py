import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scottkit import combinators as comb
from scottkit import grpact, jsonio, orbit, ref
from scottkit.core import FiniteStructure, Signature, scott_sentence
from scottkit.extnat import OMEGA
from scottkit.jsonio import InputError

SIG = Signature.of(("E", 2), ("P", 1))


def through_text(dump, parse, x):
    """Dump, serialize to text and back, parse."""
    return parse(json.loads(jsonio.dumps(dump(x))))


@st.composite
def structures(draw):
    n = draw(st.integers(1, 4))
    e = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
    p = draw(st.sets(st.tuples(st.integers(0, n - 1))))
    return FiniteStructure.build(SIG, n, {"E": e, "P": p})


@settings(max_examples=40, deadline=None)
@given(structures())
def test_structure_and_sentence(m):
    assert through_text(jsonio.dump_structure, jsonio.parse_structure, m) == m
    s = scott_sentence(m)
    assert through_text(jsonio.dump_sentence, jsonio.parse_sentence, s) == s


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**32))
def test_presentation_and_data(depth, seed):
    rng = random.Random(seed)
    p = ref.RefPresentation.bin([rng.choice([1, 2, OMEGA]) for _ in range(2**depth)])
    assert through_text(jsonio.dump_presentation, jsonio.parse_presentation, p) == p
    d = ref.compute_data(p)
    assert through_text(jsonio.dump_data, jsonio.parse_data, d) == d


def test_inf_presentation_and_tree():
    p = ref.encode_tree_refinf({"", "0", "01"}, 3, 2)
    assert through_text(jsonio.dump_presentation, jsonio.parse_presentation, p) == p
    t = ref.canonical_tree({"", "1"}, 2)
    assert through_text(jsonio.dump_tree, jsonio.parse_tree, t) == t


def test_grpact_round_trips():
    fam = grpact.encode_graph_tk(grpact.GraphInstance.of(3, [(0, 1)]), 2, 6)[1]
    assert through_text(jsonio.dump_family, jsonio.parse_family, fam) == fam
    g = grpact.GraphInstance.of(3, [(0, 2)])
    assert through_text(jsonio.dump_graph, jsonio.parse_graph, g) == g
    for e in (grpact.Xor("01"), grpact.Total(2, frozenset({"", "1"})), grpact.Partial((("0", "1"),))):
        assert through_text(jsonio.dump_element, jsonio.parse_element, e) == e
    c = grpact.Coloring.from_dict({"": 1, "1": 3})
    assert through_text(jsonio.dump_coloring, jsonio.parse_coloring, c) == c


def test_orbit_round_trips():
    act = orbit.standard_actions()["Z4"]
    assert through_text(jsonio.dump_action, jsonio.parse_action, act) == act
    m = orbit.build_orbit_structure(act, {0, 1})
    assert through_text(jsonio.dump_orbit_structure, jsonio.parse_orbit_structure, m) == m
    assert through_text(jsonio.dump_subset, jsonio.parse_subset, frozenset({3, 1})) == {1, 3}


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(comb.bounded_invariants(2, 2, max_chains=2)))
def test_invariants(inv):
    assert through_text(jsonio.dump_invariant, jsonio.parse_invariant, inv) == inv


@pytest.mark.parametrize(
    "parse,obj",
    [
        (jsonio.parse_structure, {"size": 1}),
        (jsonio.parse_sentence, 5),
        (jsonio.parse_presentation, {"variant": "tri", "depth": 1, "colors": {}}),
        (jsonio.parse_tree, {"nodes": [1]}),
        (jsonio.parse_family, [{"values": {"": 1}, "mult": 0}]),
        (jsonio.parse_element, {"rot": "1"}),
        (jsonio.parse_subset, [1, 1]),
        (jsonio.parse_invariant, {"jump": 3}),
    ],
)
def test_malformed_inputs(parse, obj):
    with pytest.raises(ValueError):
        parse(obj)


def test_input_error_is_value_error():
    assert issubclass(InputError, ValueError)
