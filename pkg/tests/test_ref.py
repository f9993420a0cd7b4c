import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scottkit import ref
from scottkit.core import scott_sentence
from scottkit.extnat import OMEGA
from scottkit.ref import (
    BIN,
    INF,
    InconsistentData,
    MalformedPresentation,
    RefData,
    RefPresentation,
)

colors = st.sampled_from([1, 2, 3, OMEGA])


@st.composite
def bin_presentations(draw, max_depth=4):
    d = draw(st.integers(1, max_depth))
    return RefPresentation(BIN, 2, d, tuple(draw(st.lists(colors, min_size=2**d, max_size=2**d))))


@st.composite
def presentation_and_aut(draw, max_depth=4):
    p = draw(bin_presentations(max_depth))
    seed = draw(st.integers(0, 2**32))
    return p, ref.random_automorphism(p, random.Random(seed))


def hand_leaf_color(tree, eta):
    """Membership formula evaluated directly, position by position."""
    for k in range(len(eta)):
        if eta[:k] not in tree and eta[k] != "0":
            return 2
    return 1


# --- presentations ---------------------------------------------------------


def test_presentation_validation():
    with pytest.raises(MalformedPresentation):
        RefPresentation(BIN, 2, 1, (1,))
    with pytest.raises(MalformedPresentation):
        RefPresentation(BIN, 2, 1, (1, 0))
    with pytest.raises(MalformedPresentation):
        RefPresentation(BIN, 3, 1, (1, 1, 1))
    with pytest.raises(MalformedPresentation):
        RefPresentation.from_mapping(BIN, 2, 2, {"00": 1, "01": 1, "10": 1})


def test_from_mapping_orders_by_address():
    p = RefPresentation.from_mapping(INF, 3, 1, {"2": 5, "0": 1, "1": OMEGA})
    assert p.colors == (1, OMEGA, 5)
    assert p.color("1") is OMEGA


# --- data ------------------------------------------------------------------


def test_data_depth_one():
    d = ref.compute_data(RefPresentation.bin([1, 1]))
    assert d.root == ((1, 2),)
    assert d.mult(((((1, 2),)), 1)) == 2
    d2 = ref.compute_data(RefPresentation.bin([1, 2]))
    assert d2.root == ((1, 1), (2, 1))
    assert {d2.mult(p) for p in d2.level_types(1)} == {1}


def test_swapped_subtrees_equivalent():
    p, q = RefPresentation.bin([1, 2, 2, 1]), RefPresentation.bin([2, 1, 1, 2])
    assert ref.compute_data(p) == ref.compute_data(q)
    assert ref.presentations_equiv(p, q)
    assert ref.find_automorphism(p, q) is not None


def test_data_accessors():
    d = ref.compute_data(RefPresentation.bin([1, 2, 3, OMEGA]))
    assert len(d.seqs()) == 4
    assert all(len(v) == 1 for v in d.spectra().values())
    assert {s[-1] for s in d.seqs()} == {1, 2, 3, OMEGA}
    for path in d.level_types(2):
        assert d.mult(path) in (1, 2)


def test_unpack_examples():
    assert ref.unpack_data(RefData(BIN, 2, 1, ((1, 2),))).colors == (1, 1)
    with pytest.raises(InconsistentData):
        ref.unpack_data(RefData(BIN, 2, 1, ((1, 3),)))
    with pytest.raises(InconsistentData):
        ref.unpack_data(RefData(BIN, 2, 1, ((2, 1), (1, 1))))


def test_equiv_shape_mismatch():
    with pytest.raises(MalformedPresentation):
        ref.presentations_equiv(RefPresentation.bin([1, 1]), RefPresentation.bin([1, 1, 1, 1]))


@settings(max_examples=80, deadline=None)
@given(presentation_and_aut())
def test_data_invariant_under_automorphism(pa):
    p, perms = pa
    assert ref.compute_data(ref.apply_automorphism(p, perms)) == ref.compute_data(p)


@settings(max_examples=80, deadline=None)
@given(bin_presentations())
def test_unpack_compute_round_trips(p):
    d = ref.compute_data(p)
    u = ref.unpack_data(d)
    assert ref.presentations_equiv(u, p)
    assert ref.compute_data(u) == d
    assert ref.unpack_data(ref.compute_data(u)) == u


@settings(max_examples=60, deadline=None)
@given(bin_presentations(max_depth=3), bin_presentations(max_depth=3))
def test_equiv_agrees_with_automorphism_search(p, q):
    if p.depth != q.depth:
        return
    assert ref.presentations_equiv(p, q) == (ref.find_automorphism(p, q) is not None)


def test_core_cross_check_depth_two():
    pres = [RefPresentation.bin(list(c)) for c in itertools.product([1, 2], repeat=4)]
    sentences = [scott_sentence(ref.to_structure(p)) for p in pres]
    for (p, s), (q, t) in itertools.combinations(zip(pres, sentences), 2):
        assert (s == t) == ref.presentations_equiv(p, q)


# --- set encoder -----------------------------------------------------------


def test_encode_set_examples():
    empty = ref.encode_set_refbin(set(), 2)
    assert empty.depth == 3 and OMEGA not in empty.colors
    p = ref.encode_set_refbin({"11"}, 2)
    assert [a for a, c in p.as_mapping().items() if c is OMEGA] == ["111"]
    base = [p.color(eta + "0") for eta in ref.addresses(2, 2)]
    assert base == [2, 3, 4, 5]
    assert not ref.presentations_equiv(ref.encode_set_refbin({"00"}, 2), ref.encode_set_refbin({"01"}, 2))
    assert ref.find_automorphism(ref.encode_set_refbin({"00"}, 2), ref.encode_set_refbin({"01"}, 2)) is None


def test_decode_set_examples():
    assert ref.decode_set_refbin(ref.encode_set_refbin(set(), 2)) == frozenset()
    assert ref.decode_set_refbin(ref.encode_set_refbin({"11"}, 2)) == {"11"}
    assert ref.decode_set_refbin(ref.encode_set_refbin({"000", "010", "100"}, 3)) == {"000", "010", "100"}


def test_encode_set_errors():
    with pytest.raises(ValueError):
        ref.encode_set_refbin({"0", "11"}, 2)
    bad = RefPresentation.bin([2, 1, 2, 1])
    with pytest.raises(MalformedPresentation):
        ref.decode_set_refbin(bad)


@settings(max_examples=60, deadline=None)
@given(st.sets(st.sampled_from(ref.addresses(2, 3))), st.integers(0, 2**32))
def test_decode_sees_through_automorphisms(subset, seed):
    p = ref.encode_set_refbin(subset, 3)
    moved = ref.apply_automorphism(p, ref.random_automorphism(p, random.Random(seed)))
    assert ref.decode_set_refbin(moved) == subset


# --- tree encoder ----------------------------------------------------------


def test_tree_encoder_follows_the_rule():
    p = ref.encode_tree_refinf({""}, 2, 2)
    # the leaf is colored 2 exactly when it leaves the tree by a nonzero symbol
    assert p.as_mapping() == {"00": 1, "01": 2, "10": 1, "11": 2}
    assert ref.tree_invariant(p) == {""}


def test_tree_encoder_matches_hand_evaluation():
    for tree in [{""}, {"", "0"}, {"", "1"}, {"", "0", "00"}, {"", "0", "1", "10"}]:
        canon = ref.canonical_tree(tree, 2)
        p = ref.encode_tree_refinf(tree, 3, 2)
        assert all(p.color(a) == hand_leaf_color(canon, a) for a in p.addresses())


def test_tree_full_and_canonical():
    full = {"", "0", "1"}
    assert set(ref.encode_tree_refinf(full, 2, 2).colors) == {1}
    a = ref.encode_tree_refinf({"", "0", "00"}, 3, 2)
    b = ref.encode_tree_refinf({"", "1", "10"}, 3, 2)
    assert a == b


def test_tree_invariant_examples():
    assert ref.tree_invariant(ref.encode_tree_refinf({"", "0"}, 3, 2)) == ref.canonical_tree({"", "0"}, 2)
    all_two = RefPresentation(INF, 2, 2, (2, 2, 2, 2))
    assert ref.tree_invariant(all_two) == ref.NO_ROOT
    with pytest.raises(MalformedPresentation):
        ref.tree_invariant(RefPresentation.bin([1, 1]))


def test_tree_encoder_errors():
    with pytest.raises(ValueError):
        ref.encode_tree_refinf({"", "2"}, 3, 2)
    with pytest.raises(ValueError):
        ref.encode_tree_refinf({"", "0", "00"}, 2, 2)
    with pytest.raises(ValueError):
        ref.encode_tree_refinf({"0"}, 3, 2)


@st.composite
def labeled_trees(draw, width=3, max_len=3):
    tree = {""}
    for _ in range(draw(st.integers(0, 8))):
        parent = draw(st.sampled_from(sorted(t for t in tree if len(t) < max_len)))
        tree.add(parent + str(draw(st.integers(0, width - 1))))
    return frozenset(tree)


@settings(max_examples=60, deadline=None)
@given(labeled_trees())
def test_tree_identity_width_three(tree):
    p = ref.encode_tree_refinf(tree, 4, 3)
    assert ref.tree_invariant(p) == ref.canonical_tree(tree, 3)
