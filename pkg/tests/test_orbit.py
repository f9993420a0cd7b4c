import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scottkit import orbit as o
from scottkit.core import css_equal
from scottkit.orbit import FiniteAction, MalformedAction, MalformedOrbitData

ACTIONS = o.standard_actions()
Z4 = ACTIONS["Z4"]
S3_ON_3 = FiniteAction.generated_by(3, [(1, 0, 2), (1, 2, 0)])


def subsets(n):
    return [frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(n), k)]


def test_action_validation():
    with pytest.raises(MalformedAction):
        FiniteAction(2, ((1, 0),))
    with pytest.raises(MalformedAction):
        FiniteAction(3, ((0, 1, 2), (1, 2, 0)))
    with pytest.raises(MalformedAction):
        FiniteAction(2, ((0, 1), (0, 0)))
    with pytest.raises(MalformedAction):
        FiniteAction(1, ())


def test_standard_group_orders():
    sizes = {name: a.group_size for name, a in ACTIONS.items()}
    assert sizes == {"identity": 1, "Z2": 2, "Z4": 4, "Klein": 4, "S3": 6, "S4": 24}


def test_orbit_canon_examples():
    trivial = FiniteAction.generated_by(3, [])
    assert o.orbit_canon(trivial, (2, 1)) == (2, 1)
    assert o.orbit_canon(S3_ON_3, (0, 1)) == o.orbit_canon(S3_ON_3, (2, 1)) == (0, 1)
    assert o.orbit_canon(Z4, (1, 0)) == (0, 3)
    with pytest.raises(ValueError):
        o.orbit_canon(Z4, (4,))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(ACTIONS)), st.lists(st.integers(0, 3), min_size=1, max_size=4), st.data())
def test_orbit_canon_is_idempotent_and_orbit_constant(name, tup, data):
    act = ACTIONS[name]
    c = o.orbit_canon(act, tup)
    assert o.orbit_canon(act, c) == c
    g = data.draw(st.integers(0, act.group_size - 1))
    assert o.orbit_canon(act, act.apply(g, tup)) == c
    assert any(act.apply(h, tup) == c for h in range(act.group_size))


def test_build_examples():
    trivial = FiniteAction.generated_by(4, [])
    m = o.build_orbit_structure(trivial, {0, 1})
    assert all(rep == t for t, rep in m.tuple_orbits.items())
    assert len(m.tuple_orbits) == 2 + 4
    z = o.build_orbit_structure(Z4, {0, 1})
    assert z.tuple_orbits[(0, 1)] == (0, 1) and z.tuple_orbits[(1, 0)] == (0, 3)


def test_equiv_sets_examples():
    assert Z4.perms[o.equiv_sets(Z4, {0, 1}, {2, 3})] == (2, 3, 0, 1)
    assert o.equiv_sets(Z4, {0, 2}, {0, 1}) is None
    assert o.equiv_sets(ACTIONS["S4"], {0, 2}, {0, 1}) is not None


@pytest.mark.parametrize("name", sorted(ACTIONS))
def test_equiv_sets_matches_orbit_structure_iso(name):
    act = ACTIONS[name]
    sig = o.orbit_signature(act)
    for a, b in itertools.product(subsets(4), repeat=2):
        ma, mb = o.build_orbit_structure(act, a), o.build_orbit_structure(act, b)
        expected = o.equiv_sets(act, a, b) is not None
        assert o.orbit_structures_isomorphic(ma, mb) == expected
        if a and b:
            assert css_equal(o.to_structure(act, ma, sig), o.to_structure(act, mb, sig)) == expected


@pytest.mark.parametrize("name", sorted(ACTIONS))
def test_lift_agrees_with_orbit_preservation(name):
    act = ACTIONS[name]
    for a in subsets(4):
        if len(a) > 3:
            continue
        dom = sorted(a)
        for img in itertools.permutations(range(4), len(dom)):
            pairs = dict(zip(dom, img))
            g = o.lift_bijection(act, pairs)
            assert (g is not None) == o.preserves_orbits(act, pairs)
            if g is not None:
                assert all(act.perms[g][x] == y for x, y in pairs.items())


def test_lift_rejects_non_injective():
    with pytest.raises(ValueError):
        o.lift_bijection(Z4, {0: 1, 1: 1})


def test_nice_examples():
    m = o.build_orbit_structure(Z4, {1, 2})
    assert o.embeds_as_nice(Z4, m.base, m.tuple_orbits)
    # relabel the universe: still realized
    names = {1: "a", 2: "b"}
    relabeled = {tuple(names[x] for x in t): rep for t, rep in m.tuple_orbits.items()}
    assert o.embeds_as_nice(Z4, ["a", "b"], relabeled)
    # (2,0) is not the least member of its orbit, so it names nothing
    bad = dict(m.tuple_orbits)
    bad[(1, 2)] = (2, 0)
    assert not o.embeds_as_nice(Z4, m.base, bad)
    # (0,2) is a genuine orbit, but (2,1) still records adjacency
    wrong = dict(m.tuple_orbits)
    wrong[(1, 2)] = (0, 2)
    assert not o.embeds_as_nice(Z4, m.base, wrong)


def test_nice_rejects_incomplete_data():
    with pytest.raises(MalformedOrbitData):
        o.embed_orbit_data(Z4, [0, 1], {(0,): (0,)})
    with pytest.raises(MalformedOrbitData):
        o.embed_orbit_data(Z4, [0, 0], {})


@pytest.mark.parametrize("name", ["Z4", "Klein", "S3"])
def test_nice_holds_for_every_orbit_structure(name):
    act = ACTIONS[name]
    for a in subsets(4)[1:]:
        m = o.build_orbit_structure(act, a)
        emb = o.embed_orbit_data(act, m.base, m.tuple_orbits)
        assert emb is not None
        assert o.equiv_sets(act, a, set(emb.values())) is not None
