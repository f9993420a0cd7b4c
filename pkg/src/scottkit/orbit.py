"""Orbit structures for a finite group acting on a finite set.

For ``A`` a subset of the points, ``M_A`` records for every tuple over ``A``
its diagonal orbit, named by the lexicographically least orbit member.  Two
subsets lie in one orbit iff their orbit structures are isomorphic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .core import FiniteStructure, Signature


class MalformedAction(ValueError):
    pass


class MalformedOrbitData(ValueError):
    pass


@dataclass(frozen=True)
class FiniteAction:
    """Group given by its permutation table; ``perms[0]`` is the identity."""

    n: int
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        perms = tuple(tuple(p) for p in self.perms)
        object.__setattr__(self, "perms", perms)
        if not perms:
            raise MalformedAction("empty group")
        for p in perms:
            if sorted(p) != list(range(self.n)):
                raise MalformedAction(f"{p} is not a permutation of {self.n} points")
        if perms[0] != tuple(range(self.n)):
            raise MalformedAction("index 0 must be the identity")
        index = {p: i for i, p in enumerate(perms)}
        if len(index) != len(perms):
            raise MalformedAction("repeated group element")
        for p in perms:
            inv = tuple(sorted(range(self.n), key=lambda x: p[x]))
            if inv not in index:
                raise MalformedAction(f"inverse of {p} missing")
            for q in perms:
                if tuple(p[q[x]] for x in range(self.n)) not in index:
                    raise MalformedAction(f"table not closed under composition ({p}, {q})")

    @classmethod
    def generated_by(cls, n: int, gens: Iterable[Sequence[int]]) -> "FiniteAction":
        ident = tuple(range(n))
        seen = {ident}
        frontier = [ident]
        gens = [tuple(g) for g in gens]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = tuple(g[p[x]] for x in range(n))
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        return cls(n, (ident,) + tuple(sorted(seen - {ident})))

    @property
    def group_size(self) -> int:
        return len(self.perms)

    def apply(self, g: int, tup: Sequence[int]) -> tuple[int, ...]:
        p = self.perms[g]
        return tuple(p[x] for x in tup)


def orbit_canon(action: FiniteAction, tup: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least member of the diagonal orbit of ``tup``."""
    if any(not 0 <= x < action.n for x in tup):
        raise ValueError(f"tuple {tuple(tup)} leaves 0..{action.n - 1}")
    return min(tuple(p[x] for x in tup) for p in action.perms)


@dataclass(frozen=True)
class OrbitStructure:
    base: tuple[int, ...]
    tuple_orbits: Mapping[tuple[int, ...], tuple[int, ...]]

    def __hash__(self):
        return hash((self.base, frozenset(self.tuple_orbits.items())))

    @property
    def cap(self) -> int:
        return len(self.base)


def build_orbit_structure(action: FiniteAction, subset: Iterable[int]) -> OrbitStructure:
    base = tuple(sorted(set(subset)))
    orbits = {}
    for k in range(1, len(base) + 1):
        for t in itertools.product(base, repeat=k):
            orbits[t] = orbit_canon(action, t)
    return OrbitStructure(base, orbits)


def equiv_sets(action: FiniteAction, a: Iterable[int], b: Iterable[int]) -> Optional[int]:
    """Index of some ``g`` with ``g.A = B`` setwise."""
    a, b = frozenset(a), frozenset(b)
    for g, p in enumerate(action.perms):
        if frozenset(p[x] for x in a) == b:
            return g
    return None


def lift_bijection(action: FiniteAction, pairs: Mapping[int, int]) -> Optional[int]:
    """Index of some ``g`` with ``g(a) = pairs[a]`` for every ``a``.

    For a finite group the intersection of the cosets ``{g : g(a_i) = b_i}``
    is computed directly.
    """
    pairs = dict(pairs)
    if len(set(pairs.values())) != len(pairs):
        raise ValueError("not a bijection")
    candidates = range(action.group_size)
    for a, b in pairs.items():
        candidates = [g for g in candidates if action.perms[g][a] == b]
        if not candidates:
            return None
    return candidates[0]


def preserves_orbits(action: FiniteAction, pairs: Mapping[int, int]) -> bool:
    """Does the bijection keep every tuple over its domain in its orbit?"""
    dom = sorted(pairs)
    for k in range(1, len(dom) + 1):
        for t in itertools.product(dom, repeat=k):
            if orbit_canon(action, t) != orbit_canon(action, tuple(pairs[x] for x in t)):
                return False
    return True


def orbit_signature(action: FiniteAction) -> Signature:
    """One k-ary symbol per diagonal orbit of k-tuples, k = 1..n."""
    syms = []
    for k in range(1, action.n + 1):
        reps = sorted({orbit_canon(action, t) for t in itertools.product(range(action.n), repeat=k)})
        syms.extend(("O" + "_".join(map(str, r)), k) for r in reps)
    return Signature(tuple(syms))


def to_structure(action: FiniteAction, m: OrbitStructure, sig: Optional[Signature] = None) -> FiniteStructure:
    """Materialize the orbit data as relations on ``0..|A|-1`` (A in sorted order)."""
    if not m.base:
        raise ValueError("the empty orbit structure has no finite-structure form")
    sig = sig or orbit_signature(action)
    pos = {x: i for i, x in enumerate(m.base)}
    rels: dict[str, list] = {}
    for t, rep in m.tuple_orbits.items():
        rels.setdefault("O" + "_".join(map(str, rep)), []).append(tuple(pos[x] for x in t))
    return FiniteStructure.build(sig, len(m.base), rels)


def embed_orbit_data(action: FiniteAction, universe: Sequence, orbits: Mapping[tuple, tuple]) -> Optional[dict]:
    """Injective map of ``universe`` into the points carrying each tuple to its
    recorded orbit, built point by point; None if there is none."""
    universe = list(universe)
    if len(set(universe)) != len(universe):
        raise MalformedOrbitData("repeated universe element")
    cap = len(universe)
    for k in range(1, cap + 1):
        for t in itertools.product(universe, repeat=k):
            if t not in orbits:
                raise MalformedOrbitData(f"no orbit datum for {t}")
    for t, rep in orbits.items():
        if not 1 <= len(t) <= cap or any(x not in universe for x in t):
            raise MalformedOrbitData(f"orbit datum for foreign tuple {t}")
        rep = tuple(rep)
        if len(rep) != len(t):
            raise MalformedOrbitData(f"orbit datum {rep} has the wrong length for {t}")
        # the datum must name a genuine orbit of the ambient action
        if any(not 0 <= x < action.n for x in rep) or orbit_canon(action, rep) != rep:
            return None
    image: dict = {}

    def consistent(u) -> bool:
        placed = list(image)
        for k in range(1, len(placed) + 1):
            for t in itertools.product(placed, repeat=k):
                if u not in t:
                    continue
                if orbit_canon(action, tuple(image[x] for x in t)) != tuple(orbits[t]):
                    return False
        return True

    def forth(i: int) -> bool:
        if i == cap:
            return True
        u = universe[i]
        for x in range(action.n):
            if x in image.values():
                continue
            image[u] = x
            if consistent(u) and forth(i + 1):
                return True
            del image[u]
        return False

    return dict(image) if forth(0) else None


def embeds_as_nice(action: FiniteAction, universe: Sequence, orbits: Mapping[tuple, tuple]) -> bool:
    return embed_orbit_data(action, universe, orbits) is not None


def orbit_structures_isomorphic(m: OrbitStructure, n: OrbitStructure) -> bool:
    """Direct check: a bijection of the bases preserving every orbit datum."""
    if len(m.base) != len(n.base):
        return False
    for perm in itertools.permutations(n.base):
        f = dict(zip(m.base, perm))
        if all(n.tuple_orbits[tuple(f[x] for x in t)] == rep for t, rep in m.tuple_orbits.items()):
            return True
    return False


# the six subgroups of Sym(4) used by the campaigns
def standard_actions() -> dict[str, FiniteAction]:
    return {
        "identity": FiniteAction.generated_by(4, []),
        "Z2": FiniteAction.generated_by(4, [(1, 0, 3, 2)]),
        "Z4": FiniteAction.generated_by(4, [(1, 2, 3, 0)]),
        "Klein": FiniteAction.generated_by(4, [(1, 0, 3, 2), (2, 3, 0, 1)]),
        "S3": FiniteAction.generated_by(4, [(1, 0, 2, 3), (1, 2, 0, 3)]),
        "S4": FiniteAction.generated_by(4, [(1, 0, 2, 3), (1, 2, 3, 0)]),
    }
