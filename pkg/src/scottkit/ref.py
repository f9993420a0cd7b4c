"""Finite presentations of REF(bin) / REF(inf) models.

A presentation of depth ``d`` colors every address of length ``d`` with the
size of the E_infinity-class sitting on the branch ``address + 0^omega``.
E_n relates two elements iff their addresses share the first ``n`` symbols.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .core import FiniteStructure, Signature
from .extnat import OMEGA, ExtNat, is_extnat

BIN = "bin"
INF = "inf"
MAX_WIDTH = 10


class MalformedPresentation(ValueError):
    pass


class InconsistentData(ValueError):
    pass


def addresses(width: int, length: int) -> list[str]:
    """All strings of the given length over ``0..width-1``, in lex order."""
    digits = "0123456789"[:width]
    return ["".join(p) for p in itertools.product(digits, repeat=length)]


@dataclass(frozen=True)
class RefPresentation:
    variant: str
    width: int
    depth: int
    colors: tuple[ExtNat, ...]  # indexed by addresses(width, depth)

    def __post_init__(self):
        if self.variant not in (BIN, INF):
            raise MalformedPresentation(f"unknown variant {self.variant!r}")
        if self.variant == BIN and self.width != 2:
            raise MalformedPresentation("BIN presentations have width 2")
        if not 2 <= self.width <= MAX_WIDTH:
            raise MalformedPresentation(f"width must be in 2..{MAX_WIDTH}")
        if self.depth < 1:
            raise MalformedPresentation("depth must be >= 1")
        object.__setattr__(self, "colors", tuple(self.colors))
        if len(self.colors) != self.width**self.depth:
            raise MalformedPresentation("leaf coloring must be total")
        for c in self.colors:
            if not is_extnat(c) or c == 0:
                raise MalformedPresentation(f"colors must be >= 1, got {c!r}")

    @classmethod
    def from_mapping(cls, variant: str, width: int, depth: int, colors: Mapping[str, ExtNat]) -> "RefPresentation":
        addrs = addresses(width, depth)
        missing = [a for a in addrs if a not in colors]
        extra = set(colors) - set(addrs)
        if missing or extra:
            raise MalformedPresentation(f"coloring not total on the address space (missing {missing[:3]}, extra {sorted(extra)[:3]})")
        return cls(variant, width, depth, tuple(colors[a] for a in addrs))

    @classmethod
    def bin(cls, colors: Sequence[ExtNat]) -> "RefPresentation":
        depth = max(1, (len(colors) - 1).bit_length())
        return cls(BIN, 2, depth, tuple(colors))

    def addresses(self) -> list[str]:
        return addresses(self.width, self.depth)

    def as_mapping(self) -> dict[str, ExtNat]:
        return dict(zip(self.addresses(), self.colors))

    def color(self, address: str) -> ExtNat:
        return self.colors[int(address, self.width) if address else 0]


# ---------------------------------------------------------------------------
# data invariant


@dataclass(frozen=True)
class RefData:
    """Canonical bottom-up tree of a presentation.

    A leaf datum is a color; an internal datum is the sorted tuple of
    ``(child datum, multiplicity)`` pairs.  A level-``n`` type is the path of
    data from the root down to level ``n``.
    """

    variant: str
    width: int
    depth: int
    root: object

    def _paths(self, n: int) -> set[tuple]:
        paths = {(self.root,)}
        for _ in range(n):
            paths = {p + (child,) for p in paths for child, _ in p[-1]}
        return paths

    def level_types(self, n: int) -> set[tuple]:
        if not 0 <= n <= self.depth:
            raise ValueError("level out of range")
        return self._paths(n)

    def mult(self, path: Sequence) -> int:
        """How many pairwise E_n-inequivalent classes of type ``path`` sit in one E_{n-1}-class."""
        path = tuple(path)
        if len(path) < 2:
            raise ValueError("multiplicity is defined for levels n > 0")
        return dict(path[-2])[path[-1]]

    def seqs(self) -> set[tuple]:
        return self._paths(self.depth)

    def spectra(self) -> dict[tuple, frozenset]:
        return {s: frozenset([s[-1]]) for s in self.seqs()}


def compute_data(p: RefPresentation) -> RefData:
    def datum(prefix: str):
        if len(prefix) == p.depth:
            return p.color(prefix)
        kids = Counter(datum(prefix + str(a)) for a in range(p.width))
        return tuple(sorted(kids.items()))

    return RefData(p.variant, p.width, p.depth, datum(""))


def unpack_data(d: RefData) -> RefPresentation:
    """Lay each datum's children out in canonical order, repeated by multiplicity."""
    colors: list = []

    def emit(datum, level: int):
        if level == d.depth:
            if not is_extnat(datum) or datum == 0:
                raise InconsistentData(f"bad leaf color {datum!r} at level {level}")
            colors.append(datum)
            return
        if not isinstance(datum, tuple) or not datum:
            raise InconsistentData(f"internal datum expected at level {level}")
        if list(datum) != sorted(datum) or len({c for c, _ in datum}) != len(datum):
            raise InconsistentData("children must be sorted and distinct")
        if any(not isinstance(m, int) or m < 1 for _, m in datum):
            raise InconsistentData("multiplicities must be positive integers")
        if sum(m for _, m in datum) != d.width:
            raise InconsistentData(f"level {level}: {sum(m for _, m in datum)} children, arity is {d.width}")
        for child, m in datum:
            for _ in range(m):
                emit(child, level + 1)

    emit(d.root, 0)
    return RefPresentation(d.variant, d.width, d.depth, tuple(colors))


def _same_shape(p: RefPresentation, q: RefPresentation):
    if (p.variant, p.width, p.depth) != (q.variant, q.width, q.depth):
        raise MalformedPresentation("presentations differ in variant, width or depth")


def presentations_equiv(p: RefPresentation, q: RefPresentation) -> bool:
    _same_shape(p, q)
    return compute_data(p) == compute_data(q)


# ---------------------------------------------------------------------------
# ambient tree automorphisms


def apply_automorphism(p: RefPresentation, perms: Mapping[str, Sequence[int]]) -> RefPresentation:
    """Move colors along the tree automorphism permuting the children of each
    internal node ``s`` by ``perms[s]`` (identity when absent)."""

    def image(addr: str) -> str:
        out = []
        for k, ch in enumerate(addr):
            perm = perms.get(addr[:k])
            out.append(str(perm[int(ch)]) if perm is not None else ch)
        return "".join(out)

    new = {image(a): c for a, c in p.as_mapping().items()}
    return RefPresentation.from_mapping(p.variant, p.width, p.depth, new)


def random_automorphism(p: RefPresentation, rng: random.Random) -> dict[str, tuple[int, ...]]:
    perms = {}
    for k in range(p.depth):
        for s in addresses(p.width, k):
            perm = list(range(p.width))
            rng.shuffle(perm)
            perms[s] = tuple(perm)
    return perms


def find_automorphism(p: RefPresentation, q: RefPresentation) -> Optional[dict[str, tuple[int, ...]]]:
    """Exhaustive search for a tree automorphism carrying ``p`` to ``q``."""
    _same_shape(p, q)
    nodes = [s for k in range(p.depth) for s in addresses(p.width, k)]
    if len(nodes) * p.width > 40:
        raise ValueError("automorphism search space too large")
    for choice in itertools.product(itertools.permutations(range(p.width)), repeat=len(nodes)):
        perms = dict(zip(nodes, choice))
        if apply_automorphism(p, perms) == q:
            return perms
    return None


def to_structure(p: RefPresentation) -> FiniteStructure:
    """Elements are pairs (address, i < color); symbol ``E{n}`` compares address prefixes of length n."""
    if any(c is OMEGA for c in p.colors):
        raise MalformedPresentation("OMEGA colors cannot be materialized")
    elems = [(a, i) for a, c in zip(p.addresses(), p.colors) for i in range(c)]
    sig = Signature(tuple((f"E{n}", 2) for n in range(p.depth + 1)))
    rels = {}
    for n in range(p.depth + 1):
        rels[f"E{n}"] = [(x, y) for x, (a, _) in enumerate(elems) for y, (b, _) in enumerate(elems) if a[:n] == b[:n]]
    return FiniteStructure.build(sig, len(elems), rels)


# ---------------------------------------------------------------------------
# the set encoder for REF(bin)


def encode_set_refbin(subset: Iterable[str], d: int) -> RefPresentation:
    """Depth d+1: ``eta0`` carries an injective finite base color, ``eta1`` is
    OMEGA exactly when ``eta`` is in the set and 1 otherwise."""
    if d < 1:
        raise ValueError("d must be >= 1")
    subset = set(subset)
    for s in subset:
        if len(s) != d or set(s) - {"0", "1"}:
            raise ValueError(f"{s!r} is not a binary string of length {d}")
    colors = {}
    for idx, eta in enumerate(addresses(2, d)):
        colors[eta + "0"] = 2 + idx
        colors[eta + "1"] = OMEGA if eta in subset else 1
    return RefPresentation.from_mapping(BIN, 2, d + 1, colors)


def decode_set_refbin(p: RefPresentation) -> frozenset[str]:
    """Read the set back through the base colors, which pin every automorphism."""
    if p.variant != BIN:
        raise MalformedPresentation("expected a BIN presentation")
    d = p.depth - 1
    names = addresses(2, d)
    found: dict[str, bool] = {}
    for node in addresses(2, d):
        pair = [p.color(node + "0"), p.color(node + "1")]
        base = [i for i, c in enumerate(pair) if c is not OMEGA and c >= 2]
        if len(base) != 1:
            raise MalformedPresentation(f"node {node!r} has no unique base leaf: {pair}")
        color, other = pair[base[0]], pair[1 - base[0]]
        if other is not OMEGA and other != 1:
            raise MalformedPresentation(f"node {node!r}: marker leaf has color {other}")
        if color - 2 >= len(names):
            raise MalformedPresentation(f"base color {color} out of range")
        eta = names[color - 2]
        if eta in found:
            raise MalformedPresentation(f"base color {color} used twice")
        found[eta] = other is OMEGA
    return frozenset(eta for eta, marked in found.items() if marked)


# ---------------------------------------------------------------------------
# labeled trees and the REF(inf) encoder

NO_ROOT = frozenset()


def validate_tree(tree: Iterable[str], width: int) -> frozenset[str]:
    tree = frozenset(tree)
    if "" not in tree:
        raise ValueError("a labeled tree must contain the empty string")
    digits = set("0123456789"[:width])
    for s in tree:
        if set(s) - digits:
            raise ValueError(f"{s!r} uses symbols outside 0..{width - 1}")
        if s[:-1] not in tree:
            raise ValueError(f"tree not prefix-closed at {s!r}")
    return tree


def canonical_tree(tree: Iterable[str], width: int) -> frozenset[str]:
    """Relabel children so isomorphic trees give identical node sets.

    Children are ordered by their canonical subtree code, largest first, and
    renamed ``0, 1, ...`` in that order.
    """
    tree = validate_tree(tree, width)

    def code(s: str) -> tuple:
        kids = [s + ch for ch in "0123456789"[:width] if s + ch in tree]
        return tuple(sorted((code(k) for k in kids), reverse=True))

    out = set()

    def emit(c: tuple, name: str):
        out.add(name)
        for i, sub in enumerate(c):
            emit(sub, name + str(i))

    emit(code(""), "")
    return frozenset(out)


def encode_tree_refinf(tree: Iterable[str], d: int, w: int) -> RefPresentation:
    """Leaf ``eta`` gets color 2 iff some ``k < d`` has ``eta[:k]`` outside the
    tree and ``eta[k] != 0``; otherwise color 1."""
    if w < 2:
        raise ValueError("width must be >= 2")
    tree = canonical_tree(tree, w)
    if any(len(s) >= d for s in tree):
        raise ValueError(f"tree nodes must be shorter than depth {d}")
    colors = []
    for eta in addresses(w, d):
        exits = any(eta[:k] not in tree and eta[k] != "0" for k in range(d))
        colors.append(2 if exits else 1)
    return RefPresentation(INF, w, d, tuple(colors))


def tree_invariant(p: RefPresentation) -> frozenset[str]:
    """s is in the tree iff every child ``s+a`` has some color-1 leaf below it.

    Returns ``NO_ROOT`` (the empty set) when even the root fails.
    """
    if p.variant != INF:
        raise MalformedPresentation("tree_invariant needs an INF presentation")
    has_one: dict[str, bool] = {a: c == 1 for a, c in p.as_mapping().items()}
    for k in range(p.depth - 1, -1, -1):
        for s in addresses(p.width, k):
            has_one[s] = any(has_one[s + str(a)] for a in range(p.width))
    return frozenset(
        s for k in range(p.depth) for s in addresses(p.width, k) if all(has_one[s + str(a)] for a in range(p.width))
    )
