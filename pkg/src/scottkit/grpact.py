"""Colorings of the binary tree and the group actions on them.

Two groups act on finite-support colorings ``c: 2^{<omega} -> N``:

* level-wise XOR by a fixed bit string (Koerwien's K), which is abelian;
* automorphisms of the binary tree (the variant TK), given here either as
  truncated automorphisms (one swap bit per internal node) or as partial
  prefix- and length-preserving maps.

Branches of the tree that are eventually zero are written by their shortest
form ``s + "1"``; the all-zero branch is never used.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

MAX_TOTAL_DEPTH = 4
MAX_XOR_DEPTH = 16


class DepthError(ValueError):
    pass


class CapacityExceeded(ValueError):
    pass


class NotBlockStructured(ValueError):
    pass


def strings_upto(d: int) -> list[str]:
    """All binary strings of length <= d, ordered by (length, lex)."""
    return ["".join(p) for k in range(d + 1) for p in itertools.product("01", repeat=k)]


def _node_key(s: str):
    return (len(s), s)


def _meet(a: str, b: str) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


# ---------------------------------------------------------------------------
# colorings


@dataclass(frozen=True)
class Coloring:
    values: tuple[tuple[str, int], ...]

    def __post_init__(self):
        items = tuple(sorted(((str(s), int(v)) for s, v in self.values), key=lambda kv: _node_key(kv[0])))
        object.__setattr__(self, "values", items)
        support = {s for s, _ in items}
        if len(support) != len(items):
            raise ValueError("duplicate support strings")
        for s, v in items:
            if set(s) - {"0", "1"}:
                raise ValueError(f"{s!r} is not a binary string")
            if v < 1:
                raise ValueError("coloring values are >= 1 on the support")
            if s and s[:-1] not in support:
                raise ValueError(f"support not prefix-closed at {s!r}")

    @classmethod
    def from_dict(cls, values: Mapping[str, int]) -> "Coloring":
        return cls(tuple(values.items()))

    def as_dict(self) -> dict[str, int]:
        return dict(self.values)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(s for s, _ in self.values)

    @property
    def depth(self) -> int:
        return max((len(s) for s, _ in self.values), default=0)

    def __call__(self, s: str) -> int:
        return self.as_dict().get(s, 0)

    def value_multiset(self) -> Counter:
        return Counter(v for _, v in self.values)


@dataclass(frozen=True)
class ColoringFamily:
    """Finite multiset of colorings, stored in canonical sorted order."""

    items: tuple[Coloring, ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(sorted(self.items, key=lambda c: c.values)))

    @classmethod
    def of(cls, items: Iterable[Coloring]) -> "ColoringFamily":
        return cls(tuple(items))

    def counts(self) -> Counter:
        return Counter(self.items)

    @property
    def depth(self) -> int:
        return max((c.depth for c in self.items), default=0)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


def pair_coloring(k: int, eta: str, tau: str) -> Coloring:
    """Value ``k`` on every prefix of ``eta`` or ``tau``."""
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    if len(eta) != len(tau):
        raise ValueError("eta and tau must have equal length")
    support = {eta[:i] for i in range(len(eta) + 1)} | {tau[:i] for i in range(len(tau) + 1)}
    return Coloring(tuple((s, k) for s in support))


def pair_code(a: int, b: int) -> int:
    """The fixed injective pairing ``(a, b) -> 2^a (2b + 1)`` for composing coloring codes.

    The encoders here only need the values 1..3, so nothing inside calls it.
    """
    if a < 0 or b < 0:
        raise ValueError("pair_code takes naturals")
    return (2 * b + 1) << a


def unpair_code(n: int) -> tuple[int, int]:
    if n < 1:
        raise ValueError("codes are positive")
    a = (n & -n).bit_length() - 1
    return a, (n >> a) // 2


# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True)
class Xor:
    bits: str

    @property
    def depth(self) -> int:
        return len(self.bits)

    def image(self, s: str) -> str:
        head = "".join("1" if a != b else "0" for a, b in zip(s, self.bits))
        return head + s[len(head):]

    def inverse(self) -> "Xor":
        return self


def internal_nodes(d: int) -> list[str]:
    return strings_upto(d - 1) if d > 0 else []


@dataclass(frozen=True)
class Total:
    """Automorphism of the depth-``d`` tree: ``swaps[s]`` exchanges the two
    subtrees below internal node ``s``."""

    depth: int
    swaps: frozenset[str]

    def image(self, s: str) -> str:
        out = []
        for i, ch in enumerate(s):
            flip = s[:i] in self.swaps
            out.append(("1" if ch == "0" else "0") if flip else ch)
        return "".join(out)

    def inverse(self) -> "Total":
        # the swap applied at source node s sits at target node image(s)
        return Total(self.depth, frozenset(self.image(s) for s in self.swaps))

    @classmethod
    def from_xor(cls, g: Xor) -> "Total":
        return cls(g.depth, frozenset(s for s in internal_nodes(g.depth) if g.bits[len(s)] == "1"))


@dataclass(frozen=True)
class Partial:
    """Finite level- and meet-preserving injection between string sets."""

    mapping: tuple[tuple[str, str], ...]

    def __post_init__(self):
        items = tuple(sorted(dict(self.mapping).items(), key=lambda kv: _node_key(kv[0])))
        object.__setattr__(self, "mapping", items)
        if len({v for _, v in items}) != len(items):
            raise ValueError("partial map is not injective")
        for (a, fa), (b, fb) in itertools.combinations(items, 2):
            if len(a) != len(fa) or len(b) != len(fb):
                raise ValueError("partial map must preserve lengths")
            if _meet(a, b) != _meet(fa, fb):
                raise ValueError(f"meet of {a!r},{b!r} not preserved")
        for a, fa in items:
            if len(a) != len(fa):
                raise ValueError("partial map must preserve lengths")

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(a for a, _ in self.mapping)

    def image(self, s: str) -> Optional[str]:
        return dict(self.mapping).get(s)

    def inverse(self) -> "Partial":
        return Partial(tuple((b, a) for a, b in self.mapping))


GroupElem = Union[Xor, Total, Partial]


def identity(kind: str, d: int) -> GroupElem:
    return Xor("0" * d) if kind == "xor" else Total(d, frozenset())


def compose(g: GroupElem, h: GroupElem) -> GroupElem:
    """The element ``g o h`` (apply ``h`` first)."""
    if isinstance(g, Partial) or isinstance(h, Partial):
        hm = dict(h.mapping) if isinstance(h, Partial) else None
        dom = hm.keys() if hm is not None else g.domain
        pairs = []
        for s in dom:
            t = h.image(s)
            if t is None:
                continue
            u = g.image(t)
            if u is not None:
                pairs.append((s, u))
        return Partial(tuple(pairs))
    if isinstance(g, Xor) and isinstance(h, Xor) and g.depth == h.depth:
        return Xor("".join("1" if a != b else "0" for a, b in zip(g.bits, h.bits)))
    g = Total.from_xor(g) if isinstance(g, Xor) else g
    h = Total.from_xor(h) if isinstance(h, Xor) else h
    if g.depth != h.depth:
        raise DepthError("cannot compose elements of different depth")
    swaps = {s for s in internal_nodes(h.depth) if (s in h.swaps) != (h.image(s) in g.swaps)}
    return Total(h.depth, frozenset(swaps))


def act(g: GroupElem, c: Coloring) -> Optional[Coloring]:
    """``(g.c)(g(s)) = c(s)``; None when a partial map misses part of the support."""
    if isinstance(g, Partial):
        table = dict(g.mapping)
        if not c.support <= table.keys():
            return None
        return Coloring(tuple((table[s], v) for s, v in c.values))
    if c.depth > g.depth:
        raise DepthError(f"support depth {c.depth} exceeds group depth {g.depth}")
    return Coloring(tuple((g.image(s), v) for s, v in c.values))


def act_family(g: GroupElem, family: ColoringFamily) -> Optional[ColoringFamily]:
    out = []
    for c in family:
        gc = act(g, c)
        if gc is None:
            return None
        out.append(gc)
    return ColoringFamily.of(out)


def xor_group(d: int) -> Iterable[Xor]:
    for bits in itertools.product("01", repeat=d):
        yield Xor("".join(bits))


def total_group(d: int) -> Iterable[Total]:
    nodes = internal_nodes(d)
    for mask in itertools.product((False, True), repeat=len(nodes)):
        yield Total(d, frozenset(s for s, on in zip(nodes, mask) if on))


def _group(kind: str, d: int) -> Iterable[GroupElem]:
    if kind == "xor":
        if d > MAX_XOR_DEPTH:
            raise DepthError(f"XOR search refused above depth {MAX_XOR_DEPTH}")
        return xor_group(d)
    if kind == "total":
        if d > MAX_TOTAL_DEPTH:
            raise DepthError(f"TOTAL search refused above depth {MAX_TOTAL_DEPTH}")
        return total_group(d)
    raise ValueError(f"unknown group kind {kind!r}")


def equiv_families(a: ColoringFamily, b: ColoringFamily, kind: str, d: int) -> Optional[GroupElem]:
    """Some element ``g`` of the kind's group with ``g.A = B`` as multisets."""
    if max(a.depth, b.depth) > d:
        raise DepthError(f"family depth exceeds {d}")
    group = _group(kind, d)
    if len(a) != len(b):
        return None
    if sorted(sorted(c.value_multiset().items()) for c in a) != sorted(sorted(c.value_multiset().items()) for c in b):
        return None
    target = b.counts()
    for g in group:
        if Counter(act(g, c) for c in a) == target:
            return g
    return None


# ---------------------------------------------------------------------------
# graphs and the block scheme


@dataclass(frozen=True)
class GraphInstance:
    v: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.v < 1:
            raise ValueError("graphs need at least one vertex")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise ValueError("graph edges must be irreflexive")
            if not (0 <= i < self.v and 0 <= j < self.v):
                raise ValueError(f"edge {e} out of range")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def of(cls, v: int, edges: Iterable[Sequence[int]] = ()) -> "GraphInstance":
        return cls(v, frozenset(tuple(e) for e in edges))

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def relabel(self, perm: Sequence[int]) -> "GraphInstance":
        return GraphInstance(self.v, frozenset((perm[i], perm[j]) for i, j in self.edges))


def graph_isomorphisms(r: GraphInstance, s: GraphInstance) -> Iterable[tuple[int, ...]]:
    if r.v != s.v or len(r.edges) != len(s.edges):
        return
    for perm in itertools.permutations(range(r.v)):
        if r.relabel(perm) == s:
            yield perm


def graphs_isomorphic(r: GraphInstance, s: GraphInstance) -> bool:
    return next(iter(graph_isomorphisms(r, s)), None) is not None


def canonical_branch(s: str) -> str:
    """Shortest form of the eventually-zero branch ``s + 0^omega``."""
    t = s.rstrip("0")
    if not t:
        raise ValueError("the all-zero branch is not in any block")
    return t


def branch_bits(branch: str, n: int) -> str:
    return (branch + "0" * n)[:n]


def branch_meet(a: str, b: str) -> int:
    """Length of the longest common initial segment of two distinct branches."""
    n = max(len(a), len(b)) + 1
    return _meet(branch_bits(a, n), branch_bits(b, n))


@dataclass(frozen=True)
class BlockScheme:
    """Branch ``s + "1"`` lies in block ``len(s) mod v``: blocks are disjoint,
    dense, and membership is read off the branch's shortest form."""

    v: int

    def block_of(self, branch: str) -> int:
        return (len(canonical_branch(branch)) - 1) % self.v

    def extend_into(self, prefix: str, block: int) -> str:
        """The shortest branch of ``block`` extending the finite string ``prefix``."""
        stripped = prefix.rstrip("0")
        if stripped and (len(stripped) - 1) % self.v == block:
            return stripped
        j = (block - len(prefix)) % self.v
        return prefix + "0" * j + "1"

    def any_extension(self, prefix: str) -> str:
        return min((self.extend_into(prefix, b) for b in range(self.v)), key=_node_key)

    def members(self, block: int, max_len: int) -> list[str]:
        """Branches of ``block`` whose shortest form has length <= max_len."""
        out = []
        for n in range(1, max_len + 1):
            if (n - 1) % self.v == block:
                out.extend("".join(p) + "1" for p in itertools.product("01", repeat=n - 1))
        return out

    def representatives(self, block: int, count: int, d: int) -> list[str]:
        reps = self.members(block, d)[:count]
        if len(reps) < count:
            raise CapacityExceeded(f"block {block} has only {len(reps)} branches of length <= {d}")
        return reps


@dataclass(frozen=True)
class SymbolicFamily:
    """The exact encoding of a graph: every pair of branches from the blocks,
    colored 1 inside a block, 2 across an edge, 3 across a non-edge."""

    graph: GraphInstance
    scheme: BlockScheme

    def color_for(self, eta: str, tau: str) -> int:
        i, j = self.scheme.block_of(eta), self.scheme.block_of(tau)
        if i == j:
            return 1
        return 2 if self.graph.has_edge(i, j) else 3

    def contains(self, k: int, eta: str, tau: str) -> bool:
        return self.color_for(eta, tau) == k

    def pairs(self, per_block: int, d: int) -> list[tuple[int, str, str]]:
        reps = [r for b in range(self.graph.v) for r in self.scheme.representatives(b, per_block, d)]
        return [(self.color_for(e, t), e, t) for e, t in itertools.combinations_with_replacement(reps, 2)]

    def materialize(self, per_block: int, d: int) -> ColoringFamily:
        return ColoringFamily.of(
            pair_coloring(k, branch_bits(e, d), branch_bits(t, d)) for k, e, t in self.pairs(per_block, d)
        )


def encode_graph_tk(r: GraphInstance, per_block: int, d: int) -> tuple[SymbolicFamily, ColoringFamily]:
    if per_block < 1:
        raise ValueError("per_block must be >= 1")
    sym = SymbolicFamily(r, BlockScheme(r.v))
    return sym, sym.materialize(per_block, d)


def _leaves(c: Coloring, d: int) -> frozenset[str]:
    leaves = frozenset(s for s in c.support if len(s) == d)
    if not 1 <= len(leaves) <= 2:
        raise NotBlockStructured("each coloring must mark one or two branches")
    expected = {leaf[:i] for leaf in leaves for i in range(d + 1)}
    if expected != c.support:
        raise NotBlockStructured("support is not the prefix set of its branches")
    return leaves


def decode_graph_tk(family: ColoringFamily) -> GraphInstance:
    """Blocks are the classes of the value-1 pairs; value-2 pairs are edges."""
    d = family.depth
    parent: dict[str, str] = {}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    marked = []
    for c in family:
        vals = set(c.value_multiset())
        if len(vals) != 1 or not vals <= {1, 2, 3}:
            raise NotBlockStructured("colorings must be constant with value 1, 2 or 3")
        k = vals.pop()
        leaves = sorted(_leaves(c, d))
        marked.append((k, leaves))
        if k == 1:
            for x in leaves:
                parent.setdefault(x, x)
            if len(leaves) == 2:
                parent[find(leaves[0])] = find(leaves[1])
    for k, leaves in marked:
        if k != 1:
            if any(x not in parent for x in leaves):
                raise NotBlockStructured("branch outside every block")
            if len(leaves) != 2 or find(leaves[0]) == find(leaves[1]):
                raise NotBlockStructured("cross-block coloring inside one block")
    roots = sorted({find(x) for x in parent}, key=lambda r: min(x for x in parent if find(x) == r))
    block = {r: i for i, r in enumerate(roots)}
    edges, non_edges = set(), set()
    for k, leaves in marked:
        if k == 1:
            continue
        i, j = sorted((block[find(leaves[0])], block[find(leaves[1])]))
        (edges if k == 2 else non_edges).add((i, j))
    if edges & non_edges:
        raise NotBlockStructured("a block pair is marked both edge and non-edge")
    if not roots:
        raise NotBlockStructured("empty family")
    return GraphInstance(len(roots), frozenset(edges))


# ---------------------------------------------------------------------------
# the back-and-forth witness


@dataclass
class LazyAut:
    """Tree automorphism built on demand by back-and-forth.

    Every branch in the domain maps into the block prescribed by ``sigma`` and
    meet lengths are preserved in both directions, so the answers given so far
    always extend to a genuine automorphism.  Not safe for concurrent queries.
    """

    sigma: tuple[int, ...]
    scheme: BlockScheme
    fwd: dict[str, str] = field(default_factory=dict)
    bwd: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.sigma = tuple(self.sigma)
        if sorted(self.sigma) != list(range(self.scheme.v)):
            raise ValueError("sigma must permute the blocks")
        self.sigma_inv = tuple(self.sigma.index(i) for i in range(self.scheme.v))

    def seed(self, pairs: Iterable[tuple[str, str]]):
        for eta, img in pairs:
            eta, img = canonical_branch(eta), canonical_branch(img)
            if self.scheme.block_of(img) != self.sigma[self.scheme.block_of(eta)]:
                raise ValueError(f"seed pair {eta}->{img} violates the block permutation")
            for nu, fnu in self.fwd.items():
                if eta == nu or img == fnu or branch_meet(eta, nu) != branch_meet(img, fnu):
                    raise ValueError(f"seed pair {eta}->{img} conflicts with {nu}->{fnu}")
            self.fwd[eta] = img
            self.bwd[img] = eta

    def _extend(self, eta: str, f: dict, finv: dict, perm: Sequence[int]) -> str:
        target = perm[self.scheme.block_of(eta)]
        if not f:
            img = eta if self.scheme.block_of(eta) == target else self.scheme.extend_into("", target)
        else:
            nu = max(f, key=lambda x: (branch_meet(eta, x), _node_key(x)))
            n = branch_meet(eta, nu)
            fnu = f[nu]
            p = branch_bits(fnu, n) + ("1" if branch_bits(fnu, n + 1)[n] == "0" else "0")
            # keep eta's own tail when it already lands in the right block
            img = (p + eta[n + 1:]).rstrip("0")
            if not img or self.scheme.block_of(img) != target:
                img = self.scheme.extend_into(p, target)
        f[eta] = img
        finv[img] = eta
        return img

    def branch_image(self, eta: str) -> str:
        eta = canonical_branch(eta)
        if eta in self.fwd:
            return self.fwd[eta]
        return self._extend(eta, self.fwd, self.bwd, self.sigma)

    def branch_preimage(self, nu: str) -> str:
        nu = canonical_branch(nu)
        if nu in self.bwd:
            return self.bwd[nu]
        return self._extend(nu, self.bwd, self.fwd, self.sigma_inv)

    def image(self, s: str) -> str:
        """Image of the tree node ``s``."""
        for eta, img in self.fwd.items():
            if branch_bits(eta, len(s)) == s:
                return branch_bits(img, len(s))
        eta = self.scheme.any_extension(s)
        return branch_bits(self.branch_image(eta), len(s))

    def preimage(self, s: str) -> str:
        for nu, pre in self.bwd.items():
            if branch_bits(nu, len(s)) == s:
                return branch_bits(pre, len(s))
        nu = self.scheme.any_extension(s)
        return branch_bits(self.branch_preimage(nu), len(s))

    def as_partial(self, strings: Iterable[str]) -> Partial:
        closure = {s[:i] for s in strings for i in range(len(s) + 1)}
        return Partial(tuple((s, self.image(s)) for s in sorted(closure, key=_node_key)))

    def is_consistent(self) -> bool:
        """Do the branch pairs answered so far satisfy the back-and-forth conditions?"""
        items = list(self.fwd.items())
        if len({img for _, img in items}) != len(items):
            return False
        if any(self.bwd.get(img) != eta for eta, img in items) or len(self.bwd) != len(self.fwd):
            return False
        for eta, img in items:
            if self.scheme.block_of(img) != self.sigma[self.scheme.block_of(eta)]:
                return False
        return all(branch_meet(a, b) == branch_meet(fa, fb) for (a, fa), (b, fb) in itertools.combinations(items, 2))


def lazy_claim_witness(sigma: Sequence[int], scheme: BlockScheme, seed: Iterable[tuple[str, str]] = ()) -> LazyAut:
    w = LazyAut(tuple(sigma), scheme)
    w.seed(seed)
    return w


def transport_failures(
    w: LazyAut, src: SymbolicFamily, dst: SymbolicFamily, per_block: int, d: int
) -> list[str]:
    """Check that ``w`` carries the materialized pairs of ``src`` into the
    symbolic family ``dst`` and pulls those of ``dst`` back into ``src``."""
    bad = []
    for k, eta, tau in src.pairs(per_block, d):
        ge, gt = w.branch_image(eta), w.branch_image(tau)
        if not dst.contains(k, ge, gt):
            bad.append(f"forth: c{k}({eta},{tau}) -> ({ge},{gt}) not in target family")
            continue
        c = pair_coloring(k, branch_bits(eta, d), branch_bits(tau, d))
        moved = act(w.as_partial(c.support), c)
        if moved != pair_coloring(k, branch_bits(ge, d), branch_bits(gt, d)):
            bad.append(f"forth: coloring of ({eta},{tau}) not transported to its image pair")
    for k, eta, tau in dst.pairs(per_block, d):
        pe, pt = w.branch_preimage(eta), w.branch_preimage(tau)
        if not src.contains(k, pe, pt):
            bad.append(f"back: c{k}({eta},{tau}) <- ({pe},{pt}) not in source family")
    if not w.is_consistent():
        bad.append("witness lost back-and-forth consistency")
    return bad


def total_realizing_block_permutation(sigma: Sequence[int], scheme: BlockScheme, d: int) -> Optional[Total]:
    """A truncated automorphism moving every block's depth-``d`` branches into
    block ``sigma(i)``, if one exists.

    The truncated group is a 2-group, so any permutation it induces on blocks
    has 2-power order; a 3-cycle is never realized.
    """
    if d > MAX_TOTAL_DEPTH:
        raise DepthError(f"TOTAL search refused above depth {MAX_TOTAL_DEPTH}")
    blocks = [{branch_bits(b, d) for b in scheme.members(i, d)} for i in range(scheme.v)]
    for g in total_group(d):
        if all({g.image(x) for x in blocks[i]} <= blocks[sigma[i]] for i in range(scheme.v)):
            return g
    return None


# ---------------------------------------------------------------------------
# the set encoder for K


def level_coloring(x: str) -> Coloring:
    """``c_x(empty) = 1`` and ``c_x(s) = x[len(s)-1] + 2`` for ``1 <= len(s) <= len(x)``."""
    return Coloring(tuple((s, 1 if not s else int(x[len(s) - 1]) + 2) for s in strings_upto(len(x))))


def encode_set_k(xs: Iterable[str], fillers: int, d: Optional[int] = None) -> ColoringFamily:
    xs = sorted(set(xs))
    lengths = {len(x) for x in xs}
    if d is None:
        if len(lengths) != 1:
            raise ValueError("need a uniform string length (pass d for the empty set)")
        d = lengths.pop()
    elif lengths - {d}:
        raise ValueError(f"all strings must have length {d}")
    for x in xs:
        if set(x) - {"0", "1"}:
            raise ValueError(f"{x!r} is not binary")
    filler = Coloring(tuple((s, 1) for s in strings_upto(d)))
    return ColoringFamily.of([level_coloring(x) for x in xs] + [filler] * fillers)


# ---------------------------------------------------------------------------
# rigidity


def find_rigidity_counterexample(kind: str, d: int, tuple_len: int):
    """Tuples ``a ~ b ~ c`` with ``ab ~ ac`` but ``b != c``, or None.

    Such a triple exists iff some ``h`` fixing ``a`` moves an orbit-mate ``b``;
    abelian actions never allow it.
    """
    if tuple_len < 1:
        raise ValueError("tuple_len must be >= 1")
    group = list(_group(kind, d))
    nodes = strings_upto(d)
    images = [{s: g.image(s) for s in nodes} for g in group]
    for a in itertools.product(nodes, repeat=tuple_len):
        stab = [im for im in images if all(im[x] == x for x in a)]
        orbit = sorted({tuple(im[x] for x in a) for im in images}, key=lambda t: [_node_key(x) for x in t])
        for b in orbit:
            moved = sorted({tuple(im[x] for x in b) for im in stab} - {b}, key=lambda t: [_node_key(x) for x in t])
            if moved:
                return a, b, moved[0]
    return None
