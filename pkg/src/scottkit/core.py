"""Finite relational structures and their canonical Scott sentences.

The refinement hierarchy works on injective tuples only.  A tuple's type at
stage 0 is its atomic diagram; at stage a+1 it is the pair (stage-a type,
set of stage-a types of its one-point extensions).  The same datum carries
both the existential conjunct and the universal disjunct of the Scott
formula, so formulas are only materialized when a sentence is serialized.
"""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

DEFAULT_ORACLE_BOUND = 8


class SignatureMismatch(ValueError):
    pass


class MalformedStructure(ValueError):
    pass


class OracleBoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple((str(n), int(a)) for n, a in self.symbols))
        names = [n for n, _ in self.symbols]
        if len(set(names)) != len(names):
            raise MalformedStructure(f"duplicate symbol names in {names}")
        for name, arity in self.symbols:
            if not name or arity < 1:
                raise MalformedStructure(f"bad symbol {name!r}/{arity}")

    @classmethod
    def of(cls, *pairs: tuple[str, int]) -> "Signature":
        return cls(tuple(pairs))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.symbols)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def arity(self, name: str) -> int:
        return self.symbols[self.index(name)][1]

    def __len__(self):
        return len(self.symbols)


@dataclass(frozen=True)
class FiniteStructure:
    """Structure with universe ``0..size-1``; ``relations`` follows ``sig`` order."""

    sig: Signature
    size: int
    relations: tuple[frozenset, ...]

    def __post_init__(self):
        if self.size < 1:
            raise MalformedStructure("universe must be nonempty")
        if len(self.relations) != len(self.sig):
            raise MalformedStructure("one relation per symbol required")
        rels = []
        for (name, arity), rel in zip(self.sig.symbols, self.relations):
            rel = frozenset(tuple(t) for t in rel)
            for t in rel:
                if len(t) != arity:
                    raise MalformedStructure(f"{name}: tuple {t} has wrong arity")
                if any(not isinstance(x, int) or x < 0 or x >= self.size for x in t):
                    raise MalformedStructure(f"{name}: tuple {t} leaves the universe")
            rels.append(rel)
        object.__setattr__(self, "relations", tuple(rels))

    @classmethod
    def build(cls, sig: Signature, size: int, interp: Mapping[str, Iterable[Sequence[int]]]) -> "FiniteStructure":
        unknown = set(interp) - set(sig.names)
        if unknown:
            raise MalformedStructure(f"symbols not in signature: {sorted(unknown)}")
        return cls(sig, size, tuple(frozenset(tuple(t) for t in interp.get(n, ())) for n in sig.names))

    @property
    def interp(self) -> dict[str, frozenset]:
        return dict(zip(self.sig.names, self.relations))

    def relabel(self, perm: Sequence[int]) -> "FiniteStructure":
        """Image of the structure under the universe permutation ``i -> perm[i]``."""
        if sorted(perm) != list(range(self.size)):
            raise ValueError("not a permutation of the universe")
        rels = tuple(frozenset(tuple(perm[x] for x in t) for t in rel) for rel in self.relations)
        return FiniteStructure(self.sig, self.size, rels)

    @cached_property
    def fact_index(self) -> dict[tuple, tuple[int, ...]]:
        """Element tuple -> indices of the symbols holding of it."""
        index: dict[tuple, list[int]] = {}
        for s, rel in enumerate(self.relations):
            for t in rel:
                index.setdefault(t, []).append(s)
        return {t: tuple(v) for t, v in index.items()}


def _check_same_sig(structures: Sequence[FiniteStructure]) -> Signature:
    if not structures:
        raise ValueError("need at least one structure")
    sig = structures[0].sig
    for m in structures[1:]:
        if m.sig != sig:
            raise SignatureMismatch("structures over different signatures")
    return sig


# ---------------------------------------------------------------------------
# refinement


class _TupleSpace:
    """All injective tuples of length <= max_len, stored as a prefix tree."""

    def __init__(self, m: FiniteStructure, max_len: int):
        self.tuples: list[tuple[int, ...]] = [()]
        self.parent: list[int] = [-1]
        self.children: list[list[int]] = [[]]
        frontier = [0]
        for _ in range(max_len):
            nxt = []
            for t in frontier:
                elems = self.tuples[t]
                for b in range(m.size):
                    if b in elems:
                        continue
                    idx = len(self.tuples)
                    self.tuples.append(elems + (b,))
                    self.parent.append(t)
                    self.children.append([])
                    self.children[t].append(idx)
                    nxt.append(idx)
            frontier = nxt


def _new_positions(k: int, arities: Iterable[int]) -> dict[int, list[tuple[int, ...]]]:
    """Position tuples over ``range(k)`` that mention the last position ``k-1``."""
    out = {}
    for a in set(arities):
        out[a] = [p for p in itertools.product(range(k), repeat=a) if k - 1 in p]
    return out


@dataclass
class RefinementTrace:
    """Stage-wise partitions of injective tuples, shared across structures.

    ``stages[a][s][i]`` is the stage-``a`` type id of ``tuples[s][i]``.  The
    trace stops one stage past the fixpoint, so ``stages[fixpoint_stage + 1]``
    induces the same partition as ``stages[fixpoint_stage]``.
    """

    max_len: int
    tuples: list[list[tuple[int, ...]]]
    stages: list[list[list[int]]]
    fixpoint_stage: int
    atom_facts: list[tuple] = field(repr=False, default_factory=list)
    _spaces: list = field(repr=False, default_factory=list)

    def type_of(self, s: int, tup: Sequence[int], stage: Optional[int] = None) -> int:
        if stage is None:
            stage = self.fixpoint_stage
        i = self._lookup(s)[tuple(tup)]
        return self.stages[stage][s][i]

    def partition(self, stage: int, s: int) -> dict[tuple[int, ...], int]:
        return dict(zip(self.tuples[s], self.stages[stage][s]))

    def _lookup(self, s: int) -> dict:
        cache = self.__dict__.setdefault("_lookup_cache", {})
        if s not in cache:
            cache[s] = {t: i for i, t in enumerate(self.tuples[s])}
        return cache[s]


def joint_refine(structures: Sequence[FiniteStructure], max_len: int) -> RefinementTrace:
    sig = _check_same_sig(structures)
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    max_len = min(max_len, max(m.size for m in structures))
    spaces = [_TupleSpace(m, min(max_len, m.size)) for m in structures]
    arities = [a for _, a in sig.symbols]
    positions = {k: _new_positions(k, arities) for k in range(1, max_len + 1)}

    # stage 0: atomic diagrams, built incrementally along the prefix tree
    atom_ids: dict[tuple, int] = {}
    atom_facts: list[tuple] = []
    stage0 = []
    for m, sp in zip(structures, spaces):
        index = m.fact_index
        ids = [0] * len(sp.tuples)
        for i, tup in enumerate(sp.tuples):
            if i == 0:
                key = (-1, ())
            else:
                facts = []
                for a, plist in positions[len(tup)].items():
                    for p in plist:
                        hit = index.get(tuple(tup[j] for j in p))
                        if hit:
                            for s in hit:
                                if arities[s] == a:
                                    facts.append((s, p))
                key = (ids[sp.parent[i]], tuple(sorted(facts)))
            if key not in atom_ids:
                atom_ids[key] = len(atom_facts)
                atom_facts.append(key)
            ids[i] = atom_ids[key]
        stage0.append(ids)

    stages = [stage0]
    counts = [len(atom_ids)]
    fixpoint = None
    while fixpoint is None:
        prev = stages[-1]
        table: dict[tuple, int] = {}
        cur = []
        for sp, ids in zip(spaces, prev):
            new = [0] * len(ids)
            for i, kids in enumerate(sp.children):
                key = (ids[i], tuple(sorted({ids[c] for c in kids})))
                new[i] = table.setdefault(key, len(table))
            cur.append(new)
        stages.append(cur)
        counts.append(len(table))
        if counts[-1] == counts[-2]:
            fixpoint = len(stages) - 2
    return RefinementTrace(
        max_len=max_len,
        tuples=[sp.tuples for sp in spaces],
        stages=stages,
        fixpoint_stage=fixpoint,
        atom_facts=atom_facts,
        _spaces=spaces,
    )


# ---------------------------------------------------------------------------
# Scott sentences

ATOMS, AND, OR, EXISTS, FORALL, IMPLIES, EQ = range(7)
_SET_KINDS = (AND, OR)


_SMALL = [bytes([i]) for i in range(128)]


def _varint(n: int) -> bytes:
    if n < 128:
        return _SMALL[n]
    out = bytearray()
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)


_TABLE = [_varint(i) for i in range(1 << 14)]  # every one- and two-byte varint


def _varints(ns) -> bytes:
    if not ns:
        return b""
    top = max(ns)
    if top < 128:  # a one-byte varint is the byte itself
        return bytes(ns)
    if top < 1 << 14:
        return b"".join([_TABLE[n] for n in ns])
    return b"".join(map(_varint, ns))


class _Dag:
    """Hash-consed formula DAG; set-valued nodes ignore order and multiplicity."""

    def __init__(self):
        self.ids: dict[tuple, int] = {}
        self.nodes: list[tuple] = []
        self.height: list[int] = []
        self.head: list[bytes] = []  # kind byte and payload, encoded once
        self._heads: dict[tuple, bytes] = {}

    def node(self, kind: int, payload: tuple, children: Iterable[int]) -> int:
        kids = frozenset(children) if kind in _SET_KINDS else tuple(children)
        key = (kind, payload, kids)
        nid = self.ids.get(key)
        if nid is not None:
            return nid
        nid = self.ids[key] = len(self.nodes)
        self.nodes.append(key)
        height = self.height
        height.append(1 + max([height[c] for c in kids]) if kids else 0)
        if kind == ATOMS:  # the only nested payload, and never repeated
            self.head.append(bytes((ATOMS,)) + _varints(_flatten_atoms(payload)))
        else:
            hk = (kind, payload)
            h = self._heads.get(hk)
            if h is None:
                h = self._heads[hk] = bytes((kind,)) + _varints(payload)
            self.head.append(h)
        return nid

    def serialize(self, root: int, header: bytes) -> bytes:
        levels: dict[int, list[int]] = {}
        for n, h in enumerate(self.height):
            levels.setdefault(h, []).append(n)
        nodes, head = self.nodes, self.head
        canon = [0] * len(nodes)
        blobs: list[bytes] = []
        for h in sorted(levels):
            level = []
            for n in levels[h]:
                kind, _, kids = nodes[n]
                if kids:
                    refs = [canon[c] for c in kids]
                    if kind in _SET_KINDS:
                        refs.sort()
                    level.append((head[n] + _varint(len(refs)) + _varints(refs), n))
                else:
                    level.append((head[n] + b"\x00", n))
            # hash-consing makes blobs within a level distinct, so n never decides
            level.sort()
            for blob, n in level:
                canon[n] = len(blobs)
                blobs.append(blob)
        if canon[root] != len(blobs) - 1:
            raise AssertionError("root must be the unique highest node")
        parts = [b"CSS1", header, _varint(len(blobs))]
        for blob in blobs:
            parts.append(_varint(len(blob)))
            parts.append(blob)
        return b"".join(parts)


def _flatten_atoms(payload) -> list[int]:
    """``(k, ((s, p), ...))`` as ``k, #facts`` then ``2, s, len(p), *p`` per fact."""
    k, facts = payload
    out = [k, len(facts)]
    for s, p in facts:
        out += (2, s, len(p))
        out += p
    return out


@dataclass(frozen=True)
class ScottSentence:
    """Canonical bytes of css(M); equality of bytes is equality of sentences."""

    data: bytes

    def hex(self) -> str:
        return self.data.hex()

    @classmethod
    def fromhex(cls, s: str) -> "ScottSentence":
        return cls(bytes.fromhex(s))

    def __len__(self):
        return len(self.data)


def _sig_header(sig: Signature) -> bytes:
    out = bytearray(_varint(len(sig)))
    for name, arity in sig.symbols:
        raw = name.encode()
        out += _varint(len(raw)) + raw + _varint(arity)
    return bytes(out)


def scott_sentence(m: FiniteStructure) -> ScottSentence:
    """css(M) = phi^{()}_{a*} AND, for every tuple type, forall x [phi_{a*} -> phi_{a*+1}].

    Atom sets list the true atomic facts over ``x_0..x_{k-1}``; the false ones
    are implied by the signature header.  Injectivity of tuples fixes all
    equalities, and the universal disjunct carries explicit ``y = x_i``
    alternatives for the repeated one-point extensions.
    """
    trace = joint_refine([m], m.size)
    sp = trace._spaces[0]
    tuples = sp.tuples
    stages = [st[0] for st in trace.stages]
    top = trace.fixpoint_stage
    dag = _Dag()
    memo: dict[tuple[int, int], int] = {}
    facts_memo: dict[int, tuple] = {}

    def facts_of(atom_id: int) -> tuple:
        if atom_id not in facts_memo:
            parent, facts = trace.atom_facts[atom_id]
            base = facts_of(parent) if parent >= 0 else ()
            facts_memo[atom_id] = tuple(sorted(base + facts))
        return facts_memo[atom_id]

    exists_memo: dict[tuple[int, int], int] = {}
    eq_memo: dict[int, list[int]] = {}

    def exists(k: int, e: int) -> int:
        nid = exists_memo.get((k, e))
        if nid is None:
            nid = exists_memo[k, e] = dag.node(EXISTS, (k,), [e])
        return nid

    def equalities(k: int) -> list[int]:
        if k not in eq_memo:
            eq_memo[k] = [dag.node(EQ, (k, j), ()) for j in range(k)]
        return eq_memo[k]

    def phi(stage: int, i: int) -> int:
        key = (stage, stages[stage][i])
        nid = memo.get(key)
        if nid is not None:
            return nid
        k = len(tuples[i])
        if stage == 0:
            nid = dag.node(ATOMS, (k, facts_of(stages[0][i])), ())
        else:
            prev = phi(stage - 1, i)
            # one child per type suffices: AND and OR are set-valued
            below = stages[stage - 1]
            firsts = {}
            for c in sp.children[i]:
                firsts.setdefault(below[c], c)
            exts = [phi(stage - 1, c) for c in firsts.values()]
            ex = dag.node(AND, (), [exists(k, e) for e in exts])
            fa = dag.node(FORALL, (k, 1), [dag.node(OR, (), equalities(k) + exts)])
            nid = dag.node(AND, (), [prev, ex, fa])
        memo[key] = nid
        return nid

    reps: dict[int, int] = {}
    for i, t in enumerate(stages[top]):
        reps.setdefault(t, i)
    clauses = []
    for i in reps.values():
        k = len(tuples[i])
        body = dag.node(IMPLIES, (), [phi(top, i), phi(top + 1, i)])
        clauses.append(dag.node(FORALL, (0, k), [body]) if k else body)
    root = dag.node(AND, (), [phi(top, 0), dag.node(AND, (), clauses)])
    return ScottSentence(dag.serialize(root, _sig_header(m.sig)))


def css_equal(m: FiniteStructure, n: FiniteStructure) -> bool:
    _check_same_sig([m, n])
    return scott_sentence(m) == scott_sentence(n)


# ---------------------------------------------------------------------------
# brute-force isomorphism oracle


@dataclass(frozen=True)
class Bijection:
    mapping: tuple[int, ...]

    def verify(self, m: FiniteStructure, n: FiniteStructure) -> bool:
        if m.size != n.size or sorted(self.mapping) != list(range(n.size)):
            return False
        return m.relabel(self.mapping) == n


def oracle_bound() -> int:
    return int(os.environ.get("SCOTT_ORACLE_BOUND", DEFAULT_ORACLE_BOUND))


def _element_profile(m: FiniteStructure) -> list[tuple]:
    prof = [[0] * (len(m.sig) * 8) for _ in range(m.size)]
    for s, rel in enumerate(m.relations):
        for t in rel:
            for pos, x in enumerate(t[:8]):
                prof[x][s * 8 + pos] += 1
    return [tuple(p) for p in prof]


def brute_force_iso(m: FiniteStructure, n: FiniteStructure, bound: Optional[int] = None) -> Optional[Bijection]:
    """Backtracking search for a relation-preserving bijection M -> N."""
    _check_same_sig([m, n])
    if m.size != n.size:
        return None
    bound = oracle_bound() if bound is None else bound
    if m.size > bound:
        raise OracleBoundExceeded(f"universe size {m.size} exceeds oracle bound {bound}")
    if any(len(a) != len(b) for a, b in zip(m.relations, n.relations)):
        return None
    size = m.size
    pm, pn = _element_profile(m), _element_profile(n)
    if sorted(pm) != sorted(pn):
        return None
    # tuples of M grouped by their largest element, checked once it is placed
    closing: list[list[tuple[int, tuple]]] = [[] for _ in range(size)]
    for s, rel in enumerate(m.relations):
        for t in rel:
            closing[max(t)].append((s, t))
    image = [-1] * size
    used = [False] * size

    def extend(i: int) -> bool:
        if i == size:
            return True
        for y in range(size):
            if used[y] or pn[y] != pm[i]:
                continue
            image[i] = y
            if all(tuple(image[x] for x in t) in n.relations[s] for s, t in closing[i]):
                used[y] = True
                if extend(i + 1):
                    return True
                used[y] = False
        image[i] = -1
        return False

    if extend(0):
        return Bijection(tuple(image))
    return None


# ---------------------------------------------------------------------------
# Ehrenfeucht-Fraisse games


@functools.lru_cache(maxsize=None)
def _new_patterns(k: int, arity: int) -> tuple[tuple[int, ...], ...]:
    """Index tuples over ``0..k-1`` that mention the newest position ``k-1``."""
    return tuple(p for p in itertools.product(range(k), repeat=arity) if k - 1 in p)


def _extends_partial_iso(m: FiniteStructure, n: FiniteStructure, pairs: tuple, a: int, b: int) -> bool:
    dom = [p[0] for p in pairs] + [a]
    rng = [p[1] for p in pairs] + [b]
    k = len(dom)
    for (_, arity), rm, rn in zip(m.sig.symbols, m.relations, n.relations):
        for p in _new_patterns(k, arity):
            if (tuple([dom[j] for j in p]) in rm) != (tuple([rng[j] for j in p]) in rn):
                return False
    return True


def ef_equiv(m: FiniteStructure, n: FiniteStructure, rounds: int) -> bool:
    """Does the duplicator survive ``rounds`` rounds of the EF game on (M, N)?

    Replaying an already pebbled element never helps the spoiler, so positions
    are partial injections, memoized as sorted pair tuples.
    """
    _check_same_sig([m, n])
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    memo: dict[tuple, bool] = {}

    def duplicator_wins(pairs: tuple, r: int) -> bool:
        if r == 0:
            return True
        key = (pairs, r)
        if key in memo:
            return memo[key]
        dom = {p[0] for p in pairs}
        rng = {p[1] for p in pairs}
        free_m = [x for x in range(m.size) if x not in dom]
        free_n = [y for y in range(n.size) if y not in rng]
        result = True
        for a in free_m:
            if not any(
                _extends_partial_iso(m, n, pairs, a, b) and duplicator_wins(tuple(sorted(pairs + ((a, b),))), r - 1)
                for b in free_n
            ):
                result = False
                break
        if result:
            for b in free_n:
                if not any(
                    _extends_partial_iso(m, n, pairs, a, b) and duplicator_wins(tuple(sorted(pairs + ((a, b),))), r - 1)
                    for a in free_m
                ):
                    result = False
                    break
        memo[key] = result
        return result

    return duplicator_wins((), rounds)
