"""Jump and product combinators on invariants, and the T_alpha ladder.

An invariant of ``J(Phi)`` is the set of (class invariant, multiplicity)
pairs with multiplicities capped at OMEGA; a product invariant is the
position-significant sequence of component invariants.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from . import extnat
from .core import FiniteStructure, Signature
from .extnat import OMEGA, ExtNat

INT64_MAX = 2**63 - 1


class CountOverflow(ArithmeticError):
    pass


@dataclass(frozen=True)
class Cap:
    threshold: int

    def __post_init__(self):
        if self.threshold < 1:
            raise ValueError("cap threshold must be positive")

    def __call__(self, n: int) -> ExtNat:
        return extnat.cap(n, self.threshold)


@dataclass(frozen=True)
class Base:
    value: ExtNat


@dataclass(frozen=True)
class Jump:
    entries: tuple[tuple["NestedInvariant", ExtNat], ...]

    def __post_init__(self):
        entries = tuple(sorted(self.entries, key=lambda e: canonical_key(e[0])))
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("a jump invariant has at least one class")
        if len({e[0] for e in entries}) != len(entries):
            raise ValueError("jump entries must be distinct invariants")
        for _, m in entries:
            if not extnat.is_extnat(m) or m == 0:
                raise ValueError(f"bad multiplicity {m!r}")


@dataclass(frozen=True)
class Prod:
    components: tuple["NestedInvariant", ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ValueError("a product has at least one component")


NestedInvariant = Union[Base, Jump, Prod]


def to_json(inv: NestedInvariant):
    if isinstance(inv, Base):
        return {"base": extnat.to_json(inv.value)}
    if isinstance(inv, Jump):
        return {"jump": [[to_json(c), extnat.to_json(m)] for c, m in inv.entries]}
    return {"prod": [to_json(c) for c in inv.components]}


def from_json(obj) -> NestedInvariant:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError(f"not an invariant: {obj!r}")
    (tag, body), = obj.items()
    if tag == "base":
        return Base(extnat.from_json(body))
    if tag == "jump":
        return Jump(tuple((from_json(c), extnat.from_json(m)) for c, m in body))
    if tag == "prod":
        return Prod(tuple(from_json(c) for c in body))
    raise ValueError(f"unknown invariant tag {tag!r}")


def canonical_key(inv: NestedInvariant) -> str:
    return json.dumps(to_json(inv), sort_keys=True, separators=(",", ":"))


def t0_invariant(chains: int, cap: Cap) -> Base:
    """A model of Th(Z, S) is classified by its number of chains."""
    if chains < 1:
        raise ValueError("models of T0 have at least one chain")
    return Base(cap(chains))


def jump_invariant(items: Sequence[NestedInvariant], cap: Cap) -> Jump:
    if not items:
        raise ValueError("jump of an empty sequence")
    counts = Counter(items)
    return Jump(tuple((inv, cap(n)) for inv, n in counts.items()))


def product_invariant(components: Sequence[NestedInvariant]) -> Prod:
    return Prod(tuple(components))


# ---------------------------------------------------------------------------
# assembly into finite structures


def _collect_symbols(inv: NestedInvariant, jump_level: int, prod_depth: int, out: set):
    if isinstance(inv, Jump):
        out.add(f"E{jump_level + 1}")
        for child, _ in inv.entries:
            _collect_symbols(child, jump_level + 1, 0, out)
    elif isinstance(inv, Prod):
        for i, comp in enumerate(inv.components):
            out.add(f"U{jump_level}.{prod_depth}_{i}")
            _collect_symbols(comp, jump_level, prod_depth + 1, out)


def assembly_signature(invs: Iterable[NestedInvariant]) -> Signature:
    """``S`` for the cycles, ``E{k}`` per jump level, ``U{level}.{depth}_{i}`` per product slot."""
    names: set = set()
    for inv in invs:
        _collect_symbols(inv, 0, 0, names)
    es = sorted((n for n in names if n.startswith("E")), key=lambda n: int(n[1:]))
    us = sorted(n for n in names if n.startswith("U"))
    return Signature((("S", 2),) + tuple((n, 2) for n in es) + tuple((n, 1) for n in us))


def assemble(inv: NestedInvariant, cycle_len: int, sig: Optional[Signature] = None) -> FiniteStructure:
    """Chains become directed ``cycle_len``-cycles; jump classes are blocks of
    an equivalence relation; product components are marked by unary predicates.
    Relations never cross a class or a component."""
    if cycle_len < 3:
        raise ValueError("cycle_len must be >= 3")
    sig = sig or assembly_signature([inv])
    rels: dict[str, list] = defaultdict(list)
    size = 0

    def build(node: NestedInvariant, jump_level: int, prod_depth: int) -> list[int]:
        nonlocal size
        if isinstance(node, Base):
            if node.value is OMEGA or node.value < 1:
                raise ValueError(f"cannot materialize base value {node.value!r}")
            elems = []
            for _ in range(node.value):
                cyc = list(range(size, size + cycle_len))
                size += cycle_len
                rels["S"].extend((cyc[i], cyc[(i + 1) % cycle_len]) for i in range(cycle_len))
                elems.extend(cyc)
            return elems
        if isinstance(node, Jump):
            elems = []
            for child, m in node.entries:
                if m is OMEGA:
                    raise ValueError("cannot materialize an OMEGA multiplicity")
                for _ in range(m):
                    block = build(child, jump_level + 1, 0)
                    rels[f"E{jump_level + 1}"].extend(itertools.product(block, repeat=2))
                    elems.extend(block)
            return elems
        elems = []
        for i, comp in enumerate(node.components):
            block = build(comp, jump_level, prod_depth + 1)
            rels[f"U{jump_level}.{prod_depth}_{i}"].extend((x,) for x in block)
            elems.extend(block)
        return elems

    build(inv, 0, 0)
    return FiniteStructure.build(sig, size, rels)


def assembly_size(inv: NestedInvariant, cycle_len: int) -> int:
    if isinstance(inv, Base):
        return inv.value * cycle_len
    if isinstance(inv, Jump):
        return sum(m * assembly_size(c, cycle_len) for c, m in inv.entries)
    return sum(assembly_size(c, cycle_len) for c in inv.components)


# ---------------------------------------------------------------------------
# counting


def count_level(k: int, base_count: int, cap: Cap) -> int:
    """Distinct level-``k`` invariants: ``b`` at level 0, then ``(Omega+1)^prev - 1``.

    Each earlier invariant is absent or present with multiplicity
    ``1..Omega-1`` or OMEGA, and at least one is present.
    """
    if k < 0 or base_count < 1 or cap.threshold < 2:
        raise ValueError("need k >= 0, base_count >= 1 and cap >= 2")
    count = base_count
    for _ in range(k):
        # Omega+1 >= 3, so any count >= 64 already overflows; skip the huge power
        if count >= 64:
            raise CountOverflow(f"level count exceeds {INT64_MAX}")
        count = (cap.threshold + 1) ** count - 1
        if count > INT64_MAX:
            raise CountOverflow(f"level count exceeds {INT64_MAX}")
    return count


def base_invariants(base_count: int) -> list[Base]:
    return [Base(i) for i in range(1, base_count + 1)]


def enumerate_level(k: int, base_count: int, cap: Cap, limit: int = 200_000) -> set:
    """All level-``k`` invariants, by feeding every item multiset to the jump."""
    level = set(base_invariants(base_count))
    for _ in range(k):
        prev = sorted(level, key=canonical_key)
        if (cap.threshold + 1) ** len(prev) > limit:
            raise CountOverflow(f"enumeration of {(cap.threshold + 1) ** len(prev)} multisets refused")
        nxt = set()
        for counts in itertools.product(range(cap.threshold + 1), repeat=len(prev)):
            items = [inv for inv, n in zip(prev, counts) for _ in range(n)]
            if items:
                nxt.add(jump_invariant(items, cap))
        level = nxt
    return level



def chain_count(inv: NestedInvariant) -> int:
    """Number of T0 chains in the assembly of ``inv``."""
    return assembly_size(inv, 1)


def bounded_invariants(depth: int, max_value: int, max_chains: int, max_prod_len: int = 2) -> list:
    """Every finite invariant of nesting depth <= ``depth`` whose base values and
    multiplicities are <= ``max_value`` and whose assembly has <= ``max_chains`` chains.

    The full depth-2 family is astronomically large, so the chain budget keeps
    the list to what the core engine can decide.
    """
    level = {Base(v) for v in range(1, min(max_value, max_chains) + 1)}
    for _ in range(depth):
        prev = sorted(level, key=canonical_key)
        new = set(prev)

        def jumps(i: int, budget: int, acc: tuple):
            if i == len(prev):
                if acc:
                    new.add(Jump(acc))
                return
            jumps(i + 1, budget, acc)
            c = chain_count(prev[i])
            for m in range(1, max_value + 1):
                if m * c > budget:
                    break
                jumps(i + 1, budget - m * c, acc + ((prev[i], m),))

        def prods(budget: int, acc: tuple):
            if acc:
                new.add(Prod(acc))
            if len(acc) == max_prod_len:
                return
            for inv in prev:
                if chain_count(inv) <= budget:
                    prods(budget - chain_count(inv), acc + (inv,))

        jumps(0, max_chains, ())
        prods(max_chains, ())
        level = new
    return sorted(level, key=canonical_key)
