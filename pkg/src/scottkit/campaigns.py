"""Seeded verification campaigns: every module checked against its oracle.

A campaign runs a stream of cases.  Each case is a named check applied to a
payload; a failing payload is shrunk greedily and reported together with a
``scottkit replay`` command that re-runs just that check.  All randomness comes
from ``random.Random(f"{suite}:{seed}")`` (Mersenne Twister, string seeding),
so reports are identical across runs and platforms apart from ``wall_time``.
"""

from __future__ import annotations

import functools
import itertools
import json
import random
import shlex
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from . import combinators as comb
from . import grpact as grp
from . import jsonio
from . import orbit as orb
from . import ref
from .core import FiniteStructure, Signature, brute_force_iso, ef_equiv, scott_sentence
from .extnat import OMEGA

SUITES = (
    "core-oracle",
    "ref-inject",
    "ref-tree",
    "ref-roundtrip",
    "grp-rigidity",
    "grp-reduction",
    "grp-k-coding",
    "orbit-main",
    "comb-growth",
)


class UnknownSuite(ValueError):
    pass


@dataclass(frozen=True)
class CampaignConfig:
    """Scale knobs shared by every suite; the budget only sets sampled counts."""

    random_sizes: tuple[int, ...] = (4, 5)
    grp_per_block: int = 2
    grp_depth: int = 6
    witness_samples: int = 100
    sampled_v4_graphs: int = 20
    assembly_depth: int = 2
    assembly_max_value: int = 2
    # 9-element assemblies cost ~15 s each in the Scott engine
    assembly_max_chains: int = 2
    enumeration_limit: int = 200_000


CONFIG = CampaignConfig()


@dataclass
class Check:
    run: Callable[[Any], Optional[str]]  # failure message or None
    encode: Callable[[Any], Any]
    decode: Callable[[Any], Any]
    shrink: Callable[[Any], Iterable[Any]] = lambda obj: ()


@dataclass
class Report:
    suite: str
    seed: int
    budget: int
    cases: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    suites: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self, with_time: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "budget": self.budget,
            "cases": self.cases,
            "failures": self.failures,
            "notes": self.notes,
        }
        if self.suites:
            out["suites"] = [r.to_json(with_time) for r in self.suites]
        if with_time:
            out["wall_time"] = round(self.wall_time, 3)
        return out


class Campaign:
    def __init__(self, suite: str, seed: int, budget: int):
        self.report = Report(suite, seed, budget)
        self.rng = random.Random(f"{suite}:{seed}")

    def case(self, kind: str, obj) -> bool:
        self.report.cases += 1
        check = CHECKS[kind]
        msg = _run(check, obj)
        if msg is None:
            return True
        obj, msg = _shrink(check, obj, msg)
        payload = {"kind": kind, "input": check.encode(obj)}
        self.report.failures.append(
            {
                "case": self.report.cases - 1,
                "kind": kind,
                "message": msg,
                "input": payload["input"],
                "repro": "scottkit replay " + shlex.quote(jsonio.dumps(payload)),
            }
        )
        return False


def _run(check: Check, obj) -> Optional[str]:
    try:
        return check.run(obj)
    except Exception as e:  # an exception is a failed case, not a crashed campaign
        return f"{type(e).__name__}: {e}"


def _shrink(check: Check, obj, msg: str, max_steps: int = 200):
    """Greedy: take the first smaller candidate that still fails, until none does."""
    for _ in range(max_steps):
        for cand in check.shrink(obj):
            m = _run(check, cand)
            if m is not None:
                obj, msg = cand, m
                break
        else:
            break
    return obj, msg


def replay(payload: dict) -> Optional[str]:
    kind = payload.get("kind")
    if kind not in CHECKS:
        raise ValueError(f"unknown check kind {kind!r}")
    check = CHECKS[kind]
    return _run(check, check.decode(payload["input"]))


# ---------------------------------------------------------------------------
# core-oracle

EDGE_SIG = Signature.of(("E", 2))


@functools.lru_cache(maxsize=None)
def _css(m: FiniteStructure):
    return scott_sentence(m)


def all_binary_structures(max_size: int) -> list[FiniteStructure]:
    out = []
    for n in range(1, max_size + 1):
        pairs = list(itertools.product(range(n), repeat=2))
        for bits in range(2 ** len(pairs)):
            rel = [p for i, p in enumerate(pairs) if bits >> i & 1]
            out.append(FiniteStructure.build(EDGE_SIG, n, {"E": rel}))
    return out


def _check_iso_triple(obj) -> Optional[str]:
    a, b, rounds = obj
    css = _css(a) == _css(b)
    iso = brute_force_iso(a, b)
    if iso is not None and not iso.verify(a, b):
        return "brute_force_iso returned a non-isomorphism"
    ef = ef_equiv(a, b, rounds)
    if not css == (iso is not None) == ef:
        return f"css_equal={css} iso={iso is not None} ef_equiv({rounds})={ef}"
    return None


def _shrink_iso_triple(obj):
    a, b, rounds = obj
    for which in (0, 1):
        m = (a, b)[which]
        for s, rel in enumerate(m.relations):
            for t in sorted(rel):
                rels = list(m.relations)
                rels[s] = rel - {t}
                smaller = FiniteStructure(m.sig, m.size, tuple(rels))
                yield (smaller, b, rounds) if which == 0 else (a, smaller, rounds)


def _check_digraph_count(n: int) -> Optional[str]:
    """Labeled loopless digraphs on 3 points: 16 sentences and 16 iso classes."""
    pairs = [(i, j) for i in range(3) for j in range(3) if i != j]
    graphs = [
        FiniteStructure.build(EDGE_SIG, 3, {"E": [p for i, p in enumerate(pairs) if bits >> i & 1]})
        for bits in range(64)
    ]
    sentences = {_css(g) for g in graphs}
    classes: list[FiniteStructure] = []
    for g in graphs:
        if not any(brute_force_iso(g, h) for h in classes):
            classes.append(g)
    if len(sentences) != n or len(classes) != n:
        return f"{len(sentences)} sentences, {len(classes)} iso classes, expected {n}"
    return None


def random_structure(rng: random.Random, n: int) -> FiniteStructure:
    density = rng.choice((0.2, 0.35, 0.5, 0.65))
    rel = [p for p in itertools.product(range(n), repeat=2) if rng.random() < density]
    return FiniteStructure.build(EDGE_SIG, n, {"E": rel})


def random_pair(rng: random.Random) -> tuple[FiniteStructure, FiniteStructure]:
    n = rng.choice(CONFIG.random_sizes)
    a = random_structure(rng, n)
    mode = rng.randrange(3)
    perm = list(range(n))
    rng.shuffle(perm)
    if mode == 0:  # relabeled copy
        return a, a.relabel(perm)
    if mode == 1:  # relabeled copy with one tuple flipped
        b = a.relabel(perm)
        t = (rng.randrange(n), rng.randrange(n))
        rel = b.relations[0] ^ {t}
        return a, FiniteStructure(EDGE_SIG, n, (rel,))
    return a, random_structure(rng, n)


def suite_core_oracle(c: Campaign):
    structs = all_binary_structures(3)
    for i, a in enumerate(structs):
        for b in structs[i:]:
            c.case("iso-triple", (a, b, max(a.size, b.size)))
    c.case("digraph-count", 16)
    for _ in range(max(c.report.budget, 0)):
        a, b = random_pair(c.rng)
        c.case("iso-triple", (a, b, a.size))
    c.report.notes["exhaustive_structures"] = len(structs)
    c.report.notes["random_pairs"] = c.report.budget


# ---------------------------------------------------------------------------
# ref suites


def _subsets(items: list, max_size: int) -> list[frozenset]:
    return [frozenset(s) for k in range(max_size + 1) for s in itertools.combinations(items, k)]


def _check_ref_inject(obj) -> Optional[str]:
    i, j, d = obj
    p, q = ref.encode_set_refbin(i, d), ref.encode_set_refbin(j, d)
    if i != j and ref.presentations_equiv(p, q):
        return "distinct sets have equivalent encodings"
    if i == j and not ref.presentations_equiv(p, q):
        return "equal sets have inequivalent encodings"
    return None


def _shrink_set_pair(obj):
    i, j, d = obj
    for x in sorted(i):
        yield (i - {x}, j, d)
    for x in sorted(j):
        yield (i, j - {x}, d)


def _check_ref_decode(obj) -> Optional[str]:
    subset, d, perms = obj
    p = ref.encode_set_refbin(subset, d)
    if ref.decode_set_refbin(p) != subset:
        return "decode(encode(I)) != I"
    moved = ref.apply_automorphism(p, perms)
    if ref.decode_set_refbin(moved) != subset:
        return "decode of an automorphic image differs"
    return None


def suite_ref_inject(c: Campaign):
    d = 3
    strings = ["".join(p) for p in itertools.product("01", repeat=d)]
    sets = _subsets(strings, 3)
    for a, b in itertools.combinations(sets, 2):
        c.case("ref-inject", (a, b, d))
    for s in sets:
        p = ref.encode_set_refbin(s, d)
        c.case("ref-decode", (s, d, ref.random_automorphism(p, c.rng)))
    c.report.notes["sets"] = len(sets)


def all_trees(width: int, max_len: int) -> list[frozenset]:
    """Every labeled tree (prefix-closed, containing the root) with nodes of length <= max_len."""
    nodes = [
        "".join(p)
        for k in range(max_len + 1)
        for p in itertools.product("0123456789"[:width], repeat=k)
    ]
    out = []
    for bits in range(2 ** len(nodes)):
        t = frozenset(s for i, s in enumerate(nodes) if bits >> i & 1)
        if "" in t and all(s[:-1] in t for s in t if s):
            out.append(t)
    return out


def _check_ref_tree(obj) -> Optional[str]:
    tree, d, w = obj
    got = ref.tree_invariant(ref.encode_tree_refinf(tree, d, w))
    want = ref.canonical_tree(tree, w)
    if got != want:
        return f"Tr(M_S) = {sorted(got)} but canonical form is {sorted(want)}"
    return None


def _check_ref_tree_pair(obj) -> Optional[str]:
    s, t, d, w = obj
    same = ref.canonical_tree(s, w) == ref.canonical_tree(t, w)
    equiv = ref.presentations_equiv(ref.encode_tree_refinf(s, d, w), ref.encode_tree_refinf(t, d, w))
    if same != equiv:
        return f"trees isomorphic={same} but encodings equivalent={equiv}"
    return None


def _shrink_tree(obj):
    tree, d, w = obj
    for leaf in sorted(s for s in tree if not any(t != s and t.startswith(s) for t in tree)):
        yield (tree - {leaf}, d, w)


def suite_ref_tree(c: Campaign):
    w, d = 2, 4
    trees = all_trees(w, 2)
    for t in trees:
        c.case("ref-tree", (t, d, w))
    for s, t in itertools.combinations(trees, 2):
        c.case("ref-tree-pair", (s, t, d, w))
    c.report.notes["trees"] = len(trees)


_COLOR_POOL = (1, 2, 3, OMEGA)


def random_bin_presentation(rng: random.Random, depth: int) -> ref.RefPresentation:
    palette = rng.sample(_COLOR_POOL, rng.randint(1, len(_COLOR_POOL)))
    return ref.RefPresentation(ref.BIN, 2, depth, tuple(rng.choice(palette) for _ in range(2**depth)))


def _check_ref_roundtrip(obj) -> Optional[str]:
    p, perms = obj
    d = ref.compute_data(p)
    if ref.compute_data(ref.apply_automorphism(p, perms)) != d:
        return "data changed under an ambient automorphism"
    u = ref.unpack_data(d)
    if not ref.presentations_equiv(u, p):
        return "unpack(compute(p)) is not equivalent to p"
    if ref.compute_data(u) != d:
        return "compute(unpack(D)) != D"
    return None


def _check_ref_equiv_oracle(obj) -> Optional[str]:
    p, q = obj
    fast = ref.presentations_equiv(p, q)
    slow = ref.find_automorphism(p, q) is not None
    if fast != slow:
        return f"presentations_equiv={fast} but automorphism search found one={slow}"
    return None


def _shrink_presentation(obj):
    p, perms = obj
    for i, col in enumerate(p.colors):
        if col != 1:
            colors = list(p.colors)
            colors[i] = 1
            yield (ref.RefPresentation(p.variant, p.width, p.depth, tuple(colors)), perms)
    if perms:
        yield (p, {})


def suite_ref_roundtrip(c: Campaign):
    n = max(c.report.budget, 200)
    for _ in range(n):
        p = random_bin_presentation(c.rng, c.rng.randint(1, 4))
        c.case("ref-roundtrip", (p, ref.random_automorphism(p, c.rng)))
        # an equivalent or near-miss partner for the independent oracle
        depth = min(p.depth, 3)
        a = random_bin_presentation(c.rng, depth)
        b = ref.apply_automorphism(a, ref.random_automorphism(a, c.rng))
        if c.rng.random() < 0.5:
            k = c.rng.randrange(len(b.colors))
            colors = list(b.colors)
            colors[k] = c.rng.choice(_COLOR_POOL)
            b = ref.RefPresentation(b.variant, b.width, b.depth, tuple(colors))
        c.case("ref-equiv-oracle", (a, b))
    c.report.notes["presentations"] = n


# ---------------------------------------------------------------------------
# grpact suites


def _check_rigidity(obj) -> Optional[str]:
    kind, d, tuple_len, expected = obj
    got = grp.find_rigidity_counterexample(kind, d, tuple_len)
    got = None if got is None else [list(x) for x in got]
    if got != expected:
        return f"{kind}(d={d}, len={tuple_len}): found {got}, expected {expected}"
    return None


def suite_grp_rigidity(c: Campaign):
    for d in (1, 2, 3):
        for n in (1, 2):
            c.case("rigidity", ("xor", d, n, None))
    expected = [["00"], ["10"], ["11"]]
    c.case("rigidity", ("total", 2, 1, expected))
    c.report.notes["xor"] = "no counterexample for d <= 3, tuple length <= 2"
    c.report.notes["total_d2"] = {"counterexample": expected, "expected": True}


def all_graphs(v: int) -> list[grp.GraphInstance]:
    pairs = list(itertools.combinations(range(v), 2))
    return [
        grp.GraphInstance.of(v, [e for i, e in enumerate(pairs) if bits >> i & 1]) for bits in range(2 ** len(pairs))
    ]


def _check_graph_roundtrip(obj) -> Optional[str]:
    g, per_block, d = obj
    _, fam = grp.encode_graph_tk(g, per_block, d)
    back = grp.decode_graph_tk(fam)
    if not grp.graphs_isomorphic(back, g):
        return f"decode(encode(G)) = {sorted(back.edges)} on {back.v} vertices"
    return None


def random_branch(rng: random.Random, max_len: int = 14) -> str:
    n = rng.randint(1, max_len)
    return "".join(rng.choice("01") for _ in range(n - 1)) + "1"


def _check_witness(obj) -> Optional[str]:
    """The lazy witness for an isomorphism validates on sampled branches and
    transports the materialized families."""
    g, h, sigma, branches = obj
    scheme = grp.BlockScheme(g.v)
    w = grp.lazy_claim_witness(sigma, scheme)
    for eta in branches:
        img = w.branch_image(eta)
        if scheme.block_of(img) != sigma[scheme.block_of(eta)]:
            return f"branch {eta} sent to block {scheme.block_of(img)}"
        if w.branch_preimage(img) != grp.canonical_branch(eta):
            return f"preimage of image of {eta} differs"
        pre = w.branch_preimage(eta)
        if w.branch_image(pre) != grp.canonical_branch(eta):
            return f"image of preimage of {eta} differs"
    if not w.is_consistent():
        return "witness is not a partial automorphism"
    src = grp.SymbolicFamily(g, scheme)
    dst = grp.SymbolicFamily(h, scheme)
    bad = grp.transport_failures(w, src, dst, CONFIG.grp_per_block, CONFIG.grp_depth)
    return bad[0] if bad else None


def _check_obstruction(obj) -> Optional[str]:
    sigma, v, d, branches = obj
    scheme = grp.BlockScheme(v)
    g = grp.total_realizing_block_permutation(sigma, scheme, d)
    if g is not None:
        return f"TOTAL({d}) element realizes the block permutation {sigma}"
    w = grp.lazy_claim_witness(sigma, scheme)
    for eta in branches:
        if scheme.block_of(w.branch_image(eta)) != sigma[scheme.block_of(eta)]:
            return f"lazy witness misplaces {eta}"
    return None if w.is_consistent() else "lazy witness inconsistent"


def suite_grp_reduction(c: Campaign):
    graphs = [g for v in (1, 2, 3) for g in all_graphs(v)]
    sampled4 = [c.rng.choice(all_graphs(4)) for _ in range(max(1, min(c.report.budget, CONFIG.sampled_v4_graphs)))]
    for g in graphs + sampled4:
        c.case("graph-roundtrip", (g, CONFIG.grp_per_block, CONFIG.grp_depth))
        perm = list(range(g.v))
        c.rng.shuffle(perm)
        h = g.relabel(perm)
        for sigma in grp.graph_isomorphisms(g, h):
            branches = [random_branch(c.rng) for _ in range(CONFIG.witness_samples)]
            c.case("witness", (g, h, sigma, branches))
    branches = [random_branch(c.rng) for _ in range(CONFIG.witness_samples)]
    c.case("obstruction", ((1, 2, 0), 3, 3, branches))
    c.report.notes["graphs_exhaustive"] = len(graphs)
    c.report.notes["graphs_sampled_v4"] = len(sampled4)


def _check_k_coding(obj) -> Optional[str]:
    x, y, d = obj
    size = max(len(x), len(y))
    fx = grp.encode_set_k(x, size - len(x), d)
    fy = grp.encode_set_k(y, size - len(y), d)
    eq = grp.equiv_families(fx, fy, "xor", d) is not None
    if eq != (x == y):
        return f"sets equal={x == y} but families XOR-equivalent={eq}"
    return None


def suite_grp_k_coding(c: Campaign):
    d = 3
    strings = ["".join(p) for p in itertools.product("01", repeat=d)]
    sets = _subsets(strings, 2)
    for x, y in itertools.combinations(sets, 2):
        c.case("k-coding", (x, y, d))
    for x in sets:
        c.case("k-coding", (x, x, d))
    c.report.notes["sets"] = len(sets)


# ---------------------------------------------------------------------------
# orbit-main


def _check_orbit_pair(obj) -> Optional[str]:
    name, a, b = obj
    action = orb.standard_actions()[name]
    moved = orb.equiv_sets(action, a, b) is not None
    ma, mb = orb.build_orbit_structure(action, a), orb.build_orbit_structure(action, b)
    direct = orb.orbit_structures_isomorphic(ma, mb)
    if not a or not b:
        css = not a and not b
    else:
        sig = orb.orbit_signature(action)
        css = _css(orb.to_structure(action, ma, sig)) == _css(orb.to_structure(action, mb, sig))
    if not moved == direct == css:
        return f"{name}: equiv_sets={moved} iso={direct} css={css}"
    return None


def _check_lift(obj) -> Optional[str]:
    name, pairs = obj
    action = orb.standard_actions()[name]
    g = orb.lift_bijection(action, pairs)
    if g is not None and any(action.perms[g][a] != b for a, b in pairs.items()):
        return "lifted element does not extend the map"
    keeps = orb.preserves_orbits(action, pairs)
    if (g is not None) != keeps:
        return f"lift={g is not None} but orbit preservation={keeps}"
    return None


def _check_nice(obj) -> Optional[str]:
    name, subset = obj
    action = orb.standard_actions()[name]
    m = orb.build_orbit_structure(action, subset)
    emb = orb.embed_orbit_data(action, m.base, m.tuple_orbits)
    if emb is None:
        return "orbit data of a genuine subset does not embed"
    if orb.equiv_sets(action, subset, emb.values()) is None:
        return "embedding image is not in the orbit of the subset"
    return None


def suite_orbit_main(c: Campaign):
    points = list(range(4))
    subsets = _subsets(points, 4)
    for name in orb.standard_actions():
        for a in subsets:
            for b in subsets:
                c.case("orbit-pair", (name, a, b))
        for a in subsets:
            if len(a) <= 3:
                src = sorted(a)
                for img in itertools.permutations(points, len(src)):
                    c.case("lift", (name, dict(zip(src, img))))
            if a:
                c.case("nice", (name, a))
    c.report.notes["actions"] = sorted(orb.standard_actions())


# ---------------------------------------------------------------------------
# comb-growth


def _check_count_enum(obj) -> Optional[str]:
    k, b, cap = obj
    formula = comb.count_level(k, b, comb.Cap(cap))
    enum = len(comb.enumerate_level(k, b, comb.Cap(cap), CONFIG.enumeration_limit))
    if formula != enum:
        return f"count_level={formula} but enumeration found {enum}"
    return None


def _check_growth(obj) -> Optional[str]:
    k, b, cap = obj
    lo = comb.count_level(k, b, comb.Cap(cap))
    try:
        hi = comb.count_level(k + 1, b, comb.Cap(cap))
    except comb.CountOverflow:
        return None  # hi > 2^63 - 1 >= lo
    return None if hi > lo else f"level {k + 1} count {hi} <= level {k} count {lo}"


def _check_assembly(obj) -> Optional[str]:
    i, j, sig = obj
    a, b = comb.assemble(i, 3, sig), comb.assemble(j, 3, sig)
    css = _css(a) == _css(b)
    iso = brute_force_iso(a, b) is not None if a.size == b.size else False
    if not (i == j) == css == iso:
        return f"invariants equal={i == j} css_equal={css} iso={iso}"
    return None


def suite_comb_growth(c: Campaign):
    formula_only = []
    for k in (0, 1, 2):
        for b in (1, 2, 3):
            for cap in (2, 3):
                prev = comb.count_level(k - 1, b, comb.Cap(cap)) if k else 0
                if k and (cap + 1) ** prev > CONFIG.enumeration_limit:
                    formula_only.append([k, b, cap])
                    continue
                c.case("count-enum", (k, b, cap))
    overflowed = []
    for k in (0, 1, 2, 3):
        for b in (1, 2, 3):
            for cap in (2, 3):
                try:
                    comb.count_level(k, b, comb.Cap(cap))
                except comb.CountOverflow:
                    overflowed.append([k, b, cap])  # already past 2^63 at level k
                    continue
                c.case("growth", (k, b, cap))
    invs = comb.bounded_invariants(
        CONFIG.assembly_depth, CONFIG.assembly_max_value, max_chains=CONFIG.assembly_max_chains
    )
    sig = comb.assembly_signature(invs)
    for i, x in enumerate(invs):
        for y in invs[i:]:
            c.case("assembly", (x, y, sig))
    c.report.notes["enumeration_infeasible_formula_only"] = formula_only
    c.report.notes["count_overflow"] = overflowed
    c.report.notes["assembly_invariants"] = len(invs)


# ---------------------------------------------------------------------------
# registry


_enc_s, _dec_s = jsonio.dump_structure, jsonio.parse_structure
_sorted = lambda s: sorted(s, key=lambda x: (len(x), x))  # noqa: E731
_pres = jsonio.dump_presentation, jsonio.parse_presentation
_graph = jsonio.dump_graph, jsonio.parse_graph
_inv = jsonio.dump_invariant, jsonio.parse_invariant


def _enc_sig(sig: Signature):
    return [{"name": n, "arity": a} for n, a in sig.symbols]


def _dec_sig(obj) -> Signature:
    return Signature(tuple((s["name"], s["arity"]) for s in obj))


CHECKS: dict[str, Check] = {
    "iso-triple": Check(
        _check_iso_triple,
        lambda o: {"a": _enc_s(o[0]), "b": _enc_s(o[1]), "rounds": o[2]},
        lambda j: (_dec_s(j["a"]), _dec_s(j["b"]), j["rounds"]),
        _shrink_iso_triple,
    ),
    "digraph-count": Check(_check_digraph_count, lambda n: {"expected": n}, lambda j: j["expected"]),
    "ref-inject": Check(
        _check_ref_inject,
        lambda o: {"I": _sorted(o[0]), "J": _sorted(o[1]), "depth": o[2]},
        lambda j: (frozenset(j["I"]), frozenset(j["J"]), j["depth"]),
        _shrink_set_pair,
    ),
    "ref-decode": Check(
        _check_ref_decode,
        lambda o: {"set": _sorted(o[0]), "depth": o[1], "perms": {k: list(v) for k, v in o[2].items()}},
        lambda j: (frozenset(j["set"]), j["depth"], {k: tuple(v) for k, v in j["perms"].items()}),
    ),
    "ref-tree": Check(
        _check_ref_tree,
        lambda o: {"tree": jsonio.dump_tree(o[0]), "depth": o[1], "width": o[2]},
        lambda j: (jsonio.parse_tree(j["tree"]), j["depth"], j["width"]),
        _shrink_tree,
    ),
    "ref-tree-pair": Check(
        _check_ref_tree_pair,
        lambda o: {"S": jsonio.dump_tree(o[0]), "T": jsonio.dump_tree(o[1]), "depth": o[2], "width": o[3]},
        lambda j: (jsonio.parse_tree(j["S"]), jsonio.parse_tree(j["T"]), j["depth"], j["width"]),
    ),
    "ref-roundtrip": Check(
        _check_ref_roundtrip,
        lambda o: {"presentation": _pres[0](o[0]), "perms": {k: list(v) for k, v in o[1].items()}},
        lambda j: (_pres[1](j["presentation"]), {k: tuple(v) for k, v in j["perms"].items()}),
        _shrink_presentation,
    ),
    "ref-equiv-oracle": Check(
        _check_ref_equiv_oracle,
        lambda o: {"p": _pres[0](o[0]), "q": _pres[0](o[1])},
        lambda j: (_pres[1](j["p"]), _pres[1](j["q"])),
    ),
    "rigidity": Check(
        _check_rigidity,
        lambda o: {"kind": o[0], "depth": o[1], "tuple_len": o[2], "expected": o[3]},
        lambda j: (j["kind"], j["depth"], j["tuple_len"], j["expected"]),
    ),
    "graph-roundtrip": Check(
        _check_graph_roundtrip,
        lambda o: {"graph": _graph[0](o[0]), "per_block": o[1], "depth": o[2]},
        lambda j: (_graph[1](j["graph"]), j["per_block"], j["depth"]),
    ),
    "witness": Check(
        _check_witness,
        lambda o: {"g": _graph[0](o[0]), "h": _graph[0](o[1]), "sigma": list(o[2]), "branches": list(o[3])},
        lambda j: (_graph[1](j["g"]), _graph[1](j["h"]), tuple(j["sigma"]), j["branches"]),
        lambda o: ((o[0], o[1], o[2], o[3][:i] + o[3][i + 1:]) for i in range(len(o[3]))),
    ),
    "obstruction": Check(
        _check_obstruction,
        lambda o: {"sigma": list(o[0]), "v": o[1], "depth": o[2], "branches": list(o[3])},
        lambda j: (tuple(j["sigma"]), j["v"], j["depth"], j["branches"]),
    ),
    "k-coding": Check(
        _check_k_coding,
        lambda o: {"X": sorted(o[0]), "Y": sorted(o[1]), "depth": o[2]},
        lambda j: (frozenset(j["X"]), frozenset(j["Y"]), j["depth"]),
    ),
    "orbit-pair": Check(
        _check_orbit_pair,
        lambda o: {"action": o[0], "A": sorted(o[1]), "B": sorted(o[2])},
        lambda j: (j["action"], frozenset(j["A"]), frozenset(j["B"])),
    ),
    "lift": Check(
        _check_lift,
        lambda o: {"action": o[0], "pairs": sorted([a, b] for a, b in o[1].items())},
        lambda j: (j["action"], {a: b for a, b in j["pairs"]}),
    ),
    "nice": Check(
        _check_nice,
        lambda o: {"action": o[0], "subset": sorted(o[1])},
        lambda j: (j["action"], frozenset(j["subset"])),
    ),
    "count-enum": Check(
        _check_count_enum,
        lambda o: {"k": o[0], "base": o[1], "cap": o[2]},
        lambda j: (j["k"], j["base"], j["cap"]),
    ),
    "growth": Check(
        _check_growth,
        lambda o: {"k": o[0], "base": o[1], "cap": o[2]},
        lambda j: (j["k"], j["base"], j["cap"]),
    ),
    "assembly": Check(
        _check_assembly,
        lambda o: {"i": _inv[0](o[0]), "j": _inv[0](o[1]), "sig": _enc_sig(o[2])},
        lambda j: (_inv[1](j["i"]), _inv[1](j["j"]), _dec_sig(j["sig"])),
    ),
}

_SUITE_FUNCS = {
    "core-oracle": suite_core_oracle,
    "ref-inject": suite_ref_inject,
    "ref-tree": suite_ref_tree,
    "ref-roundtrip": suite_ref_roundtrip,
    "grp-rigidity": suite_grp_rigidity,
    "grp-reduction": suite_grp_reduction,
    "grp-k-coding": suite_grp_k_coding,
    "orbit-main": suite_orbit_main,
    "comb-growth": suite_comb_growth,
}


def verify_campaign(suite: str, seed: int, budget: int) -> Report:
    t0 = time.perf_counter()
    if suite == "all":
        report = Report("all", seed, budget)
        for name in SUITES:
            sub = verify_campaign(name, seed, budget)
            report.suites.append(sub)
            report.cases += sub.cases
            report.failures.extend(dict(f, suite=name) for f in sub.failures)
    elif suite in _SUITE_FUNCS:
        c = Campaign(suite, seed, budget)
        _SUITE_FUNCS[suite](c)
        report = c.report
    else:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    report.wall_time = time.perf_counter() - t0
    return report


def report_text(report: Report) -> str:
    return json.dumps(report.to_json(), sort_keys=True, indent=2)
