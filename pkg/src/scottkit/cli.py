"""Command-line front end.  JSON on stdout, diagnostics on stderr.

Exit status: 0 success or predicate true, 1 predicate false, 2 usage or input
error, 3 verification failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import campaigns, combinators as comb, grpact as grp, jsonio, orbit as orb, ref
from .core import brute_force_iso, ef_equiv, scott_sentence

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def load(arg: str) -> Any:
    """A JSON argument: inline text, ``-`` for stdin, or a file path."""
    text = arg.strip()
    if text == "-":
        return json.load(sys.stdin)
    if text[:1] in "{[\"" or text in ("true", "false", "null") or text.lstrip("-").isdigit():
        return json.loads(text)
    return json.loads(Path(arg).read_text())


def emit(obj: Any) -> None:
    print(json.dumps(obj, sort_keys=True))


def _verdict(key: str, value: bool, **extra) -> int:
    emit({key: value, **extra})
    return EXIT_OK if value else EXIT_FALSE


# ---------------------------------------------------------------------------
# core


def cmd_css(a) -> int:
    emit({"css": jsonio.dump_sentence(scott_sentence(jsonio.parse_structure(load(a.file))))})
    return EXIT_OK


def cmd_iso(a) -> int:
    m, n = jsonio.parse_structure(load(a.a)), jsonio.parse_structure(load(a.b))
    f = brute_force_iso(m, n)
    extra = {"bijection": list(f.mapping)} if a.witness and f is not None else {}
    return _verdict("isomorphic", f is not None, **extra)


def cmd_ef(a) -> int:
    m, n = jsonio.parse_structure(load(a.a)), jsonio.parse_structure(load(a.b))
    return _verdict("equivalent", ef_equiv(m, n, a.rounds), rounds=a.rounds)


# ---------------------------------------------------------------------------
# ref


def cmd_ref(a) -> int:
    op = a.op
    if op == "encode-set":
        emit(jsonio.dump_presentation(ref.encode_set_refbin(load(a.args[0]), _required(a.depth, "--depth"))))
    elif op == "decode-set":
        emit(sorted(ref.decode_set_refbin(jsonio.parse_presentation(load(a.args[0])))))
    elif op == "encode-tree":
        tree = jsonio.parse_tree(load(a.args[0]))
        emit(jsonio.dump_presentation(ref.encode_tree_refinf(tree, _required(a.depth, "--depth"), a.width)))
    elif op == "tree-inv":
        tree = ref.tree_invariant(jsonio.parse_presentation(load(a.args[0])))
        out = jsonio.dump_tree(tree)
        if tree == ref.NO_ROOT:
            out["no_root"] = True
        emit(out)
    elif op == "data":
        emit(jsonio.dump_data(ref.compute_data(jsonio.parse_presentation(load(a.args[0])))))
    elif op == "unpack":
        emit(jsonio.dump_presentation(ref.unpack_data(jsonio.parse_data(load(a.args[0])))))
    elif op == "equiv":
        p, q = (jsonio.parse_presentation(load(x)) for x in _two(a.args))
        return _verdict("equivalent", ref.presentations_equiv(p, q))
    return EXIT_OK


# ---------------------------------------------------------------------------
# grp


def _coloring_or_family(obj):
    return jsonio.parse_family(obj) if isinstance(obj, list) else jsonio.parse_coloring(obj)


def cmd_grp(a) -> int:
    op = a.op
    if op == "act":
        g = jsonio.parse_element(load(a.args[0]))
        target = _coloring_or_family(load(a.args[1]))
        if isinstance(target, grp.ColoringFamily):
            out = grp.act_family(g, target)
            dumped = None if out is None else jsonio.dump_family(out)
        else:
            out = grp.act(g, target)
            dumped = None if out is None else jsonio.dump_coloring(out)
        if out is None:
            return _verdict("defined", False)
        emit(dumped)
    elif op == "equiv":
        x, y = (_coloring_or_family(load(s)) for s in _two(a.args))
        if isinstance(x, grp.Coloring):
            x, y = grp.ColoringFamily.of([x]), grp.ColoringFamily.of([y])
        d = a.depth if a.depth is not None else max(x.depth, y.depth)
        g = grp.equiv_families(x, y, a.kind, d)
        extra = {"element": jsonio.dump_element(g)} if g is not None else {}
        return _verdict("equivalent", g is not None, **extra)
    elif op == "encode-graph":
        g = jsonio.parse_graph(load(a.args[0]))
        _, fam = grp.encode_graph_tk(g, a.per_block, _required(a.depth, "--depth"))
        emit(jsonio.dump_family(fam))
    elif op == "decode-graph":
        emit(jsonio.dump_graph(grp.decode_graph_tk(jsonio.parse_family(load(a.args[0])))))
    elif op == "witness":
        g, h = (jsonio.parse_graph(load(s)) for s in _two(a.args))
        sigma = next(iter(grp.graph_isomorphisms(g, h)), None)
        if sigma is None:
            return _verdict("isomorphic", False)
        scheme = grp.BlockScheme(g.v)
        w = grp.lazy_claim_witness(sigma, scheme)
        branches = a.branch or [b for i in range(g.v) for b in scheme.members(i, 4)]
        images = {b: w.branch_image(b) for b in branches}
        d = _required(a.depth, "--depth")
        bad = grp.transport_failures(w, grp.SymbolicFamily(g, scheme), grp.SymbolicFamily(h, scheme), a.per_block, d)
        emit({"isomorphic": True, "sigma": list(sigma), "images": images, "transport_failures": bad})
        return EXIT_OK if not bad else EXIT_FALSE
    elif op == "encode-set-k":
        emit(jsonio.dump_family(grp.encode_set_k(load(a.args[0]), a.fillers, a.depth)))
    elif op == "rigidity":
        found = grp.find_rigidity_counterexample(a.kind, _required(a.depth, "--depth"), a.tuple_len)
        emit({"kind": a.kind, "depth": a.depth, "counterexample": None if found is None else [list(t) for t in found]})
    return EXIT_OK


# ---------------------------------------------------------------------------
# orbit


def cmd_orbit(a) -> int:
    action = jsonio.parse_action(load(a.args[0]))
    rest = a.args[1:]
    op = a.op
    if op == "build":
        emit(jsonio.dump_orbit_structure(orb.build_orbit_structure(action, jsonio.parse_subset(load(rest[0])))))
    elif op == "equiv":
        x, y = (jsonio.parse_subset(load(s)) for s in _two(rest))
        g = orb.equiv_sets(action, x, y)
        extra = {"perm": list(action.perms[g])} if g is not None else {}
        return _verdict("equivalent", g is not None, **extra)
    elif op == "lift":
        obj = load(rest[0])
        pairs = {int(k): v for k, v in obj.items()} if isinstance(obj, dict) else {x: y for x, y in obj}
        g = orb.lift_bijection(action, pairs)
        extra = {"perm": list(action.perms[g])} if g is not None else {}
        return _verdict("lifts", g is not None, **extra)
    elif op == "nice":
        m = jsonio.parse_orbit_structure(load(rest[0]))
        emb = orb.embed_orbit_data(action, m.base, m.tuple_orbits)
        extra = {"embedding": sorted([k, v] for k, v in emb.items())} if emb is not None else {}
        return _verdict("nice", emb is not None, **extra)
    return EXIT_OK


# ---------------------------------------------------------------------------
# comb


def _inv_list(arg: str) -> list:
    obj = load(arg)
    if not isinstance(obj, list):
        raise jsonio.InputError("expected an array of invariants")
    return [jsonio.parse_invariant(x) for x in obj]


def cmd_comb(a) -> int:
    op = a.op
    cap = comb.Cap(a.cap)
    if op == "t0":
        emit(jsonio.dump_invariant(comb.t0_invariant(a.chains, cap)))
    elif op == "jump":
        emit(jsonio.dump_invariant(comb.jump_invariant(_inv_list(a.args[0]), cap)))
    elif op == "product":
        emit(jsonio.dump_invariant(comb.product_invariant(_inv_list(a.args[0]))))
    elif op == "assemble":
        emit(jsonio.dump_structure(comb.assemble(jsonio.parse_invariant(load(a.args[0])), a.cycle_len)))
    elif op == "count":
        emit(comb.count_level(_required(a.level, "--level"), _required(a.base, "--base"), cap))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification


def cmd_verify(a) -> int:
    report = campaigns.verify_campaign(a.suite, a.seed, a.budget)
    print(campaigns.report_text(report))
    if report.failures:
        print(f"{len(report.failures)} failure(s); see the repro fields", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_replay(a) -> int:
    msg = campaigns.replay(load(a.payload))
    emit({"ok": msg is None, "message": msg})
    return EXIT_OK if msg is None else EXIT_VERIFY


# ---------------------------------------------------------------------------
# argument parsing


def _required(value, flag: str):
    if value is None:
        raise jsonio.InputError(f"{flag} is required here")
    return value


def _two(args: Sequence[str]):
    if len(args) < 2:
        raise jsonio.InputError("two inputs required")
    return args[0], args[1]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="scottkit", description="Scott sentences, REF/K/TK encoders, orbit and jump combinators.")
    p.add_argument("--format", choices=["json"], default="json", help="output format (JSON only)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("css", help="canonical Scott sentence of a structure (hex)")
    s.add_argument("file")
    s.set_defaults(func=cmd_css)

    s = sub.add_parser("iso", help="brute-force isomorphism test")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--witness", action="store_true", help="also print the bijection")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("ef", help="EF game: does the duplicator survive R rounds?")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--rounds", type=int, required=True)
    s.set_defaults(func=cmd_ef)

    s = sub.add_parser("ref", help="REF presentations, data and encoders")
    s.add_argument("op", choices=["encode-set", "decode-set", "encode-tree", "tree-inv", "data", "unpack", "equiv"])
    s.add_argument("args", nargs="+")
    s.add_argument("--depth", type=int)
    s.add_argument("--width", type=int, default=2)
    s.set_defaults(func=cmd_ref)

    s = sub.add_parser("grp", help="tree-coloring group actions and the K/TK encoders")
    s.add_argument("op", choices=["act", "equiv", "encode-graph", "decode-graph", "witness", "encode-set-k", "rigidity"])
    s.add_argument("args", nargs="*")
    s.add_argument("--depth", type=int)
    s.add_argument("--kind", choices=["xor", "total"], default="xor")
    s.add_argument("--per-block", type=int, default=2)
    s.add_argument("--fillers", type=int, default=0)
    s.add_argument("--tuple-len", type=int, default=1)
    s.add_argument("--branch", action="append", help="branch to send through the witness (repeatable)")
    s.set_defaults(func=cmd_grp)

    s = sub.add_parser("orbit", help="orbit structures of a finite permutation group")
    s.add_argument("op", choices=["build", "equiv", "lift", "nice"])
    s.add_argument("args", nargs="+", help="ACTION followed by the operation's inputs")
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("comb", help="jump/product invariants and level counts")
    s.add_argument("op", choices=["t0", "jump", "product", "assemble", "count"])
    s.add_argument("args", nargs="*")
    s.add_argument("--cap", type=int, default=2)
    s.add_argument("--chains", type=int, default=1)
    s.add_argument("--cycle-len", type=int, default=3)
    s.add_argument("--level", type=int)
    s.add_argument("--base", type=int)
    s.set_defaults(func=cmd_comb)

    s = sub.add_parser("verify", help="run a seeded verification campaign")
    s.add_argument("suite", choices=list(campaigns.SUITES) + ["all"])
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=100)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("replay", help="re-run one failing campaign case")
    s.add_argument("payload")
    s.set_defaults(func=cmd_replay)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, TypeError, IndexError, OSError, ArithmeticError) as e:
        # every library error derives from ValueError or ArithmeticError
        print(f"scottkit: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
