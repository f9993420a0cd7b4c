import json
import subprocess
import sys

import pytest

from scottkit import campaigns
from scottkit.cli import EXIT_FALSE, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main

M = {"sig": [{"name": "E", "arity": 2}], "size": 2, "interp": {"E": [[0, 1]]}}
N = {"sig": [{"name": "E", "arity": 2}], "size": 2, "interp": {"E": [[1, 0]]}}
LOOP = {"sig": [{"name": "E", "arity": 2}], "size": 2, "interp": {"E": [[0, 0]]}}
Z4 = {"n": 4, "perms": [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]]}


def run(capsys, *argv):
    code = main([str(a) if not isinstance(a, (dict, list)) else json.dumps(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_iso_from_files(tmp_path, capsys):
    f = tmp_path / "m.json"
    f.write_text(json.dumps(M))
    assert run_json(capsys, "iso", f, f) == (EXIT_OK, {"isomorphic": True})
    code, out = run_json(capsys, "iso", M, N, "--witness")
    assert code == EXIT_OK and out["bijection"] == [1, 0]
    assert run_json(capsys, "iso", M, LOOP) == (EXIT_FALSE, {"isomorphic": False})


def test_css_and_ef(capsys):
    _, a = run_json(capsys, "css", M)
    _, b = run_json(capsys, "css", N)
    assert a == b and a["css"].startswith("43535331")
    assert run_json(capsys, "ef", M, LOOP, "--rounds", 0) == (EXIT_OK, {"equivalent": True, "rounds": 0})
    assert run_json(capsys, "ef", M, LOOP, "--rounds", 1)[0] == EXIT_FALSE


def test_ref_commands(capsys):
    code, enc = run_json(capsys, "ref", "encode-tree", {"nodes": [""]}, "--depth", 2)
    assert code == EXIT_OK
    assert run_json(capsys, "ref", "tree-inv", enc) == (EXIT_OK, {"nodes": [""]})
    _, p = run_json(capsys, "ref", "encode-set", ["01"], "--depth", 2)
    assert run_json(capsys, "ref", "decode-set", p) == (EXIT_OK, ["01"])
    _, data = run_json(capsys, "ref", "data", p)
    _, q = run_json(capsys, "ref", "unpack", data)
    assert run_json(capsys, "ref", "equiv", p, q) == (EXIT_OK, {"equivalent": True})


def test_grp_commands(capsys):
    c = {"values": {"": 5, "0": 1, "1": 2}}
    assert run_json(capsys, "grp", "act", {"xor": "1"}, c) == (EXIT_OK, {"values": {"": 5, "0": 2, "1": 1}})
    code, out = run_json(capsys, "grp", "equiv", c, {"values": {"": 5, "0": 2, "1": 1}})
    assert code == EXIT_OK and out["element"] == {"xor": "1"}
    _, fam = run_json(capsys, "grp", "encode-graph", {"v": 2, "edges": [[0, 1]]}, "--depth", 5)
    assert run_json(capsys, "grp", "decode-graph", fam) == (EXIT_OK, {"v": 2, "edges": [[0, 1]]})
    _, rig = run_json(capsys, "grp", "rigidity", "--kind", "total", "--depth", 2)
    assert rig["counterexample"] == [["00"], ["10"], ["11"]]
    g = {"v": 3, "edges": [[0, 1]]}
    h = {"v": 3, "edges": [[1, 2]]}
    code, out = run_json(capsys, "grp", "witness", g, h, "--depth", 6)
    assert code == EXIT_OK and out["transport_failures"] == []


def test_orbit_commands(capsys):
    code, m = run_json(capsys, "orbit", "build", Z4, [0, 1])
    assert code == EXIT_OK and [[1, 0], [0, 3]] in m["orbits"]
    assert run_json(capsys, "orbit", "equiv", Z4, [0, 1], [2, 3])[0] == EXIT_OK
    assert run_json(capsys, "orbit", "equiv", Z4, [0, 2], [0, 1]) == (EXIT_FALSE, {"equivalent": False})
    assert run_json(capsys, "orbit", "lift", Z4, {"0": 1, "1": 2})[1]["perm"] == [1, 2, 3, 0]
    assert run_json(capsys, "orbit", "lift", Z4, {"0": 1, "1": 0})[0] == EXIT_FALSE
    assert run_json(capsys, "orbit", "nice", Z4, m)[0] == EXIT_OK


def test_comb_commands(capsys):
    assert run_json(capsys, "comb", "count", "--level", 1, "--base", 3, "--cap", 2) == (EXIT_OK, 26)
    assert run_json(capsys, "comb", "t0", "--chains", 7, "--cap", 5) == (EXIT_OK, {"base": "omega"})
    code, j = run_json(capsys, "comb", "jump", [{"base": 1}, {"base": 1}, {"base": 2}], "--cap", 5)
    assert j == {"jump": [[{"base": 1}, 2], [{"base": 2}, 1]]}
    _, m = run_json(capsys, "comb", "assemble", {"base": 2}, "--cycle-len", 4)
    assert m["size"] == 8


def test_count_overflow_is_an_input_error(capsys):
    code, out, err = run(capsys, "comb", "count", "--level", 5, "--base", 3, "--cap", 3)
    assert code == EXIT_INPUT and out == "" and "exceeds" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["iso", "{not json"],
        ["iso", "/nonexistent/file.json", "/nonexistent/file.json"],
        ["ref", "encode-set", '["01"]'],
        ["verify", "nope"],
        ["frobnicate"],
        ["grp", "decode-graph", '[{"values": {"": 1, "0": 2}}]'],
        ["replay", '{"kind": "nope", "input": {}}'],
    ],
)
def test_input_errors_exit_two(argv, capsys):
    with pytest.raises(SystemExit) as e:
        sys.exit(main(argv))
    assert e.value.code == EXIT_INPUT


def test_verify_and_replay(capsys):
    code, out, _ = run(capsys, "verify", "grp-rigidity", "--seed", 1, "--budget", 1)
    report = json.loads(out)
    assert code == EXIT_OK and report["failures"] == [] and report["cases"] > 0
    payload = {"kind": "count-enum", "input": {"k": 1, "base": 3, "cap": 2}}
    assert run_json(capsys, "replay", payload) == (EXIT_OK, {"message": None, "ok": True})


def test_verify_failure_exits_three(capsys, monkeypatch):
    def broken(c):
        c.case("count-enum", (1, 3, 2))

    monkeypatch.setitem(campaigns.CHECKS, "count-enum", campaigns.Check(
        lambda o: "forced mismatch", campaigns.CHECKS["count-enum"].encode, campaigns.CHECKS["count-enum"].decode))
    monkeypatch.setitem(campaigns._SUITE_FUNCS, "comb-growth", broken)
    code, out, err = run(capsys, "verify", "comb-growth")
    failure = json.loads(out)["failures"][0]
    assert code == EXIT_VERIFY and "failure" in err
    assert failure["repro"].startswith("scottkit replay ")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "scottkit", "comb", "count", "--level", "0", "--base", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "3"
