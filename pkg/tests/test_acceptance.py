"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its timing.  Run
``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

import json
import re
import subprocess
import sys
import time

import pytest

from scottkit import campaigns
from scottkit.core import FiniteStructure, Signature, brute_force_iso, scott_sentence

RESULTS: list[str] = []


def record(n: int, name: str, ok: bool, elapsed: float, limit: float, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n} {name}: {elapsed:.1f}s (limit {limit:.0f}s){' ' + detail if detail else ''}"
    RESULTS.append(line)
    print(line)


def campaign(n, name, suite, seed, budget, limit, extra=lambda r: (True, "")):
    t0 = time.perf_counter()
    report = campaigns.verify_campaign(suite, seed, budget)
    elapsed = time.perf_counter() - t0
    extra_ok, detail = extra(report)
    ok = not report.failures and extra_ok and elapsed < limit
    record(n, name, ok, elapsed, limit, f"cases={report.cases} failures={len(report.failures)} {detail}".strip())
    assert not report.failures, report.failures[:3]
    assert extra_ok, detail
    assert elapsed < limit
    return report


def test_criterion_1_core_oracle():
    def extra(r):
        # independent orbit count: group the 64 labeled digraphs by brute-force isomorphism
        sig = Signature.of(("E", 2))
        pairs = [(i, j) for i in range(3) for j in range(3) if i != j]
        graphs = [FiniteStructure.build(sig, 3, {"E": [p for k, p in enumerate(pairs) if b >> k & 1]}) for b in range(64)]
        reps = []
        for g in graphs:
            if not any(brute_force_iso(g, h) for h in reps):
                reps.append(g)
        sentences = len({scott_sentence(g) for g in graphs})
        n = r.notes
        ok = len(reps) == 16 and sentences == 16 and n["random_pairs"] >= 1000 and n["exhaustive_structures"] >= 512
        return ok, f"orbits={len(reps)} sentences={sentences} random_pairs={n['random_pairs']}"

    campaign(1, "core-oracle", "core-oracle", 7, 1000, 60, extra)


def test_criterion_2_ref_inject():
    campaign(2, "ref-inject", "ref-inject", 0, 100, 30, lambda r: (r.notes["sets"] == 93, f"sets={r.notes['sets']}"))


def test_criterion_3_ref_tree():
    campaign(3, "ref-tree", "ref-tree", 0, 100, 30, lambda r: (r.notes["trees"] == 25, f"trees={r.notes['trees']}"))


def test_criterion_4_ref_roundtrip():
    def extra(r):
        return r.notes["presentations"] >= 200, f"presentations={r.notes['presentations']}"

    campaign(4, "ref-roundtrip", "ref-roundtrip", 0, 200, 60, extra)


def test_criterion_5_grp_rigidity():
    def extra(r):
        found = r.notes["total_d2"]["counterexample"]
        return found == [["00"], ["10"], ["11"]], f"total_d2={found}"

    campaign(5, "grp-rigidity", "grp-rigidity", 1, 1, 60, extra)


def test_criterion_6_grp_reduction():
    def extra(r):
        n = r.notes
        return n["graphs_exhaustive"] == 11 and n["graphs_sampled_v4"] > 0, json.dumps(n, sort_keys=True)

    campaign(6, "grp-reduction", "grp-reduction", 0, 100, 120, extra)


def test_criterion_7_grp_k_coding():
    campaign(7, "grp-k-coding", "grp-k-coding", 0, 100, 30, lambda r: (r.notes["sets"] == 37, f"sets={r.notes['sets']}"))


def test_criterion_8_orbit_main():
    def extra(r):
        return len(r.notes["actions"]) == 6, f"actions={len(r.notes['actions'])}"

    campaign(8, "orbit-main", "orbit-main", 0, 100, 120, extra)


def test_criterion_9_comb_growth():
    def extra(r):
        return r.notes["assembly_invariants"] > 0, f"assembly_invariants={r.notes['assembly_invariants']}"

    campaign(9, "comb-growth", "comb-growth", 0, 100, 60, extra)


def _strip_time(text: str) -> str:
    return re.sub(r',\n\s*"wall_time": [0-9.e+-]+', "", text)


def test_criterion_10_determinism():
    cmd = [sys.executable, "-m", "scottkit", "verify", "all", "--seed", "0", "--budget", "100"]
    t0 = time.perf_counter()
    runs = [subprocess.run(cmd, capture_output=True, text=True, timeout=300) for _ in range(2)]
    elapsed = time.perf_counter() - t0
    codes = [r.returncode for r in runs]
    texts = [_strip_time(r.stdout) for r in runs]
    assert "wall_time" not in texts[0]
    same = texts[0] == texts[1]
    ok = codes == [0, 0] and same and elapsed < 300
    record(10, "determinism", ok, elapsed, 300, f"exit={codes} identical={same}")
    assert codes == [0, 0] and same and elapsed < 300


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
