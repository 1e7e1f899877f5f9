"""One test per acceptance criterion, each at its stated tolerance and time limit.

Every test records a one-line verdict that is printed in the terminal summary.
"""

import json
import math
import subprocess
import sys
import time
from itertools import combinations

import pytest

from conftest import ACCEPTANCE
from oracles import eq6_reference, has_odd_cycle
from propbk import analytics as an
from propbk.exact import decide_b_chains, decide_bk_exhaustive, decide_bk_numeration, min_nonBk_search
from propbk.hypergraph import build_hypergraph, fano, random_uniform, to_hg
from propbk.montecarlo import compare, mc_estimate
from propbk.ordering import verify_coloring
from propbk.randomized import bk_epsilon_prune, naive_random_colorer, ordering_colorer

GRID = (30, 40, 60, 100, 200, 500, 1000, 2000)
P30 = 4 * math.log(30) / 30


class Recorder:
    def __init__(self, num):
        self.num = num
        self.t0 = time.perf_counter()
        ACCEPTANCE[num] = (False, "did not finish")

    @property
    def elapsed(self):
        return time.perf_counter() - self.t0

    def done(self, ok, detail):
        ACCEPTANCE[self.num] = (bool(ok), f"{detail} [{self.elapsed:.1f}s]")
        assert ok, detail


def test_criterion_01_lemma2_equivalence():
    rec = Recorder(1)
    cands = list(combinations(range(6), 4))
    count = disagree = 0
    for m in range(1, 5):
        for es in combinations(cands, m):
            H = build_hypergraph(6, es)
            count += 1
            disagree += decide_bk_exhaustive(H, 2) != decide_bk_numeration(H, 2)
    rec.done(disagree == 0 and rec.elapsed < 60,
             f"{count} instances, {disagree} disagreements")


def test_criterion_02_bipartiteness():
    rec = Recorder(2)
    count = disagree = 0
    for v in range(1, 6):
        pairs = list(combinations(range(v), 2))
        for mask in range(1 << len(pairs)):
            es = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            H = build_hypergraph(v, es)
            want = not has_odd_cycle(es, v)
            count += 1
            disagree += (decide_bk_exhaustive(H, 1) != want) + (decide_b_chains(H) != want)
    rec.done(disagree == 0 and rec.elapsed < 10, f"{count} graphs, {disagree} disagreements")


def test_criterion_03_fano():
    rec = Recorder(3)
    H = fano()
    from propbk.ordering import Coloring
    import numpy as np

    all_bad = all(
        verify_coloring(H, Coloring(np.array([1 + (b >> v & 1) for v in range(7)])), 1)
        for b in range(128)
    )
    subs_ok = all(decide_bk_exhaustive(H.without_edges([i]), 1) for i in range(7))
    rec.done(all_bad and subs_ok and not decide_bk_exhaustive(H, 1) and rec.elapsed < 1,
             f"128 colorings violated={all_bad}, 7 deletions B_1={subs_ok}")


def test_criterion_04_search_oracle():
    rec = Recorder(4)
    a = min_nonBk_search(2, 1, 3, 3)
    b = min_nonBk_search(2, 1, 4, 2)
    tri = a.witness is not None and sorted(a.witness.edges) == [(0, 1), (0, 2), (1, 2)]
    ok = a.min_edges == 3 and tri and b.exhausted and b.min_edges is None and rec.elapsed < 5
    rec.done(ok, f"(2,1,3,3) -> {a.min_edges} triangle={tri}; (2,1,4,2) -> exhausted={b.exhausted}, "
                 f"min={b.min_edges}")


def test_criterion_05_order_statistic_law():
    rec = Recorder(5)
    parts = []
    ok = True
    for t in (0.3, 0.45, 0.5):
        est = mc_estimate("order_stat", {"n": 30, "k": 2, "t": t}, 10**6, 1)
        ref = an.order_stat_cdf(30, 2, t)
        v = compare(ref, est, 3)
        ok &= v.passed and abs(est.estimate - ref) <= 5e-3
        parts.append(f"t={t}: mc={est.estimate:.3g} exact={ref:.3g}")
    rec.done(ok and rec.elapsed < 30, "; ".join(parts))


def test_criterion_06_dense_probability():
    rec = Recorder(6)
    est = mc_estimate("dense", {"n": 30, "k": 2, "p": P30}, 10**6, 1)
    ref = float(an.p_dense_exact(30, 2, P30).analytic)
    v = compare(ref, est, 3)
    small = an.p_dense_exact(2, 1, 0).analytic == an.mp.mpf("0.75")
    rec.done(v.passed and small and rec.elapsed < 30,
             f"mc={est.estimate:.3g} exact={ref:.3g}; n=2,k=1,p=0 -> 0.75 exact={small}")


def test_criterion_07_badpair_bound():
    rec = Recorder(7)
    ok = True
    parts = []
    for h in (1, 2, 3):
        est = mc_estimate("badpair", {"n": 30, "k": 2, "h": h}, 10**6, 1)
        bound = float(an.p_badpair_upper(30, 2, h, P30).analytic)
        v = compare(bound, est, 3, mode="upper")
        ok &= v.passed
        parts.append(f"h={h}: mc={est.estimate:.3g} <= {bound:.3g}")
    est4 = mc_estimate("badpair", {"n": 30, "k": 2, "h": 4}, 10**6, 1)
    zero = an.p_badpair_upper(30, 2, 4, P30).analytic == 0 and est4.successes == 0
    parts.append(f"h=4: analytic 0 and mc 0 = {zero}")
    rec.done(ok and zero and rec.elapsed < 60, "; ".join(parts))


def test_criterion_08_inequality_replay():
    rec = Recorder(8)
    points = failures = rows = 0
    bad = []
    for n in GRID:
        for k in an.admissible_ks(n):
            a = an.inequality_audit(n, k)
            points += 1
            rows += len(a.rows)
            if not a.all_hold:
                failures += 1
                bad.append((n, k, [r.name for r in a.failures()]))
    e = an.mp.e
    const1 = 864 / e**22 + 1 / (45 * e**13) + an.mp.mpf(4) / 5 < 1
    const2 = 200 / (3 * e**22) + 1 / (162 * e**13) + an.mp.mpf(2) / 9 < an.mp.mpf(1) / 4
    rec.done(failures == 0 and const1 and const2 and rec.elapsed < 60,
             f"{points} grid points, {rows} rows, {failures} failing points {bad[:3]}")


def test_criterion_09_factor_caps():
    rec = Recorder(9)
    points = failures = 0
    for n in GRID:
        for k in an.admissible_ks(n):
            f = an.factor_audit(n, k)
            points += 1
            failures += not (f.caps_hold and len(f.caps) == 6)
    rec.done(failures == 0, f"{points} grid points, {failures} failures")


@pytest.mark.slow
def test_criterion_10_algorithm_soundness():
    rec = Recorder(10)
    violations = 0
    success_by_seed = {s: 0 for s in range(10)}
    for inst in range(100):
        H = random_uniform(300, 30, 1000, inst)
        for seed in range(10):
            c, st = ordering_colorer(H, 2, "paper-k", 50, seed)
            if c is not None:
                success_by_seed[seed] += 1
                violations += len(verify_coloring(H, c, 2))
            c, _ = naive_random_colorer(H, 2, 50, seed)
            if c is not None:
                violations += len(verify_coloring(H, c, 2))
            res, st = bk_epsilon_prune(H, 2, 0.1, "paper-eps", 50, seed)
            if res is not None:
                Hp, c = res
                violations += len(verify_coloring(Hp, c, 2))
                violations += not Hp.m > 0.9 * H.m
    worst = min(success_by_seed.values())
    rec.done(violations == 0 and worst >= 99 and rec.elapsed < 300,
             f"violations={violations}, ordering successes per seed min={worst}/100")


def test_criterion_11_bound_evaluator():
    rec = Recorder(11)
    val = an.bounds_report(30, 2)["mk_lower_ordering"].value
    ref = eq6_reference(30, 2)
    rel = abs(val - ref) / ref
    worst = None
    for n in GRID:
        for k in an.admissible_ks(n):
            base = an.bounds_report(n, k)["mk_lower_ordering"].value
            for h in range(k + 1, 2 * k):
                r = an.bounds_report(n, k, h=h)["mkh_lower_ordering"].value / base
                worst = r if worst is None else min(worst, r)
    ok = rel < 1e-6 and abs(float(val) - 2.38e-3) < 0.01e-3 and worst >= 1 and rec.elapsed < 10
    rec.done(ok, f"value={float(val):.6g}, rel err={float(rel):.2g}, min ratio={float(worst):.4g}")


def _cli(args, stdin=None):
    r = subprocess.run([sys.executable, "-m", "propbk.cli_entry", *args], input=stdin,
                       capture_output=True, text=True)
    return r.returncode, r.stdout


def test_criterion_12_determinism(tmp_path):
    rec = Recorder(12)
    checks = {}
    checks["generator"] = to_hg(random_uniform(300, 30, 1000, 3)) == to_hg(random_uniform(300, 30, 1000, 3))
    H = random_uniform(120, 12, 200, 4)
    for name, fn in [
        ("ordering", lambda j: ordering_colorer(H, 2, "paper-k", 40, 5, jobs=j)),
        ("naive", lambda j: naive_random_colorer(H, 2, 40, 5, jobs=j)),
        ("prune", lambda j: bk_epsilon_prune(H, 2, 0.2, "paper-eps", 40, 5, jobs=j)),
    ]:
        outs = []
        for j in (1, 1, 3, 8):
            res, st = fn(j)
            c = res[1] if isinstance(res, tuple) else res
            outs.append((None if c is None else c.to_string(), st.to_json()))
        checks[name] = len(set(outs)) == 1
    for target, prm in [("order_stat", {"n": 30, "k": 2, "t": 0.9}), ("dense", {"n": 10, "k": 2, "p": 0.1}),
                        ("badpair", {"n": 6, "k": 2, "h": 2})]:
        vals = {mc_estimate(target, prm, 200_000, 7, jobs=j).to_json() for j in (1, 1, 2, 4)}
        checks[f"mc:{target}"] = len(vals) == 1
    hg = _cli(["gen", "--family", "random", "--v", "100", "--n", "10", "--m", "80", "--seed", "2"])[1]
    runs = [
        ["gen", "--family", "random", "--v", "100", "--n", "10", "--m", "80", "--seed", "2"],
        ["color", "--k", "2", "--seed", "3", "--format", "json"],
        ["color", "--k", "2", "--algorithm", "prune", "--eps", "0.3", "--seed", "3", "--format", "csv"],
        ["mc", "--target", "dense", "--n", "10", "--k", "2", "--p", "0.1", "--trials", "100000", "--format", "json"],
        ["bounds", "--n", "40", "--k", "3", "--h", "4", "--eps", "0.01", "--format", "json"],
    ]
    for argv in runs:
        stdin = hg if argv[0] == "color" else None
        outs = {_cli(argv + ["--jobs", j], stdin)[1] for j in ("1", "4")} | {_cli(argv, stdin)[1]}
        checks["cli:" + argv[0] + ":" + (argv[-1] if argv[-2] == "--format" else "text")] = len(outs) == 1
    bad = [k for k, v in checks.items() if not v]
    rec.done(not bad, f"{len(checks)} checks, non-deterministic: {bad or 'none'}")
