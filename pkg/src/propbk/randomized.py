"""Randomized coloring algorithms and local-lemma condition checks.

Each trial draws from its own stream keyed by ``(seed, algorithm, trial)``.
With ``jobs > 1`` trials are evaluated in blocks on a thread pool and then
scanned in trial order, so the accepted trial (the first success by index)
and the recorded statistics match a sequential run exactly.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

import mpmath
import numpy as np

from . import analytics
from .hypergraph import Hypergraph, HypergraphError
from .ordering import (
    Coloring,
    DensityParams,
    VertexWeights,
    coloring_from_numeration,
    count_bad_pairs,
    dense_edges,
    draw_weights,
    find_bad_pairs,
    numeration_from_weights,
    resolve_p,
    verify_coloring,
)
from .rng import stream

__all__ = [
    "TrialStats",
    "LllCheck",
    "naive_random_colorer",
    "union_bound_fail_prob",
    "ordering_colorer",
    "bk_epsilon_prune",
    "degree_condition_check",
    "lll_condition",
]


@dataclass
class TrialStats:
    algorithm: str
    seed: int
    trials_run: int = 0
    bad_pairs: list[int] = field(default_factory=list)
    dense: list[int] = field(default_factory=list)
    accepted: list[bool] = field(default_factory=list)
    success_trial: int | None = None
    deleted_edges: list[int] | None = None

    def __post_init__(self) -> None:
        if self.success_trial is not None and self.success_trial > self.trials_run:
            raise ValueError("success_trial exceeds trials_run")

    def _record(self, x: int, y: int, ok: bool) -> None:
        self.trials_run += 1
        self.bad_pairs.append(int(x))
        self.dense.append(int(y))
        self.accepted.append(bool(ok))
        if ok and self.success_trial is None:
            self.success_trial = self.trials_run

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "seed": self.seed,
            "trials_run": self.trials_run,
            "success_trial": self.success_trial,
            "X": self.bad_pairs,
            "Y": self.dense,
            "accepted": self.accepted,
            "deleted_edges": self.deleted_edges,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["trial", "X", "Y", "accepted"])
        for t, (x, y, a) in enumerate(zip(self.bad_pairs, self.dense, self.accepted), 1):
            w.writerow([t, x, y, int(a)])
        return buf.getvalue()


def _check_sizes(H: Hypergraph, k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if H.m and H.min_edge_size < 2 * k:
        raise HypergraphError(f"every edge needs at least {2 * k} vertices (k={k})")


def _run_trials(
    trial: Callable[[int], tuple],
    max_trials: int,
    jobs: int,
    accept: Callable[[tuple], bool],
    stats: TrialStats,
):
    """Evaluate trials ``1..max_trials`` until the first accepted one.

    ``trial(t)`` returns ``(X, Y, payload...)``; returns the accepted result or
    ``None``.
    """
    if max_trials < 0:
        raise ValueError("max_trials must be non-negative")
    jobs = max(1, int(jobs))
    t = 1
    pool = ThreadPoolExecutor(jobs) if jobs > 1 else None
    try:
        while t <= max_trials:
            block = list(range(t, min(max_trials, t + jobs - 1) + 1))
            results = list(pool.map(trial, block)) if pool else [trial(block[0])]
            for r in results:
                ok = accept(r)
                stats._record(r[0], r[1], ok)
                if ok:
                    return r
            t = block[-1] + 1
    finally:
        if pool:
            pool.shutdown()
    return None


# --------------------------------------------------------------------------
# naive colorer
# --------------------------------------------------------------------------


def union_bound_fail_prob(n: int, k: int, m: int) -> float:
    """``min(1, m * 2 * sum_{j<k} C(n, j) / 2**n)``: the union bound on the
    chance that a uniform random coloring violates some edge."""
    if n < 2 * k or k < 1:
        raise ValueError(f"need n >= 2k >= 2, got n={n}, k={k}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    val = Fraction(2 * m * sum(comb(n, j) for j in range(k)), 2**n)
    return float(min(Fraction(1), val))


def naive_random_colorer(
    H: Hypergraph, k: int, max_trials: int, seed: int, jobs: int = 1
) -> tuple[Coloring | None, TrialStats]:
    """Try independent fair colorings; return the first with no violated edge.

    ``X`` records the number of violated edges per trial; ``Y`` is always 0.
    """
    _check_sizes(H, k)
    stats = TrialStats("naive", seed)

    def trial(t: int):
        rng = stream(seed, "naive-colorer", t)
        c = Coloring(rng.integers(1, 3, size=H.vertex_count, dtype=np.int8))
        return len(verify_coloring(H, c, k)), 0, c

    r = _run_trials(trial, max_trials, jobs, lambda r: r[0] == 0, stats)
    return (r[2] if r else None), stats


# --------------------------------------------------------------------------
# ordering colorer
# --------------------------------------------------------------------------


def _edge_size(H: Hypergraph) -> int:
    return H.uniformity if H.uniformity is not None else H.min_edge_size


def _ordering_trial(H: Hypergraph, k: int, p: float, seed: int, label: str, t: int):
    w = draw_weights(stream(seed, label, t), H.vertex_count)
    W = VertexWeights(w, seed)
    sigma = numeration_from_weights(w)
    x = count_bad_pairs(H, sigma, k)
    dense = dense_edges(H, W, DensityParams(k, p)) if H.m else []
    return x, len(dense), sigma, dense


def ordering_colorer(
    H: Hypergraph,
    k: int,
    p: float | str,
    max_trials: int,
    seed: int,
    jobs: int = 1,
    require_non_dense: bool = False,
) -> tuple[Coloring | None, TrialStats]:
    """Random-numeration colorer.

    Each trial orders the vertices by fresh uniform weights and accepts when no
    bad pair exists; the coloring puts every first-k vertex in color 1.  Dense
    edges are counted for statistics, and rejected as well when
    ``require_non_dense`` is set.
    """
    _check_sizes(H, k)
    p_val = resolve_p(p, _edge_size(H), k) if H.m else 0.0
    stats = TrialStats("ordering", seed)

    def accept(r) -> bool:
        return r[0] == 0 and (not require_non_dense or r[1] == 0)

    r = _run_trials(
        lambda t: _ordering_trial(H, k, p_val, seed, "ordering-colorer", t),
        max_trials, jobs, accept, stats,
    )
    if r is None:
        return None, stats
    c = coloring_from_numeration(H, r[2], k)
    bad = verify_coloring(H, c, k)
    if bad:  # cannot happen when no bad pair exists
        raise AssertionError(f"ordering colorer produced violated edges {bad[:5]}")
    return c, stats


# --------------------------------------------------------------------------
# pruning colorer for B_{k, eps}
# --------------------------------------------------------------------------


def _prune_edges(H: Hypergraph, sigma, k: int, dense: Sequence[int]) -> list[int]:
    """Dense edges plus the s-side edge of each still-unresolved bad pair."""
    deleted = set(dense)
    for bp in find_bad_pairs(H, sigma, k):
        if bp.f in deleted or bp.s in deleted:
            continue
        deleted.add(bp.s)
    return sorted(deleted)


def bk_epsilon_prune(
    H: Hypergraph,
    k: int,
    eps: float,
    p: float | str = "paper-eps",
    max_trials: int = 100,
    seed: int = 0,
    jobs: int = 1,
) -> tuple[tuple[Hypergraph, Coloring] | None, TrialStats]:
    """Find a spanning subhypergraph keeping more than ``(1 - eps)|E|`` edges
    together with a B_k coloring of it.

    A trial is accepted when ``X + Y < eps |E|`` (``X`` bad triples, ``Y``
    dense edges).  Dense edges are removed, then for each bad pair in report
    order whose edges both survive, its s-side edge is removed.  For
    ``eps >= 1`` every trial is accepted.
    """
    _check_sizes(H, k)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    p_val = resolve_p(p, _edge_size(H), k) if H.m else 0.0
    stats = TrialStats("prune", seed)

    def accept(r) -> bool:
        return eps >= 1 or r[0] + r[1] < eps * H.m

    r = _run_trials(
        lambda t: _ordering_trial(H, k, p_val, seed, "prune-colorer", t),
        max_trials, jobs, accept, stats,
    )
    if r is None:
        return None, stats
    x, y, sigma, dense = r
    deleted = _prune_edges(H, sigma, k, dense)
    if len(deleted) > x + y:
        raise AssertionError("deletion count exceeds X + Y")
    Hp = H.without_edges(deleted)
    c = coloring_from_numeration(Hp, sigma, k)
    if verify_coloring(Hp, c, k):
        raise AssertionError("pruned hypergraph coloring is not proper")
    stats.deleted_edges = deleted
    return (Hp, c), stats


# --------------------------------------------------------------------------
# local-lemma condition checks
# --------------------------------------------------------------------------


@dataclass
class LllCheck:
    n: int
    k: int
    D: int
    d_limit: mpmath.mpf
    p_bad: mpmath.mpf
    p_dense: mpmath.mpf
    sum: mpmath.mpf
    satisfied: bool
    hypotheses: dict[str, bool]

    def to_dict(self) -> dict:
        dec = lambda x: analytics.mp.nstr(x, 30)  # noqa: E731
        return {
            "n": self.n, "k": self.k, "D": self.D,
            "d_limit": dec(self.d_limit), "p_bad": dec(self.p_bad),
            "p_dense": dec(self.p_dense), "sum": dec(self.sum),
            "satisfied": self.satisfied, "hypotheses": self.hypotheses,
        }


def degree_condition_check(
    n: int,
    k: int,
    D: int,
    p_bad: float | None = None,
    p_dense: float | None = None,
) -> LllCheck:
    """Local-lemma sufficient condition for B_k on hypergraphs of intersection
    degree ``D``.

    Each bad-pair event depends on at most ``4(D+1)^2`` others and each dense
    event on ``2(D+1)``; the check is ``4(D+1)^2 p_bad + 2(D+1) p_dense <= 1/4``
    together with ``D <= d_limit``.  Defaults for the two probabilities are
    the closed-form bounds at ``p = 2k ln n / n``.
    """
    mp = analytics.mp
    d_limit = analytics.degree_limit_mp(n, k) - 1
    pb = analytics.badpair_bound_coarse(n, k) if p_bad is None else mp.mpf(p_bad)
    pd = analytics.dense_bound_per_edge(n, k) if p_dense is None else mp.mpf(p_dense)
    total = 4 * mp.mpf(D + 1) ** 2 * pb + 2 * mp.mpf(D + 1) * pd
    hyp = {
        "n>=30": n >= 30,
        "k>=2": k >= 2,
        "k<=sqrt(n/ln n)": k * k * float(mp.log(n)) <= n,
    }
    ok = bool(total <= mp.mpf(1) / 4 and D <= d_limit)
    return LllCheck(n, k, D, d_limit, pb, pd, total, ok, hyp)


def lll_condition(probs: Sequence[float], dependents: Sequence[Sequence[int]]) -> tuple[bool, float]:
    """Generic local-lemma check: for every event ``i``,
    ``sum_{j in S_i + {i}} P(A_j) <= 1/4``.

    Returns ``(satisfied, worst_sum)``.
    """
    if len(probs) != len(dependents):
        raise ValueError("need one dependency set per event")
    worst = 0.0
    for i, deps in enumerate(dependents):
        idx = set(int(j) for j in deps) | {i}
        worst = max(worst, float(sum(probs[j] for j in idx)))
    return worst <= 0.25, worst
