"""Seeded Monte Carlo estimators for the closed-form probabilities.

Trials are grouped into fixed blocks of ``BLOCK`` trials; block ``b`` draws
from the stream ``(seed, target, b)``.  Block layout never depends on the
number of workers, and the reduction is an integer success count, so the
estimate is identical for any ``jobs``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .hypergraph import random_uniform
from .ordering import count_bad_pairs, draw_weights, numeration_from_weights, resolve_p
from .rng import stream

__all__ = ["BLOCK", "TARGETS", "McEstimate", "Verdict", "mc_estimate", "compare"]

BLOCK = 1 << 16


@dataclass
class McEstimate:
    target: str
    params: dict
    trials: int
    seed: int
    successes: int

    @property
    def estimate(self) -> float:
        return self.successes / self.trials

    @property
    def std_error(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.trials)

    def params_text(self) -> str:
        return ";".join(f"{k}={self.params[k]}" for k in sorted(self.params))

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "trials": self.trials,
            "seed": self.seed,
            "successes": self.successes,
            "estimate": self.estimate,
            "std_error": self.std_error,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(["target", "params", "trials", "seed", "estimate", "std_error"])
        w.writerow([self.target, self.params_text(), self.trials, self.seed,
                    repr(self.estimate), repr(self.std_error)])
        return buf.getvalue()


# --------------------------------------------------------------------------
# per-block kernels: (rng, count, params) -> successes
# --------------------------------------------------------------------------


def _kth(w: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """k-th smallest and k-th largest of each row."""
    n = w.shape[1]
    part = np.partition(w, (k - 1, n - k), axis=1)
    return part[:, k - 1], part[:, n - k]


def _order_stat(rng, count, prm) -> int:
    n, k, t = prm["n"], prm["k"], prm["t"]
    w = draw_weights(rng, (count, n))
    _, l = _kth(w, k)
    return int(np.count_nonzero(l <= t))


def _dense(rng, count, prm) -> int:
    n, k, p = prm["n"], prm["k"], prm["p"]
    w = draw_weights(rng, (count, n))
    f, l = _kth(w, k)
    return int(np.count_nonzero(l - f <= (1 - p) / 2))


def _badpair(rng, count, prm) -> int:
    """Edges ``f = 0..n-1`` and ``s`` sharing vertices ``0..h-1`` with ``f``.

    A trial succeeds when some shared vertex is among the top ``k`` of ``f``
    and the bottom ``k`` of ``s``; with ``window`` set, that vertex's weight
    must also lie in ``[(1-p)/2, (1+p)/2]``.
    """
    n, k, h = prm["n"], prm["k"], prm["h"]
    if h >= 2 * k:
        return 0
    w = draw_weights(rng, (count, 2 * n - h))
    wf = w[:, :n]
    ws = np.concatenate([w[:, :h], w[:, n:]], axis=1)
    _, l_f = _kth(wf, k)
    f_s, _ = _kth(ws, k)
    shared = w[:, :h]
    hit = (shared >= l_f[:, None]) & (shared <= f_s[:, None])
    if prm.get("window"):
        p = prm["p"]
        hit &= (shared >= (1 - p) / 2) & (shared <= (1 + p) / 2)
    return int(np.count_nonzero(hit.any(axis=1)))


def _colorer_success(rng, count, prm) -> int:
    """One numeration per trial on a fresh random instance; success = no bad pair."""
    v, n, m, k = prm["v"], prm["n"], prm["m"], prm["k"]
    seeds = rng.integers(0, 2**62, size=count)
    wins = 0
    for s in seeds.tolist():
        H = random_uniform(v, n, m, s)
        w = draw_weights(stream(s, "mc-numeration"), v)
        wins += count_bad_pairs(H, numeration_from_weights(w), k) == 0
    return wins


TARGETS: dict[str, tuple[tuple[str, ...], Callable]] = {
    "order_stat": (("n", "k", "t"), _order_stat),
    "dense": (("n", "k", "p"), _dense),
    "badpair": (("n", "k", "h"), _badpair),
    "colorer_success": (("v", "n", "m", "k"), _colorer_success),
}


def _normalize(target: str, params: dict) -> dict:
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; choose from {sorted(TARGETS)}")
    need, _ = TARGETS[target]
    missing = [x for x in need if params.get(x) is None]
    if target == "badpair" and params.get("window") and params.get("p") is None:
        missing.append("p")
    if missing:
        raise ValueError(f"target {target!r} is missing parameters: {', '.join(missing)}")
    prm = {k: v for k, v in params.items() if v is not None}
    if "p" in prm:
        prm["p"] = resolve_p(prm["p"], prm["n"], prm["k"])
    for key in ("n", "k", "h", "v", "m"):
        if key in prm:
            prm[key] = int(prm[key])
    if "n" in prm and "k" in prm and not 1 <= prm["k"] <= prm["n"]:
        raise ValueError("need 1 <= k <= n")
    if target == "badpair" and not 1 <= prm["h"] <= prm["n"]:
        raise ValueError("need 1 <= h <= n")
    if "window" in prm:
        prm["window"] = bool(prm["window"])
    return prm


def mc_estimate(target: str, params: dict, trials: int, seed: int, jobs: int = 1) -> McEstimate:
    """Estimate the probability named by ``target`` from ``trials`` independent trials.

    Targets and their parameters: ``order_stat`` (n, k, t): ``l <= t`` for the
    k-th largest of n uniforms; ``dense`` (n, k, p): edge is dense;
    ``badpair`` (n, k, h, optional p and window): two edges sharing h vertices
    form a bad pair; ``colorer_success`` (v, n, m, k): a single random
    numeration of a random instance has no bad pair.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    prm = _normalize(target, params)
    kernel = TARGETS[target][1]
    nblocks = -(-trials // BLOCK)

    def run(b: int) -> int:
        count = min(BLOCK, trials - b * BLOCK)
        return kernel(stream(seed, target, b), count, prm)

    if jobs > 1 and nblocks > 1:
        with ThreadPoolExecutor(jobs) as pool:
            wins = sum(pool.map(run, range(nblocks)))
    else:
        wins = sum(run(b) for b in range(nblocks))
    return McEstimate(target, prm, trials, seed, int(wins))


@dataclass
class Verdict:
    passed: bool
    analytic: float
    estimate: float
    sigma: float
    tolerance: float
    mode: str
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "analytic": self.analytic, "estimate": self.estimate,
                "sigma": self.sigma, "tolerance": self.tolerance, "mode": self.mode}


def compare(analytic: float, mc: McEstimate, sigmas: float = 3.0, mode: str = "equal") -> Verdict:
    """Check a closed form against an estimate.

    ``equal``: ``|analytic - estimate| <= sigmas * sigma + 1e-9``;
    ``upper`` (analytic is an upper bound): ``estimate <= analytic + sigmas * sigma``.
    ``sigma`` is the larger of the estimate's standard error and the binomial
    standard error implied by the analytic value, so that a rare event
    observed zero times is not judged with a zero-width interval.
    """
    if sigmas <= 0:
        raise ValueError("sigmas must be positive")
    a = float(analytic)
    a_clip = min(max(a, 0.0), 1.0)
    sigma = max(mc.std_error, math.sqrt(a_clip * (1 - a_clip) / mc.trials))
    if mode == "equal":
        tol = sigmas * sigma + 1e-9
        ok = abs(a - mc.estimate) <= tol
    elif mode == "upper":
        tol = sigmas * sigma
        ok = mc.estimate <= a + tol
    else:
        raise ValueError(f"mode must be 'equal' or 'upper', got {mode!r}")
    return Verdict(bool(ok), a, mc.estimate, sigma, tol, mode)
