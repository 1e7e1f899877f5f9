"""``propbk`` command-line interface.

Exit codes: 0 success, 1 honest negative result (no coloring within budget,
search stopped by budget, failed audit or comparison), 2 usage or input
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from . import __version__
from . import analytics as an
from .exact import LimitExceeded, decide_b_chains, decide_bk_numeration, find_bk_coloring, min_nonBk_search
from .hypergraph import HypergraphError, generate, intersection_profile, parse_any, to_hg, to_json
from .montecarlo import compare, mc_estimate
from .ordering import Coloring, resolve_p, verify_coloring
from .randomized import (
    bk_epsilon_prune,
    degree_condition_check,
    naive_random_colorer,
    ordering_colorer,
    union_bound_fail_prob,
)

SCHEMA_VERSION = "1"
DEFAULT_GRID = (30, 40, 60, 100, 200, 500, 1000, 2000)


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# output helpers
# --------------------------------------------------------------------------


def _json(command: str, payload: dict) -> str:
    doc = {"schema": f"propbk/{command}/v{SCHEMA_VERSION}", **payload}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str | None):
    text = _read_input(path)
    try:
        return parse_any(text)
    except (HypergraphError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot parse hypergraph: {exc}") from exc


def _p_value(p: str | None, n: int, k: int, default: str) -> float:
    try:
        return resolve_p(p if p is not None else default, n, k)
    except ValueError as exc:
        raise UsageError(f"bad --p value {p!r}: use paper-k, paper-k1, paper-eps or a number") from exc


# --------------------------------------------------------------------------
# commands: each returns (text, exit_code)
# --------------------------------------------------------------------------


def cmd_gen(a) -> tuple[str, int]:
    params = {"v": a.v, "n": a.n, "m": a.m, "seed": a.seed, "length": a.length}
    need = {"complete": ("v", "n"), "random": ("v", "n", "m"), "odd_cycle": ("length",)}
    missing = [x for x in need.get(a.family, ()) if params[x] is None]
    if missing:
        raise UsageError(f"--family {a.family} needs --{' --'.join(missing)}")
    H = generate(a.family, **{k: v for k, v in params.items() if v is not None})
    if a.format == "json":
        return to_json(H) + "\n", 0
    return to_hg(H), 0


def cmd_check(a) -> tuple[str, int]:
    H = _load(a.file)
    prof = intersection_profile(H)
    out = {
        "vertex_count": H.vertex_count,
        "edges": H.m,
        "uniformity": H.uniformity,
        "max_intersection": prof.max_intersection,
        "intersection_degree": prof.intersection_degree,
        "simple": prof.is_simple,
    }
    if a.h is not None:
        out["property_Ah"] = prof.has_property_Ah(a.h)
        out["h"] = a.h
    code = 0
    if a.coloring is not None:
        try:
            c = Coloring.from_string(a.coloring)
            out["violations"] = verify_coloring(H, c, a.k)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        out["k"] = a.k
        out["coloring_ok"] = not out["violations"]
        code = 0 if out["coloring_ok"] else 1
    if a.format == "json":
        return _json("check", out), code
    if a.format == "csv":
        return _csv([["key", "value"]] + [[k, json.dumps(v)] for k, v in out.items()]), code
    return "".join(f"{k}: {json.dumps(v)}\n" for k, v in out.items()), code


def cmd_decide(a) -> tuple[str, int]:
    H = _load(a.file)
    witness = None
    try:
        if a.method == "coloring":
            c = find_bk_coloring(H, a.k)
            verdict = c is not None
            witness = None if c is None else Coloring(c).to_string()
        elif a.method == "numeration":
            verdict = decide_bk_numeration(H, a.k)
        else:
            if a.k != 1:
                raise UsageError("--method chains decides property B only (--k 1)")
            verdict = decide_b_chains(H)
    except LimitExceeded as exc:
        raise UsageError(str(exc)) from exc
    except HypergraphError as exc:
        raise UsageError(str(exc)) from exc
    out = {"k": a.k, "method": a.method, "has_property": verdict, "witness": witness}
    if a.format == "json":
        return _json("decide", out), 0
    if a.format == "csv":
        return _csv([["k", "method", "has_property", "witness"],
                     [a.k, a.method, str(verdict).lower(), witness or ""]]), 0
    line = f"B_{a.k}: {str(verdict).lower()}\n"
    if witness:
        line += f"coloring: {witness}\n"
    return line, 0


def cmd_color(a) -> tuple[str, int]:
    H = _load(a.file)
    sub = None
    try:
        if a.algorithm == "naive":
            c, stats = naive_random_colorer(H, a.k, a.max_trials, a.seed, jobs=a.jobs)
        elif a.algorithm == "ordering":
            p = a.p if a.p is not None else "paper-k"
            if a.p is not None:
                _p_value(a.p, H.uniformity or H.min_edge_size, a.k, "paper-k")
            c, stats = ordering_colorer(H, a.k, p, a.max_trials, a.seed, jobs=a.jobs,
                                        require_non_dense=a.require_non_dense)
        else:
            if a.eps is None:
                raise UsageError("--algorithm prune needs --eps")
            p = a.p if a.p is not None else "paper-eps"
            _p_value(p, H.uniformity or H.min_edge_size, a.k, "paper-eps")
            res, stats = bk_epsilon_prune(H, a.k, a.eps, p, a.max_trials, a.seed, jobs=a.jobs)
            c = None if res is None else res[1]
            sub = None if res is None else res[0]
    except HypergraphError as exc:
        raise UsageError(str(exc)) from exc
    code = 0 if c is not None else 1
    if a.format == "csv":
        return stats.to_csv(), code
    out = {
        "algorithm": a.algorithm,
        "k": a.k,
        "coloring": None if c is None else c.to_string(),
        "stats": stats.to_dict(),
    }
    if sub is not None:
        out["kept_edges"] = sub.m
        out["subhypergraph"] = to_hg(sub)
    if a.format == "json":
        return _json("color", out), code
    lines = [f"algorithm: {a.algorithm}", f"trials: {stats.trials_run}",
             f"success_trial: {stats.success_trial}"]
    if c is None:
        lines.append("coloring: none")
    else:
        lines.append(f"coloring: {c.to_string()}")
    if sub is not None:
        lines.append(f"kept_edges: {sub.m} of {H.m}")
    return "\n".join(lines) + "\n", code


def cmd_search(a) -> tuple[str, int]:
    try:
        res = min_nonBk_search(a.n, a.k, a.v_max, a.m_max, budget=a.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    code = 0 if res.exhausted else 1
    if a.format == "json":
        return _json("search", res.to_dict()), code
    if a.format == "csv":
        d = res.to_dict()
        keys = ["n", "k", "v_max", "m_max", "min_edges", "exhausted", "examined", "budget",
                "levels_completed"]
        return _csv([keys, [d[x] if d[x] is not None else "" for x in keys]]), code
    lines = [f"min_edges: {res.min_edges if res.min_edges is not None else 'none'}",
             f"exhausted: {str(res.exhausted).lower()}",
             f"examined: {res.examined}"]
    text = "\n".join(lines) + "\n"
    if res.witness is not None:
        text += "witness:\n" + to_hg(res.witness)
    return text, code


def _constants(pairs: list[str] | None) -> dict[str, float]:
    out = {}
    for item in pairs or []:
        name, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--const expects name=value, got {item!r}")
        try:
            out[name] = float(val)
        except ValueError as exc:
            raise UsageError(f"--const {name}: not a number") from exc
    return out


def cmd_bounds(a) -> tuple[str, int]:
    try:
        rep = an.bounds_report(a.n, a.k, h=a.h, eps=a.eps, constants=_constants(a.const))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if a.format == "json":
        return _json("bounds", rep.to_dict()), 0
    if a.format == "csv":
        return _csv([["name", "value_log2", "flags"]] + [list(r) for r in rep.rows()]), 0
    lines = []
    for name, b in sorted(rep.bounds.items()):
        tags = []
        if b.shape_only:
            tags.append("shape-only")
        if b.vacuous:
            tags.append("vacuous")
        tags += [f"!{f}" for f, ok in sorted(b.flags.items()) if not ok]
        lines.append(f"{name:24s} {an.mp.nstr(b.value, 6):>14s}  log2={b.value_log2:.4f}  {' '.join(tags)}".rstrip())
    return "\n".join(lines) + "\n", 0


def _grid(a) -> list[tuple[int, int]]:
    ns = a.n or list(DEFAULT_GRID)
    pts = []
    for n in ns:
        ks = a.k if a.k else an.admissible_ks(n)
        pts += [(n, k) for k in ks]
    return pts


def cmd_audit(a) -> tuple[str, int]:
    pts = _grid(a)

    def one(pt):
        n, k = pt
        return an.factor_audit(n, k), an.inequality_audit(n, k, a.h)

    if a.jobs > 1:
        with ThreadPoolExecutor(a.jobs) as pool:
            results = list(pool.map(one, pts))
    else:
        results = [one(pt) for pt in pts]
    # points with k > sqrt(n / ln n) are replayed but do not decide the verdict
    inside = [k in an.admissible_ks(n) for n, k in pts]
    ok = all(f.caps_hold and ia.all_hold for (f, ia), ins in zip(results, inside) if ins)
    code = 0 if ok else 1
    if a.format == "json":
        items = [{"admissible": ins, "factors": f.to_dict(), "inequalities": ia.to_dict()}
                 for (f, ia), ins in zip(results, inside)]
        return _json("audit", {"h": a.h, "all_hold": ok, "points": items}), code
    if a.format == "csv":
        rows = [["n", "k", "name", "lhs", "rhs", "holds"]]
        for f, ia in results:
            for cap, held in sorted(f.caps.items()):
                rows.append([f.n, f.k, f"cap:{cap}", "", "", int(held)])
            for r in ia.rows:
                rows.append([ia.n, ia.k, r.name, an.mp.nstr(r.lhs, 20), an.mp.nstr(r.rhs, 20), int(r.holds)])
        return _csv(rows), code
    lines = []
    for (f, ia), ins in zip(results, inside):
        bad = [r.name for r in ia.failures()] + [c for c, v in f.caps.items() if not v]
        status = "ok" if not bad else "FAIL " + ",".join(bad)
        if not ins:
            status += " (outside k <= sqrt(n/ln n), not counted)"
        lines.append(f"n={ia.n} k={ia.k} rows={len(ia.rows)} {status}")
    lines.append(f"all_hold: {str(ok).lower()}")
    return "\n".join(lines) + "\n", code


def cmd_prob(a) -> tuple[str, int]:
    q = a.quantity
    need = {"order_stat": ("n", "k", "t"), "dense": ("n", "k"), "badpair": ("n", "k", "h"),
            "union": ("n", "k", "m"), "eps_window": ("n", "k"), "degree": ("n", "k", "D")}
    missing = [x for x in need[q] if getattr(a, x) is None]
    if missing:
        raise UsageError(f"prob {q} needs --{' --'.join(missing)}")
    try:
        if q == "order_stat":
            val = an.order_stat_cdf_mp(a.n, a.k, a.t)
            out = {"value": an.mp.nstr(val, 30),
                   "quadrature": an.mp.nstr(an.order_stat_cdf_quad(a.n, a.k, a.t), 30)}
        elif q == "dense":
            out = an.p_dense_exact(a.n, a.k, _p_value(a.p, a.n, a.k, "paper-k")).to_dict()
        elif q == "badpair":
            out = an.p_badpair_upper(a.n, a.k, a.h, _p_value(a.p, a.n, a.k, "paper-k")).to_dict()
        elif q == "union":
            out = {"value": repr(union_bound_fail_prob(a.n, a.k, a.m))}
        elif q == "eps_window":
            lo, hi, rem = an.epsilon_window(a.n, a.k, a.R, a.S)
            out = {"lo": an.mp.nstr(lo, 30), "hi": an.mp.nstr(hi, 30),
                   "remark_hi": None if rem is None else an.mp.nstr(rem, 30),
                   "I_ge_J": an.eps_feasible(a.n, a.k, a.R)}
        else:
            out = degree_condition_check(a.n, a.k, a.D).to_dict()
    except (ValueError, HypergraphError) as exc:
        raise UsageError(str(exc)) from exc
    out = {"quantity": q, **out}
    if a.format == "json":
        return _json("prob", out), 0
    flat = {k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v) for k, v in out.items()}
    if a.format == "csv":
        return _csv([list(flat), list(flat.values())]), 0
    return "".join(f"{k}: {v}\n" for k, v in flat.items()), 0


def cmd_mc(a) -> tuple[str, int]:
    params = {"n": a.n, "k": a.k, "t": a.t, "p": a.p, "h": a.h, "v": a.v, "m": a.m}
    if a.window:
        params["window"] = True
    if a.target in ("dense",) and params["p"] is None:
        params["p"] = "paper-k"
    try:
        est = mc_estimate(a.target, params, a.trials, a.seed, jobs=a.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = est.to_dict()
    code = 0
    if a.compare:
        prm = est.params
        if a.target == "order_stat":
            ref, mode = an.order_stat_cdf_mp(prm["n"], prm["k"], prm["t"]), "equal"
        elif a.target == "dense":
            ref, mode = an.p_dense_exact(prm["n"], prm["k"], prm["p"]).analytic, "equal"
        elif a.target == "badpair":
            if prm.get("window"):
                ref = an.p_badpair_upper(prm["n"], prm["k"], prm["h"], prm["p"]).analytic
                mode = "upper"
            elif prm["h"] == 1:
                ref, mode = an.p_badpair_single_vertex(prm["n"], prm["k"], 1), "equal"
            else:
                ref = prm["h"] * an.p_badpair_single_vertex(prm["n"], prm["k"], prm["h"])
                mode = "upper"
        else:
            raise UsageError("--compare has no closed form for target colorer_success")
        v = compare(float(ref), est, a.sigmas, mode)
        out["compare"] = v.to_dict()
        code = 0 if v.passed else 1
    if a.format == "json":
        return _json("mc", out), code
    if a.format == "csv":
        text = est.to_csv()
        if a.compare:
            text = text.rstrip("\n") + f",{out['compare']['passed']}\n"
            text = text.replace("std_error\n", "std_error,passed\n", 1)
        return text, code
    lines = [f"target: {est.target}", f"params: {est.params_text()}", f"trials: {est.trials}",
             f"estimate: {est.estimate!r}", f"std_error: {est.std_error!r}"]
    if a.compare:
        c = out["compare"]
        lines += [f"analytic: {c['analytic']!r}", f"mode: {c['mode']}",
                  f"verdict: {'pass' if c['passed'] else 'fail'}"]
    return "\n".join(lines) + "\n", code


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--jobs", type=int, default=1, help="worker threads; results do not depend on it")

    p = argparse.ArgumentParser(prog="propbk", description="Hypergraph property B_k laboratory.")
    p.add_argument("--version", action="version", version=f"propbk {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a hypergraph (.hg)")
    g.add_argument("--family", required=True, choices=("fano", "complete", "random", "odd_cycle"))
    g.add_argument("--v", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--length", type=int)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", parents=[common], help="structural flags and coloring verification")
    c.add_argument("file", nargs="?", help=".hg or JSON file (default stdin)")
    c.add_argument("--k", type=int, default=1)
    c.add_argument("--h", type=int)
    c.add_argument("--coloring", help="string over {1,2}, one character per vertex")
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("decide", parents=[common], help="exact B_k verdict")
    d.add_argument("file", nargs="?")
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--method", choices=("coloring", "numeration", "chains"), default="coloring")
    d.set_defaults(func=cmd_decide)

    col = sub.add_parser("color", parents=[common], help="randomized colorers")
    col.add_argument("file", nargs="?")
    col.add_argument("--k", type=int, required=True)
    col.add_argument("--algorithm", choices=("ordering", "naive", "prune"), default="ordering")
    col.add_argument("--p", help="paper-k | paper-k1 | paper-eps | <real>")
    col.add_argument("--eps", type=float)
    col.add_argument("--max-trials", type=int, default=100)
    col.add_argument("--require-non-dense", action="store_true")
    col.set_defaults(func=cmd_color)

    s = sub.add_parser("search", parents=[common], help="smallest non-B_k uniform hypergraph")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--v-max", type=int, required=True)
    s.add_argument("--m-max", type=int, required=True)
    s.add_argument("--budget", type=int, default=2_000_000)
    s.set_defaults(func=cmd_search)

    b = sub.add_parser("bounds", parents=[common], help="evaluate lower/upper bounds")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--h", type=int)
    b.add_argument("--eps", type=float)
    b.add_argument("--const", action="append", metavar="NAME=VALUE",
                   help="constant for shape-only bounds (psi, c_logk, c_eps, c_Ah, c1, c2, delta)")
    b.set_defaults(func=cmd_bounds)

    au = sub.add_parser("audit", parents=[common], help="factor caps and inequality replay over a grid")
    au.add_argument("--n", type=int, nargs="*", help=f"edge sizes (default {' '.join(map(str, DEFAULT_GRID))})")
    au.add_argument("--k", type=int, nargs="*", help="values of k (default: all admissible)")
    au.add_argument("--h", type=int)
    au.set_defaults(func=cmd_audit)

    pr = sub.add_parser("prob", parents=[common], help="closed-form probabilities")
    pr.add_argument("quantity", choices=("order_stat", "dense", "badpair", "union", "eps_window", "degree"))
    for name, typ in (("n", int), ("k", int), ("h", int), ("m", int), ("D", int), ("t", float)):
        pr.add_argument(f"--{name}", type=typ)
    pr.add_argument("--p")
    pr.add_argument("--R", type=float, default=1.0)
    pr.add_argument("--S", type=float)
    pr.set_defaults(func=cmd_prob)

    mc = sub.add_parser("mc", parents=[common], help="Monte Carlo estimate, optional comparison")
    mc.add_argument("--target", required=True, choices=("order_stat", "dense", "badpair", "colorer_success"))
    for name, typ in (("n", int), ("k", int), ("h", int), ("v", int), ("m", int), ("t", float)):
        mc.add_argument(f"--{name}", type=typ)
    mc.add_argument("--p")
    mc.add_argument("--window", action="store_true", help="badpair: restrict shared weight to the window")
    mc.add_argument("--trials", type=int, default=100_000)
    mc.add_argument("--compare", action="store_true")
    mc.add_argument("--sigmas", type=float, default=3.0)
    mc.set_defaults(func=cmd_mc)
    return p


def run_command(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = a.func(a)
    except UsageError as exc:
        print(f"propbk {a.command}: error: {exc}", file=sys.stderr)
        return 2
    if a.out:
        with open(a.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run_command())
