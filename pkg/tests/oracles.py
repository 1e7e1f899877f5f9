"""Independent reference implementations used only by the tests.

Everything here is deliberately naive: pure-Python enumeration, direct
numerical integration, or a different library, so that agreement with the
package is evidence rather than a tautology.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import comb, factorial

import mpmath
import networkx as nx


def brute_bk(edges, v, k) -> bool:
    for colors in product((1, 2), repeat=v):
        if all(
            sum(colors[x] == 1 for x in e) >= k and sum(colors[x] == 2 for x in e) >= k
            for e in edges
        ):
            return True
    return False


def first_last_sets(e, rank, k):
    srt = sorted(e, key=lambda x: rank[x])
    return set(srt[:k]), set(srt[-k:])


def brute_bad_pairs(edges, rank, k):
    fl = [first_last_sets(e, rank, k) for e in edges]
    out = []
    for i, (_, L) in enumerate(fl):
        for j, (F, _) in enumerate(fl):
            if i != j:
                out += [(i, j, x) for x in sorted(L & F)]
    return sorted(out)


def brute_numeration(edges, v, k) -> bool:
    for order in permutations(range(v)):
        rank = {x: r for r, x in enumerate(order)}
        if not brute_bad_pairs(edges, rank, k):
            return True
    return False


def has_odd_cycle(edges, v) -> bool:
    G = nx.Graph()
    G.add_nodes_from(range(v))
    G.add_edges_from(edges)
    return not nx.is_bipartite(G)


def binomial_tail_cdf(n, k, t) -> Fraction:
    """P(k-th largest of n uniforms <= t) = P(at least n-k+1 of them <= t)."""
    t = Fraction(t)
    return sum(comb(n, j) * t**j * (1 - t) ** (n - j) for j in range(n - k + 1, n + 1))


def dense_quad(n, k, d, dps=30):
    """P(l - f <= d) by 2-D quadrature of the joint density of the k-th
    smallest (x) and the k-th largest (y) of n uniforms."""
    with mpmath.workdps(dps):
        c = mpmath.mpf(factorial(n)) / (factorial(k - 1) ** 2 * factorial(n - 2 * k))
        d = mpmath.mpf(d)

        def inner(x):
            hi = min(1, x + d)
            return mpmath.quad(
                lambda y: x ** (k - 1) * (y - x) ** (n - 2 * k) * (1 - y) ** (k - 1), [x, hi]
            )

        return c * mpmath.quad(inner, [0, 1 - d, 1])


def dense_spacing(n, k, d) -> Fraction:
    """P(l - f <= d) exactly: l - f is a sum of n-2k+1 uniform spacings, a
    Beta(n-2k+1, 2k) variable, whose CDF at d is P(Bin(n, d) >= n-2k+1)."""
    d = Fraction(d)
    return sum(comb(n, j) * d**j * (1 - d) ** (n - j) for j in range(n - 2 * k + 1, n + 1))


def badpair_enum(n, k, h, single=False) -> Fraction:
    """Exact probability over all relative orders of the 2n-h vertices that
    some shared vertex (or vertex 0 only, with ``single``) lies in the top k
    of f = 0..n-1 and the bottom k of s = 0..h-1, n..2n-h-1."""
    V = 2 * n - h
    f = list(range(n))
    s = list(range(h)) + list(range(n, V))
    hits = total = 0
    for order in permutations(range(V)):
        rank = {x: r for r, x in enumerate(order)}
        top = set(sorted(f, key=rank.__getitem__)[-k:])
        bot = set(sorted(s, key=rank.__getitem__)[:k])
        shared = [0] if single else range(h)
        hits += any(x in top and x in bot for x in shared)
        total += 1
    return Fraction(hits, total)


def eq6_reference(n, k, dps=60):
    """12/e^26 * sqrt(n/(k ln n)) * 2^(n-1)/C(n-1,k-1) at high precision."""
    with mpmath.workdps(dps):
        return (
            12 * mpmath.exp(-26) * mpmath.sqrt(mpmath.mpf(n) / (k * mpmath.log(n)))
            * mpmath.mpf(2) ** (n - 1) / comb(n - 1, k - 1)
        )
