"""Exhaustive ground truth for property B_k on small hypergraphs.

Two independent deciders are provided: one enumerates 2-colorings, the other
enumerates vertex numerations and applies the first-k / last-k criterion.
They must agree wherever both run.  :func:`min_nonBk_search` finds the
smallest non-B_k ``n``-uniform hypergraph on a bounded vertex set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, islice, permutations
from math import comb

import numpy as np

from .hypergraph import Hypergraph, HypergraphError, build_hypergraph, to_hg

__all__ = [
    "LimitExceeded",
    "SearchResult",
    "decide_bk_exhaustive",
    "decide_bk_numeration",
    "decide_b_chains",
    "find_bk_coloring",
    "min_nonBk_search",
]

COLORING_LIMIT = 24
NUMERATION_LIMIT = 10
_CHUNK = 1 << 18


class LimitExceeded(RuntimeError):
    pass


def _mask_chunks(nbits: int, chunk: int = _CHUNK):
    total = 1 << nbits
    for start in range(0, total, chunk):
        yield np.arange(start, min(total, start + chunk), dtype=np.uint64)


def find_bk_coloring(H: Hypergraph, k: int, limit: int = COLORING_LIMIT) -> np.ndarray | None:
    """Return some B_k coloring (array over {1, 2}) or ``None``.

    Colorings are bitmasks (bit v set means color 1).  Swapping colors
    preserves B_k, so the last vertex is pinned to color 2 and only
    ``2**(V-1)`` masks are scanned, a chunk at a time, dropping masks as soon
    as one edge rules them out.
    """
    V = H.vertex_count
    if V > limit:
        raise LimitExceeded(f"{V} vertices exceeds the exhaustive limit {limit}")
    if H.m == 0:
        return np.full(V, 2, dtype=np.int8)
    if H.min_edge_size < 2 * k:
        return None
    # most constraining edges first: smallest edges prune fastest
    order = sorted(range(H.m), key=lambda i: len(H.edges[i]))
    emasks = [(np.uint64(H.edge_masks[i]), len(H.edges[i])) for i in order]
    for masks in _mask_chunks(V - 1):
        for em, size in emasks:
            ones = np.bitwise_count(masks & em)
            masks = masks[(ones >= k) & (ones <= size - k)]
            if masks.size == 0:
                break
        if masks.size:
            bits = int(masks[0])
            return np.array([1 if bits >> v & 1 else 2 for v in range(V)], dtype=np.int8)
    return None


def decide_bk_exhaustive(H: Hypergraph, k: int, limit: int = COLORING_LIMIT) -> bool:
    """True iff some 2-coloring leaves at least ``k`` vertices of each color in every edge."""
    return find_bk_coloring(H, k, limit) is not None


def _perm_chunks(V: int, chunk: int):
    """Vertex orders (rank -> vertex) with vertex 0 ranked before vertex 1.

    Reversing a numeration swaps first-k and last-k sets, which maps good
    numerations to good numerations, so half the orders suffice.
    """
    it = permutations(range(V))
    if V >= 2:
        it = (p for p in it if p.index(0) < p.index(1))
    while True:
        block = list(islice(it, chunk))
        if not block:
            return
        yield np.asarray(block, dtype=np.int64)


def _rank_matrix(orders: np.ndarray) -> np.ndarray:
    ranks = np.empty_like(orders)
    rows = np.arange(orders.shape[0])[:, None]
    ranks[rows, orders] = np.arange(orders.shape[1])[None, :]
    return ranks


def decide_bk_numeration(H: Hypergraph, k: int, limit: int = NUMERATION_LIMIT) -> bool:
    """True iff some numeration has no bad pair.

    A numeration has no bad pair exactly when the union of all last-k sets is
    disjoint from the union of all first-k sets (within one edge the two sets
    never meet once the edge has 2k vertices).
    """
    V = H.vertex_count
    if V > limit:
        raise LimitExceeded(f"{V} vertices exceeds the numeration limit {limit}")
    if H.m and H.min_edge_size < 2 * k:
        raise HypergraphError(f"every edge needs at least {2 * k} vertices")
    if H.m == 0:
        return True
    edges = [np.asarray(e, dtype=np.int64) for e in H.edges]
    bit = np.left_shift(np.uint64(1), np.arange(V, dtype=np.uint64))
    for orders in _perm_chunks(V, 20000):
        ranks = _rank_matrix(orders)
        Fu = np.zeros(orders.shape[0], dtype=np.uint64)
        Lu = np.zeros(orders.shape[0], dtype=np.uint64)
        for e in edges:
            srt = np.take(e, np.argsort(ranks[:, e], axis=1))
            b = bit[srt]
            Fu |= np.bitwise_or.reduce(b[:, :k], axis=1)
            Lu |= np.bitwise_or.reduce(b[:, -k:], axis=1)
        if np.any((Fu & Lu) == 0):
            return True
    return False


def decide_b_chains(H: Hypergraph, limit: int = NUMERATION_LIMIT) -> bool:
    """True iff some numeration admits no ordered 2-chain.

    For uniform hypergraphs this is equivalent to property B.
    """
    V = H.vertex_count
    if V > limit:
        raise LimitExceeded(f"{V} vertices exceeds the numeration limit {limit}")
    pairs = []
    for i, j in combinations(range(H.m), 2):
        common = H.edge_masks[i] & H.edge_masks[j]
        if common.bit_count() == 1:
            x = common.bit_length() - 1
            pairs += [(i, j, x), (j, i, x)]
    if not pairs:
        return True
    pi, pj, px = (np.asarray(c, dtype=np.int64) for c in zip(*pairs))
    edges = [np.asarray(e, dtype=np.int64) for e in H.edges]
    # reversal maps a 2-chain (a, b) to the 2-chain (b, a); half the orders suffice
    for orders in _perm_chunks(V, 20000):
        ranks = _rank_matrix(orders)
        top = np.stack([e[np.argmax(ranks[:, e], axis=1)] for e in edges], axis=1)
        bottom = np.stack([e[np.argmin(ranks[:, e], axis=1)] for e in edges], axis=1)
        chain = (top[:, pi] == px) & (bottom[:, pj] == px)
        if np.any(~chain.any(axis=1)):
            return True
    return False


# --------------------------------------------------------------------------
# minimal non-B_k search
# --------------------------------------------------------------------------


@dataclass
class SearchResult:
    n: int
    k: int
    v_max: int
    m_max: int
    min_edges: int | None
    witness: Hypergraph | None
    exhausted: bool
    examined: int
    budget: int
    levels_completed: int
    per_level: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if (self.min_edges is None) != (self.witness is None):
            raise ValueError("witness present iff min_edges present")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "v_max": self.v_max,
            "m_max": self.m_max,
            "min_edges": self.min_edges,
            "witness": None if self.witness is None else to_hg(self.witness),
            "exhausted": self.exhausted,
            "examined": self.examined,
            "budget": self.budget,
            "levels_completed": self.levels_completed,
            "per_level": {str(m): c for m, c in sorted(self.per_level.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def min_nonBk_search(
    n: int, k: int, v_max: int, m_max: int, budget: int = 2_000_000
) -> SearchResult:
    """Smallest ``m <= m_max`` admitting an ``n``-uniform non-B_k hypergraph on
    at most ``v_max`` vertices.

    Edge sets are enumerated level by level in lexicographic order of the
    candidate ``n``-subsets.  Two normalizations prune relabelled copies: the
    first edge is ``{0..n-1}`` and the vertices used form a prefix
    ``{0..u-1}``.  Every hypergraph is isomorphic to one of this form, so the
    minimum is exact.  If ``budget`` hypergraphs are examined before the
    search finishes, the result has ``exhausted=False``.
    """
    if n < max(2 * k, 2):
        raise ValueError(f"need n >= max(2k, 2); got n={n}, k={k}")
    if v_max < n:
        raise ValueError(f"v_max={v_max} is smaller than n={n}")
    cands = list(combinations(range(v_max), n))
    cmask = [sum(1 << v for v in c) for c in cands]
    first, rest = cmask[0], list(range(1, len(cands)))
    examined = 0
    per_level: dict[int, int] = {}
    for m in range(1, m_max + 1):
        count = 0
        if m - 1 > len(rest):
            break
        for combo in combinations(rest, m - 1):
            union = first
            for c in combo:
                union |= cmask[c]
            u = union.bit_length()
            if union != (1 << u) - 1:
                continue
            if examined >= budget:
                per_level[m] = count
                return SearchResult(n, k, v_max, m_max, None, None, False, examined, budget, m - 1, per_level)
            examined += 1
            count += 1
            H = build_hypergraph(u, [cands[0]] + [cands[c] for c in combo])
            if not decide_bk_exhaustive(H, k):
                per_level[m] = count
                return SearchResult(n, k, v_max, m_max, m, H, True, examined, budget, m - 1, per_level)
        per_level[m] = count
    levels = min(m_max, len(rest) + 1)
    return SearchResult(n, k, v_max, m_max, None, None, True, examined, budget, levels, per_level)


def search_space_size(n: int, v_max: int, m_max: int) -> int:
    """Upper bound on hypergraphs visited before normalization pruning."""
    c = comb(v_max, n)
    return sum(comb(c - 1, m - 1) for m in range(1, m_max + 1))
