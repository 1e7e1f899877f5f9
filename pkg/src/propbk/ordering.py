"""Vertex numerations and the ordering criterion for property B_k.

A numeration ``sigma`` ranks vertices ``1..V``.  For an edge ``f`` the first-k
set ``F(f)`` holds its k lowest-ranked vertices and ``L(f)`` its k
highest-ranked ones.  A *bad pair* is an ordered pair of distinct edges with
``L(f) & F(s)`` non-empty; a numeration without bad pairs certifies property
B_k through :func:`coloring_from_numeration`.

Ranks induced by weights break ties by vertex index (lower index first).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .hypergraph import Hypergraph, HypergraphError
from .rng import stream

__all__ = [
    "VertexWeights",
    "Numeration",
    "DensityParams",
    "BadPair",
    "Coloring",
    "P_PRESETS",
    "resolve_p",
    "draw_weights",
    "numeration_from_weights",
    "sample_numeration",
    "first_last",
    "edge_extremes",
    "edge_extreme_values",
    "find_bad_pairs",
    "count_bad_pairs",
    "find_ordered_2chains",
    "dense_edges",
    "coloring_from_numeration",
    "verify_coloring",
    "numeration_from_coloring",
]


@dataclass(frozen=True)
class VertexWeights:
    weights: np.ndarray
    seed: int | None = None

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a non-empty 1-d array")
        if np.any(w <= 0.0) or np.any(w >= 1.0):
            raise ValueError("weights must lie in the open interval (0, 1)")
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return self.weights.size


@dataclass(frozen=True, eq=False)
class Numeration:
    """``sigma[v]`` is the 1-based rank of vertex ``v``."""

    sigma: np.ndarray

    def __post_init__(self) -> None:
        s = np.asarray(self.sigma, dtype=np.int64)
        if sorted(s.tolist()) != list(range(1, s.size + 1)):
            raise ValueError("sigma must be a bijection onto 1..V")
        object.__setattr__(self, "sigma", s)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Numeration) and np.array_equal(self.sigma, other.sigma)

    def __hash__(self) -> int:
        return hash(self.sigma.tobytes())

    @property
    def inverse(self) -> np.ndarray:
        """``inverse[r - 1]`` is the vertex of rank ``r``."""
        inv = np.empty_like(self.sigma)
        inv[self.sigma - 1] = np.arange(self.sigma.size)
        return inv

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Numeration":
        """Numeration ranking ``order[0]`` first, ``order[1]`` second, ..."""
        order = np.asarray(order, dtype=np.int64)
        sigma = np.empty_like(order)
        sigma[order] = np.arange(1, order.size + 1)
        return cls(sigma)

    @classmethod
    def identity(cls, v: int) -> "Numeration":
        return cls(np.arange(1, v + 1))

    def to_line(self) -> str:
        return "sigma: " + " ".join(map(str, self.sigma.tolist()))

    @classmethod
    def parse_line(cls, line: str) -> "Numeration":
        tag, _, rest = line.partition(":")
        if tag.strip() != "sigma":
            raise ValueError(f"not a numeration line: {line!r}")
        return cls(np.array([int(x) for x in rest.split()], dtype=np.int64))


@dataclass(frozen=True)
class DensityParams:
    k: int
    p: float

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")

    @property
    def threshold(self) -> float:
        return (1.0 - self.p) / 2.0


class BadPair(NamedTuple):
    f: int
    s: int
    witness: int


@dataclass(frozen=True, eq=False)
class Coloring:
    colors: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.colors, dtype=np.int8)
        if c.ndim != 1 or not np.all((c == 1) | (c == 2)):
            raise ValueError("colors must be a 1-d sequence over {1, 2}")
        object.__setattr__(self, "colors", c)

    def __len__(self) -> int:
        return self.colors.size

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Coloring) and np.array_equal(self.colors, other.colors)

    def __hash__(self) -> int:
        return hash(self.colors.tobytes())

    def to_string(self) -> str:
        return "".join("1" if c == 1 else "2" for c in self.colors.tolist())

    @classmethod
    def from_string(cls, s: str) -> "Coloring":
        return cls(np.array([int(ch) for ch in s.strip()], dtype=np.int8))


# --------------------------------------------------------------------------
# p presets
# --------------------------------------------------------------------------


def _p_k(n: int, k: int) -> float:
    return 2 * k * math.log(n) / n


def _p_k1(n: int, k: int) -> float:
    return math.log(n) / n


def _p_eps(n: int, k: int) -> float:
    return (2 * k * math.log(n) + math.log(math.log(n))) / n


P_PRESETS = {"paper-k": _p_k, "paper-k1": _p_k1, "paper-eps": _p_eps}


def resolve_p(p: str | float, n: int, k: int) -> float:
    """Turn a preset name or a literal into a numeric p for edge size ``n``."""
    if isinstance(p, str):
        if p in P_PRESETS:
            return P_PRESETS[p](n, k)
        return float(p)
    return float(p)


# --------------------------------------------------------------------------
# numerations
# --------------------------------------------------------------------------


def draw_weights(rng: np.random.Generator, size: int | tuple) -> np.ndarray:
    """Uniform draws on the open interval (0, 1) at 2**-53 resolution."""
    return (rng.integers(0, 1 << 53, size=size, dtype=np.int64) + 0.5) / float(1 << 53)


def numeration_from_weights(weights) -> Numeration:
    w = np.asarray(weights, dtype=float)
    order = np.argsort(w, kind="stable")
    return Numeration.from_order(order)


def sample_numeration(vertex_count: int, seed: int) -> tuple[VertexWeights, Numeration]:
    if vertex_count < 1:
        raise ValueError("vertex_count must be >= 1")
    w = draw_weights(stream(seed, "numeration"), vertex_count)
    return VertexWeights(w, seed), numeration_from_weights(w)


def numeration_from_coloring(c: Coloring) -> Numeration:
    """All color-1 vertices first, then color-2, each block in index order."""
    order = np.concatenate([np.flatnonzero(c.colors == 1), np.flatnonzero(c.colors == 2)])
    return Numeration.from_order(order)


# --------------------------------------------------------------------------
# first-k / last-k machinery
# --------------------------------------------------------------------------


def _require_size(H: Hypergraph, k: int) -> None:
    if H.m and H.min_edge_size < 2 * k:
        raise HypergraphError(
            f"every edge needs at least 2k = {2 * k} vertices; smallest has {H.min_edge_size}"
        )


def _size_groups(H: Hypergraph):
    """Yield ``(edge_indices, (g, size) vertex array)`` per distinct edge size."""
    if H.uniformity is not None:
        yield np.arange(H.m), H.edge_array
        return
    by_size: dict[int, list[int]] = {}
    for i, e in enumerate(H.edges):
        by_size.setdefault(len(e), []).append(i)
    for size in sorted(by_size):
        idx = np.asarray(by_size[size])
        yield idx, np.asarray([H.edges[i] for i in idx], dtype=np.int64)


def first_last(H: Hypergraph, sigma: Numeration, k: int) -> tuple[np.ndarray, np.ndarray]:
    """``(F, L)`` arrays of shape ``(m, k)``: first-k and last-k vertices of each edge."""
    _require_size(H, k)
    F = np.empty((H.m, k), dtype=np.int64)
    L = np.empty((H.m, k), dtype=np.int64)
    s = sigma.sigma
    for idx, arr in _size_groups(H):
        order = np.argsort(s[arr], axis=1)
        srt = np.take_along_axis(arr, order, axis=1)
        F[idx] = srt[:, :k]
        L[idx] = srt[:, -k:]
    return F, L


def edge_extreme_values(H: Hypergraph, W: VertexWeights, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-edge ``(f_val, l_val)``: k-th smallest and k-th largest weight."""
    _require_size(H, k)
    fv = np.empty(H.m)
    lv = np.empty(H.m)
    for idx, arr in _size_groups(H):
        srt = np.sort(W.weights[arr], axis=1)
        fv[idx] = srt[:, k - 1]
        lv[idx] = srt[:, -k]
    return fv, lv


def edge_extremes(H: Hypergraph, W: VertexWeights, edge: int, k: int):
    """``(f_val, l_val, first_k, last_k)`` for one edge under the weight order."""
    e = np.asarray(H.edges[edge], dtype=np.int64)
    if e.size < 2 * k:
        raise HypergraphError(f"edge {edge} has {e.size} < 2k = {2 * k} vertices")
    order = np.argsort(W.weights[e], kind="stable")
    srt = e[order]
    wv = W.weights[srt]
    return (
        float(wv[k - 1]),
        float(wv[e.size - k]),
        frozenset(srt[:k].tolist()),
        frozenset(srt[-k:].tolist()),
    )


def _side_counts(col: np.ndarray, v: int) -> np.ndarray:
    return np.bincount(col.ravel(), minlength=v)


def count_bad_pairs(H: Hypergraph, sigma: Numeration, k: int) -> int:
    """Number of ``(f, s, v0)`` triples with ``v0`` in ``L(f) & F(s)``."""
    if H.m == 0:
        return 0
    F, L = first_last(H, sigma, k)
    v = H.vertex_count
    return int(np.dot(_side_counts(L, v), _side_counts(F, v)))


def find_bad_pairs(H: Hypergraph, sigma: Numeration, k: int) -> list[BadPair]:
    """Every ``(f, s, v0)`` with ``f != s`` and ``v0`` in ``L(f) & F(s)``.

    Sorted by ``(f, s, v0)``.  ``f == s`` never qualifies because an edge of
    size >= 2k has disjoint first-k and last-k sets.
    """
    if H.m == 0:
        return []
    F, L = first_last(H, sigma, k)
    m = H.m
    Fv = F.ravel()
    Fe = np.repeat(np.arange(m), k)
    o = np.argsort(Fv, kind="stable")
    Fv, Fe = Fv[o], Fe[o]
    Lv = L.ravel()
    Le = np.repeat(np.arange(m), k)
    lo = np.searchsorted(Fv, Lv, side="left")
    hi = np.searchsorted(Fv, Lv, side="right")
    cnt = hi - lo
    if cnt.sum() == 0:
        return []
    rep_f = np.repeat(Le, cnt)
    rep_v = np.repeat(Lv, cnt)
    starts = np.repeat(lo, cnt)
    offs = np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt)
    rep_s = Fe[starts + offs]
    keep = rep_f != rep_s
    rep_f, rep_s, rep_v = rep_f[keep], rep_s[keep], rep_v[keep]
    o = np.lexsort((rep_v, rep_s, rep_f))
    return [BadPair(int(f), int(s), int(w)) for f, s, w in zip(rep_f[o], rep_s[o], rep_v[o])]


def find_ordered_2chains(H: Hypergraph, sigma: Numeration) -> list[tuple[int, int]]:
    """Ordered pairs ``(a, b)`` of distinct edges sharing exactly one vertex with
    every vertex of ``a`` ranked no later than every vertex of ``b``.

    Because the shared vertex belongs to both, this holds iff it is the
    highest-ranked vertex of ``a`` and the lowest-ranked vertex of ``b``.
    """
    s = sigma.sigma
    top = np.array([max(e, key=lambda x: s[x]) for e in H.edges], dtype=np.int64)
    bottom = np.array([min(e, key=lambda x: s[x]) for e in H.edges], dtype=np.int64)
    masks = H.edge_masks
    by_bottom: dict[int, list[int]] = {}
    for j, b in enumerate(bottom.tolist()):
        by_bottom.setdefault(b, []).append(j)
    out = []
    for i, t in enumerate(top.tolist()):
        for j in by_bottom.get(t, ()):
            if i != j and (masks[i] & masks[j]).bit_count() == 1:
                out.append((i, j))
    return out


def dense_edges(H: Hypergraph, W: VertexWeights, params: DensityParams) -> list[int]:
    """Edges whose gap ``l_val - f_val`` is at most ``(1 - p) / 2``."""
    if H.m == 0:
        return []
    fv, lv = edge_extreme_values(H, W, params.k)
    thr = params.threshold
    if thr <= 0:
        return []
    return np.flatnonzero(lv - fv <= thr).tolist()


def coloring_from_numeration(H: Hypergraph, sigma: Numeration, k: int) -> Coloring:
    """Color 1 on the union of all first-k sets, color 2 elsewhere."""
    colors = np.full(H.vertex_count, 2, dtype=np.int8)
    if H.m:
        F, _ = first_last(H, sigma, k)
        colors[np.unique(F)] = 1
    return Coloring(colors)


def verify_coloring(H: Hypergraph, c: Coloring, k: int) -> list[int]:
    """Indices of edges with fewer than ``k`` vertices of either color."""
    if len(c) != H.vertex_count:
        raise ValueError(f"coloring has {len(c)} entries for {H.vertex_count} vertices")
    if H.m == 0:
        return []
    ones = H.incidence @ (c.colors == 1).astype(np.int32)
    sizes = H.incidence.sum(axis=1)
    return np.flatnonzero((ones < k) | (sizes - ones < k)).tolist()
