"""Finite hypergraphs on dense 0-based vertex indices.

A :class:`Hypergraph` is immutable once built.  Edges are stored as sorted
tuples in insertion order; duplicate edges are rejected rather than merged so
that edge indices reported elsewhere (bad pairs, violations) stay stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .rng import stream

__all__ = [
    "HypergraphError",
    "Hypergraph",
    "IntersectionProfile",
    "build_hypergraph",
    "intersection_profile",
    "fano",
    "complete",
    "random_uniform",
    "odd_cycle",
    "generate",
    "to_hg",
    "parse_hg",
    "to_json",
    "parse_json",
    "parse_any",
    "FANO_LINES",
]

FANO_LINES = (
    (0, 1, 2),
    (0, 3, 4),
    (0, 5, 6),
    (1, 3, 5),
    (1, 4, 6),
    (2, 3, 6),
    (2, 4, 5),
)


class HypergraphError(ValueError):
    pass


@dataclass(frozen=True)
class Hypergraph:
    vertex_count: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.vertex_count < 1:
            raise HypergraphError(f"vertex_count must be >= 1, got {self.vertex_count}")
        seen: dict[tuple[int, ...], int] = {}
        for pos, e in enumerate(self.edges):
            if len(e) == 0:
                raise HypergraphError(f"edge {pos} is empty")
            if any(b <= a for a, b in zip(e, e[1:])):
                raise HypergraphError(f"edge {pos} is not strictly increasing: {e}")
            if e[0] < 0 or e[-1] >= self.vertex_count:
                raise HypergraphError(
                    f"edge {pos} has a vertex outside [0, {self.vertex_count}): {e}"
                )
            if e in seen:
                raise HypergraphError(f"duplicate edge {e} at positions {seen[e]} and {pos}")
            seen[e] = pos

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def uniformity(self) -> int | None:
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    @cached_property
    def min_edge_size(self) -> int:
        return min((len(e) for e in self.edges), default=0)

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        """Each edge as a Python-int bitmask over vertices."""
        return tuple(sum(1 << v for v in e) for e in self.edges)

    @cached_property
    def incidence(self) -> np.ndarray:
        """Dense ``(m, vertex_count)`` 0/1 incidence matrix."""
        a = np.zeros((self.m, self.vertex_count), dtype=np.int32)
        for i, e in enumerate(self.edges):
            a[i, list(e)] = 1
        return a

    @cached_property
    def edge_array(self) -> np.ndarray:
        """``(m, n)`` array of edge vertices; only defined for uniform hypergraphs."""
        if self.m == 0:
            return np.zeros((0, 0), dtype=np.int64)
        if self.uniformity is None:
            raise HypergraphError("edge_array requires a uniform hypergraph")
        return np.asarray(self.edges, dtype=np.int64)

    def without_edges(self, drop: Iterable[int]) -> "Hypergraph":
        """Spanning subhypergraph with the given edge indices removed."""
        drop = set(drop)
        return Hypergraph(
            self.vertex_count, tuple(e for i, e in enumerate(self.edges) if i not in drop)
        )

    def __repr__(self) -> str:
        return f"Hypergraph(v={self.vertex_count}, m={self.m}, n={self.uniformity})"


def build_hypergraph(vertex_count: int, raw_edges: Iterable[Sequence[int]]) -> Hypergraph:
    """Validate raw vertex lists and return a :class:`Hypergraph`.

    Repeated vertices inside one edge collapse (set semantics); two edges that
    are equal as sets raise :class:`HypergraphError` naming both positions.
    """
    edges = []
    for pos, raw in enumerate(raw_edges):
        vs = [int(x) for x in raw]
        if not vs:
            raise HypergraphError(f"edge {pos} is empty")
        bad = [x for x in vs if x < 0 or x >= vertex_count]
        if bad:
            raise HypergraphError(
                f"edge {pos} has vertex {bad[0]} outside [0, {vertex_count})"
            )
        edges.append(tuple(sorted(set(vs))))
    return Hypergraph(int(vertex_count), tuple(edges))


@dataclass(frozen=True)
class IntersectionProfile:
    """Pairwise intersection sizes of a hypergraph.

    ``sizes[i, j]`` is ``|e_i & e_j|``; the diagonal holds edge sizes.
    """

    sizes: np.ndarray
    max_intersection: int
    intersection_degree: int

    @property
    def pair_sizes(self) -> dict[tuple[int, int], int]:
        iu, ju = np.triu_indices(self.sizes.shape[0], k=1)
        return {(int(i), int(j)): int(self.sizes[i, j]) for i, j in zip(iu, ju)}

    def _offdiag(self) -> np.ndarray:
        iu = np.triu_indices(self.sizes.shape[0], k=1)
        return self.sizes[iu]

    @property
    def is_simple(self) -> bool:
        return self.max_intersection <= 1

    def has_property_Ah(self, h: int) -> bool:
        """Every two edges are disjoint or share at least ``h`` vertices."""
        off = self._offdiag()
        return bool(np.all((off == 0) | (off >= h)))


def intersection_profile(H: Hypergraph) -> IntersectionProfile:
    a = H.incidence.astype(np.int64)
    sizes = a @ a.T
    m = H.m
    if m < 2:
        return IntersectionProfile(sizes, 0, 0)
    off = sizes.copy()
    np.fill_diagonal(off, 0)
    return IntersectionProfile(
        sizes=sizes,
        max_intersection=int(off.max()),
        intersection_degree=int((off > 0).sum(axis=1).max()),
    )


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------


def fano() -> Hypergraph:
    return build_hypergraph(7, FANO_LINES)


def complete(v: int, n: int) -> Hypergraph:
    if not 1 <= n <= v:
        raise HypergraphError(f"complete({v}, {n}) needs 1 <= n <= v")
    return build_hypergraph(v, combinations(range(v), n))


def random_uniform(v: int, n: int, m: int, seed: int) -> Hypergraph:
    """``m`` distinct ``n``-subsets of ``range(v)`` drawn uniformly without replacement.

    Rejection sampling: each round draws a batch of uniform ``n``-subsets from
    a stream keyed by ``(seed, round)`` and keeps the unseen ones in draw order.
    """
    if not 1 <= n <= v:
        raise HypergraphError(f"random({v}, {n}, ...) needs 1 <= n <= v")
    if m < 0 or m > comb(v, n):
        raise HypergraphError(f"cannot draw {m} distinct edges; C({v},{n}) = {comb(v, n)}")
    seen: set[tuple[int, ...]] = set()
    edges: list[tuple[int, ...]] = []
    rnd = 0
    while len(edges) < m:
        need = m - len(edges)
        rng = stream(seed, "random-hypergraph", rnd)
        keys = rng.random((need, v))
        cand = np.sort(np.argpartition(keys, n - 1, axis=1)[:, :n], axis=1)
        for row in cand:
            e = tuple(int(x) for x in row)
            if e not in seen:
                seen.add(e)
                edges.append(e)
                if len(edges) == m:
                    break
        rnd += 1
    return Hypergraph(v, tuple(edges))


def odd_cycle(length: int) -> Hypergraph:
    if length < 3 or length % 2 == 0:
        raise HypergraphError(f"odd_cycle needs an odd length >= 3, got {length}")
    return build_hypergraph(length, [(i, (i + 1) % length) for i in range(length)])


def generate(family: str, **params) -> Hypergraph:
    """Dispatch by family name: ``fano``, ``complete``, ``random``, ``odd_cycle``."""
    if family == "fano":
        return fano()
    if family == "complete":
        return complete(params["v"], params["n"])
    if family == "random":
        return random_uniform(params["v"], params["n"], params["m"], params.get("seed", 0))
    if family == "odd_cycle":
        return odd_cycle(params["length"])
    raise HypergraphError(f"unknown family {family!r}")


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------


def to_hg(H: Hypergraph) -> str:
    lines = [f"v {H.vertex_count}"]
    lines += ["e " + " ".join(map(str, e)) for e in H.edges]
    return "\n".join(lines) + "\n"


def parse_hg(text: str) -> Hypergraph:
    v = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *rest = line.split()
        if tag == "v":
            if v is not None or len(rest) != 1:
                raise HypergraphError(f"line {lineno}: malformed vertex line")
            v = int(rest[0])
        elif tag == "e":
            if v is None:
                raise HypergraphError(f"line {lineno}: edge before 'v' line")
            vs = [int(x) for x in rest]
            if any(b <= a for a, b in zip(vs, vs[1:])):
                raise HypergraphError(f"line {lineno}: edge vertices must be ascending")
            edges.append(vs)
        else:
            raise HypergraphError(f"line {lineno}: unknown record {tag!r}")
    if v is None:
        raise HypergraphError("missing 'v <vertex_count>' line")
    return build_hypergraph(v, edges)


def to_json(H: Hypergraph) -> str:
    return json.dumps({"v": H.vertex_count, "edges": [list(e) for e in H.edges]})


def parse_json(text: str | dict) -> Hypergraph:
    d = json.loads(text) if isinstance(text, str) else text
    return build_hypergraph(d["v"], d["edges"])


def parse_any(text: str) -> Hypergraph:
    """Parse either the ``.hg`` text format or its JSON mirror."""
    return parse_json(text) if text.lstrip().startswith("{") else parse_hg(text)
