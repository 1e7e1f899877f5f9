"""Smallest uniform hypergraphs without property B_k, by exhaustive search.

Run: python3 demos/07_minimal_counterexamples.py
"""

# %% Graphs: the triangle.  4-sets with k=2: four 4-subsets of a 5-set.
from math import comb

from propbk.exact import min_nonBk_search
from propbk.hypergraph import to_hg

for n, k, v_max, m_max in [(2, 1, 3, 3), (2, 1, 4, 2), (4, 2, 5, 5), (4, 2, 6, 4)]:
    r = min_nonBk_search(n, k, v_max, m_max)
    naive = 2 ** (n - 1) / sum(comb(n, j) for j in range(k))
    print(f"n={n} k={k} v<={v_max} m<={m_max}: min edges {r.min_edges} "
          f"(examined {r.examined}, exhausted {r.exhausted}, naive lower bound {naive:.2f})")
    if r.witness is not None:
        print("  " + to_hg(r.witness).replace("\n", "\n  ").rstrip())

# %% A budget-limited run reports a partial result instead of guessing.
r = min_nonBk_search(3, 1, 7, 7, budget=5000)
print(f"n=3 k=1 with budget 5000: exhausted={r.exhausted}, levels completed={r.levels_completed}")
