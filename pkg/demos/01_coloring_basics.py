"""Property B_k on small hypergraphs, and how orderings certify it.

Run: python3 demos/01_coloring_basics.py
"""

# %% The Fano plane is the smallest 3-uniform hypergraph without property B.
from propbk.exact import decide_b_chains, decide_bk_exhaustive, decide_bk_numeration, find_bk_coloring
from propbk.hypergraph import build_hypergraph, fano, intersection_profile
from propbk.ordering import (
    Coloring,
    Numeration,
    coloring_from_numeration,
    find_bad_pairs,
    find_ordered_2chains,
    verify_coloring,
)

H = fano()
prof = intersection_profile(H)
print(f"Fano: {H.m} lines, simple={prof.is_simple}, intersection degree D={prof.intersection_degree}")
print("  two-colorable by brute force:     ", decide_bk_exhaustive(H, 1))
print("  some numeration has no bad pair:   ", decide_bk_numeration(H, 1))
print("  some numeration has no 2-chain:    ", decide_b_chains(H))

# %% Deleting any single line makes it two-colorable again.
for i in range(H.m):
    c = Coloring(find_bk_coloring(H.without_edges([i]), 1))
    print(f"  without line {i}: coloring {c.to_string()}")

# %% A numeration with no bad pair gives a coloring directly:
# color the first k vertices of every edge with color 1, the rest with 2.
G = build_hypergraph(8, [[0, 1, 2, 3], [2, 3, 4, 5], [4, 5, 6, 7]])
sigma = Numeration.from_order([0, 2, 4, 6, 1, 3, 5, 7])
print("\nchain of three 4-sets, k=2")
print("  bad pairs:", find_bad_pairs(G, sigma, 2))
c = coloring_from_numeration(G, sigma, 2)
print("  coloring:", c.to_string(), "violations:", verify_coloring(G, c, 2))

# %% The identity order does produce bad pairs (and for k=1 ordered 2-chains).
ident = Numeration.identity(8)
print("  identity order bad pairs:", find_bad_pairs(G, ident, 2))
T = build_hypergraph(5, [[0, 1, 2], [2, 3, 4]])
print("  2-chains of {0,1,2},{2,3,4} under identity:", find_ordered_2chains(T, Numeration.identity(5)))
