"""Three randomized colorers on a random 30-uniform hypergraph.

Run: python3 demos/02_randomized_colorers.py
"""

# %% A random instance well below any threshold where coloring gets hard.
from propbk.hypergraph import random_uniform
from propbk.ordering import verify_coloring
from propbk.randomized import bk_epsilon_prune, naive_random_colorer, ordering_colorer, union_bound_fail_prob

H = random_uniform(300, 30, 1000, seed=7)
k = 2
print(f"instance: v={H.vertex_count}, n={H.uniformity}, m={H.m}, k={k}")
print(f"union bound on a uniform coloring failing: {union_bound_fail_prob(30, k, H.m):.3g}")

# %% Fair coin flips per vertex.
c, st = naive_random_colorer(H, k, max_trials=20, seed=1)
print(f"naive:    success on trial {st.success_trial}, violations {verify_coloring(H, c, k)}")

# %% Random weights induce an order; accept when no last-k vertex of one edge
# is a first-k vertex of another.
c, st = ordering_colorer(H, k, "paper-k", max_trials=50, seed=1)
print(f"ordering: success on trial {st.success_trial}, X={st.bad_pairs}, dense Y={st.dense}")

# %% Tolerating a fraction of edges: drop dense edges and one edge per bad pair.
res, st = bk_epsilon_prune(H, k, eps=0.05, max_trials=50, seed=1)
Hp, c = res
print(f"prune:    kept {Hp.m}/{H.m} edges, deleted {st.deleted_edges}, proper={verify_coloring(Hp, c, k) == []}")

# %% A denser instance where bad pairs appear, to see the statistics move.
D = random_uniform(40, 6, 80, seed=3)
c, st = ordering_colorer(D, 1, "paper-k1", max_trials=200, seed=2)
print(f"\ndense instance (v=40, n=6, m=80, k=1): success trial {st.success_trial}")
print(st.to_csv().splitlines()[:6])
