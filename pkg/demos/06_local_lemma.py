"""Bounded intersection degree and the local-lemma condition.

Run: python3 demos/06_local_lemma.py
"""

# %% The admissible degree is below zero until n is in the hundreds.
from propbk import analytics as an
from propbk.randomized import degree_condition_check, lll_condition

for n, k in [(30, 2), (100, 2), (150, 2), (300, 3), (1000, 5)]:
    chk = degree_condition_check(n, k, D=0)
    print(f"n={n:5d} k={k}: D limit {an.mp.nstr(chk.d_limit, 5):>12s}  sum at D=0 {an.mp.nstr(chk.sum, 3)}")

# %% At the largest admissible D the dependency sum stays below 1/4.
chk0 = degree_condition_check(300, 3, D=0)
D = int(chk0.d_limit)
chk = degree_condition_check(300, 3, D=D)
print(f"n=300 k=3 D={D}: sum {an.mp.nstr(chk.sum, 5)}, satisfied {chk.satisfied}")

# %% The generic check on a symmetric system of events.
d = 4
ok, worst = lll_condition([1 / (8 * (d + 1))] * 10, [[(i + j) % 10 for j in range(1, d + 1)] for i in range(10)])
print(f"symmetric system: worst neighbourhood sum {worst:.4f}, satisfied {ok}")
