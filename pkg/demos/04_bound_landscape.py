"""How the lower bounds on m_k(n) compare, in log2 scale.

Run: python3 demos/04_bound_landscape.py > bounds.csv
"""

# %% The ordering-based bound has huge constants: it only overtakes the
# naive 2^(n-1)/sum bound for large n, and is below 1 at n = 30.
import csv
import sys

from propbk import analytics as an

w = csv.writer(sys.stdout, lineterminator="\n")
w.writerow(["n", "k", "union", "quarter_power", "ordering", "ordering_vacuous"])
for n in (30, 100, 1000, 5000, 20000):
    for k in (2, 3):
        rep = an.bounds_report(n, k)
        w.writerow([n, k,
                    f"{rep['mk_lower_union'].value_log2:.2f}",
                    f"{rep['mk_lower_quarter'].value_log2:.2f}",
                    f"{rep['mk_lower_ordering'].value_log2:.2f}",
                    rep["mk_lower_ordering"].vacuous])

# %% Intersecting hypergraphs (every two edges disjoint or sharing >= h vertices)
# admit a larger bound.
rep = an.bounds_report(200, 3, h=5)
ratio = rep["mkh_lower_ordering"].value / rep["mk_lower_ordering"].value
print(f"# n=200 k=3 h=5: intersecting bound / general bound = {an.mp.nstr(ratio, 6)}", file=sys.stderr)
