"""Closed-form probabilities next to seeded Monte Carlo estimates.

Run: python3 demos/03_probabilities_vs_simulation.py
"""

# %% k-th largest of n uniforms: finite sum vs quadrature vs simulation.
import math

from propbk import analytics as an
from propbk.montecarlo import compare, mc_estimate

for n, k, t in [(4, 2, 0.5), (12, 3, 0.7), (30, 2, 0.9)]:
    exact = an.order_stat_cdf(n, k, t)
    quad = float(an.order_stat_cdf_quad(n, k, t))
    est = mc_estimate("order_stat", {"n": n, "k": k, "t": t}, 200_000, seed=1)
    print(f"P(l <= {t}) n={n} k={k}: exact {exact:.6f} quad {quad:.6f} mc {est.estimate:.6f} "
          f"{'ok' if compare(exact, est).passed else 'MISMATCH'}")

# %% Dense edges.  At p = 2k ln n / n and n = 30 the probability is ~1e-12,
# so a small p and n make the comparison informative.
for n, k, p in [(8, 2, 0.2), (12, 2, 0.1), (30, 2, 4 * math.log(30) / 30)]:
    exact = float(an.p_dense_exact(n, k, p).analytic)
    est = mc_estimate("dense", {"n": n, "k": k, "p": p}, 200_000, seed=2)
    print(f"P(dense) n={n} k={k} p={p:.3f}: exact {exact:.4g} mc {est.estimate:.4g}")

# %% Bad pairs between two edges sharing h vertices.
for h in (1, 2, 3, 4):
    exact_one = float(an.p_badpair_single_vertex(6, 2, h))
    est = mc_estimate("badpair", {"n": 6, "k": 2, "h": h}, 200_000, seed=3)
    print(f"n=6 k=2 h={h}: union bound {h * exact_one:.4f}  mc {est.estimate:.4f}")
