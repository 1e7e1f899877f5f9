"""Replaying the numeric inequalities behind the ordering bound.

Run: python3 demos/05_proof_replay.py
"""

# %% Factor caps and every inequality row at one point.
from propbk import analytics as an

f = an.factor_audit(100, 4)
print("factors at n=100, k=4:", {k: round(getattr(f, k), 4) for k in ("alpha", "gamma", "epsilon_f", "beta", "R", "T")})
audit = an.inequality_audit(100, 4)
for r in audit.rows[:8]:
    rel = "<" if r.strict else "<="
    print(f"  {r.name:40s} {an.mp.nstr(r.lhs, 6):>14s} {rel} {an.mp.nstr(r.rhs, 6):<14s} {r.holds}")
print(f"  ... {len(audit.rows)} rows, all hold: {audit.all_hold}")

# %% The whole grid.
total = 0
for n in (30, 40, 60, 100, 200, 500, 1000, 2000):
    for k in an.admissible_ks(n):
        total += an.inequality_audit(n, k).all_hold
print("grid points where everything holds:", total)

# %% Fraction-of-edges variant: the window for eps and where it becomes usable.
lo, hi, _ = an.epsilon_window(40, 2)
print(f"eps window at n=40, k=2: ({an.mp.nstr(lo, 4)}, {an.mp.nstr(hi, 4)})")
for k in (2, 3, 4, 5):
    print(f"  k={k}: lower window end clears the gap bound from n = {an.eps_crossover(k)}")
