"""
The statistics kernel
=====================

Shows the self-contained statistics used by the report tables: Pearson r
with its two-tailed p-value, the Student t survival function behind it, the
exact Mann-Whitney U test for small samples, and the least-squares trend.
"""

import random

from teamnets import mann_whitney_u, ols, p_stars, pearson, t_sf

# Pearson correlation with significance.
rng = random.Random(0)
x = [rng.gauss(0, 1) for _ in range(30)]
y = [0.6 * xi + rng.gauss(0, 0.8) for xi in x]
res = pearson(x, y)
print(f"pearson: r = {res.r:+.3f}, n = {res.n}, t = {res.t_stat:.2f}, "
      f"p = {res.p_two_tailed:.4f} {p_stars(res.p_two_tailed)}")

# The p-value comes from the t survival function; a few reference points:
print("\nt survival function:")
for t, df in [(0.0, 10), (1.0, 1), (2.0, 30), (3.1, 58)]:
    print(f"    t_sf({t:>4}, df={df:>2}) = {t_sf(t, df):.6f}")

# Mann-Whitney U: exact enumeration for small samples.
increased = [46, 53, 40, 36, 34]
decreased = [35, 28, 46, 23, 29]
u = mann_whitney_u(increased, decreased)
print(f"\nmann-whitney ({u.method}): U = {u.u:.1f} "
      f"(u1 = {u.u1:.1f}, u2 = {u.u2:.1f}), p = {u.p_two_tailed:.3f}")

# Larger samples switch to the tie-corrected normal approximation.
big_a = [rng.gauss(0, 1) for _ in range(20)]
big_b = [rng.gauss(0.5, 1) for _ in range(20)]
u_big = mann_whitney_u(big_a, big_b)
print(f"mann-whitney ({u_big.method}): U = {u_big.u:.1f}, p = {u_big.p_two_tailed:.3f}")

# Least-squares trend over weekly scores with a gap.
weeks = [2, 3, 4, 6, 7]
scores = [0.20, 0.25, 0.24, 0.35, 0.42]
line = ols([float(w) for w in weeks], scores)
print(f"\ntrend: slope = {line.slope:+.4f} per week, intercept = {line.intercept:.3f}")
