"""
Checking the probability bounds
===============================

Exact enumeration and Monte Carlo against the analytic bounds: how often
random instances have a solution, how close subset sums are to uniform,
and how likely a fixed index is to be used.
"""

from avgksum.core import Modular
from avgksum.gen import Seed
from avgksum.stats import (estimate_totality, exact_hitting_probability,
                           exact_subset_sum_distance, lhl_beta, theorem51_params)
from avgksum.stats import experiments as E

for Q, m, k in [(101, 10, 2), (101, 25, 2), (1009, 25, 3)]:
    rep = estimate_totality(Modular(Q), m, k, 300, Seed(Q, m))
    row = rep.row()
    print(f"Q={Q} m={m} k={k}: rate {row['empirical_rate']} in "
          f"[{row['lower_bound']}, {row['upper_bound']}] -> {row['verdict']}")

a = [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3]
for t in (2, 3):
    d = exact_subset_sum_distance(a, t, 7)
    print(f"t={t}: distance {float(d):.4f} vs beta {lhl_beta(7, len(a), t):.4f}")

p = exact_hitting_probability(a[:14], 3, 2, 5)
print(f"hitting probability of index 0: {p} = {float(p):.4f} (t/M = {2 / 14:.4f})")

for row in E.hitting_agreement(points=3, mc_trials=5000, seed=Seed(9)):
    print(f"exact {row['exact']}  MC {row['estimate']}  ({row['verdict']})")

ps = theorem51_params(16, 4, 1, 2, 1)
print("parameters for n=16, k=4:", {k: v for k, v in ps.as_dict().items() if k in ("r", "beta", "q", "m")})
print("Q >= (beta n)^(cn):", ps.meets_modulus_target())
