"""
The BKW / Wagner pairing algorithm
==================================

Modular 2^l-SUM over Z_{q^l}: each level zeroes one base-q digit by pairing
opposite digit classes.
"""
import time
from fractions import Fraction

from avgksum.gen import Seed, uniform_below_array
from avgksum.solvers import BkwConfig, bkw_level_target, solve_bkw

for q, ell in [(3, 2), (5, 2), (3, 3)]:
    cfg = BkwConfig(q, ell)
    m = cfg.input_size()
    targets = [bkw_level_target(m, ell, i) for i in range(1, ell + 1)]
    a = uniform_below_array(Seed(q, ell).rng(), cfg.modulus, m)
    t0 = time.perf_counter()
    sol = solve_bkw(a, cfg)
    dt = time.perf_counter() - t0
    print(f"q={q} l={ell} k={cfg.k} m={m} level targets={targets}")
    if sol is not None:
        vals = [int(a[i]) for i in sol.indices]
        print(f"  found {sol.indices} values {vals} sum mod {cfg.modulus} = {sum(vals) % cfg.modulus}"
              f"  ({dt:.2f} s)")

# the density in the input size is generous; far sparser inputs still mostly succeed
cfg = BkwConfig(3, 3, Fraction(1, 10**4))
hits = sum(solve_bkw(uniform_below_array(Seed(7, i).rng(), 27, cfg.input_size()), cfg) is not None
           for i in range(20))
print(f"density factor 1e-4 (m={cfg.input_size()}): {hits}/20 found")
