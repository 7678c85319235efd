"""
Moving between k-SUM variants
=============================

Integer and modular k-SUM reduce to each other, and modular k-SUM over a
prime reduces to a degenerate-hyperplane search on the moment curve.
"""
from avgksum.core import Interval, KSumInstance, Modular
from avgksum.gen import Seed, gen_ksum
from avgksum.reductions import (embed_moment_curve, is_affinely_degenerate,
                                reduce_integer_to_modular, reduce_ksum_to_plane,
                                reduce_modular_to_integer, totality_size)
from avgksum.solvers import solve_bruteforce, solve_mitm

# integer 4-SUM from two modular 2-SUM calls, one on each half
u = 50
inst = gen_ksum(Interval(u), 2 * 30, 2, Seed(3))
sol = reduce_modular_to_integer(inst, solve_bruteforce)
if sol:
    print("integer 4-SUM:", [inst.elements[i] for i in sol.indices], "sum",
          sum(inst.elements[i] for i in sol.indices))

# modular 3-SUM via an integer oracle on centered representatives
u, k = 100, 3
m = totality_size(u, k)
inst = gen_ksum(Modular(2 * u + 1), m, k, Seed(4))
sol = reduce_integer_to_modular(inst, solve_mitm)
print(f"m = {m}: modular 3-SUM", [inst.elements[i] for i in sol.indices])

# the moment curve turns 3-SUM mod 7 into collinearity
pts = [embed_moment_curve(a, 1, 7) for a in (1, 2, 4)]
print("f(1), f(2), f(4) =", pts, "collinear:", is_affinely_degenerate(pts, 7))
print("plane reduction:", reduce_ksum_to_plane(KSumInstance(Modular(7), 3, [3, 1, 2, 4])).indices)

inst = gen_ksum(Modular(31), 12, 4, Seed(5))
print("4-SUM mod 31 via planes:", reduce_ksum_to_plane(inst), "brute force:", solve_bruteforce(inst))
