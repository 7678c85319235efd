"""
Solving small k-SUM instances
=============================

Brute force and meet-in-the-middle on random modular and interval inputs.
"""
import time

from avgksum.core import Interval, Modular, verify_ksum
from avgksum.gen import Seed, gen_ksum
from avgksum.solvers import solve_bruteforce, solve_mitm

seed = Seed(1)

# a random 3-SUM instance over Z_1009 with 25 elements
inst = gen_ksum(Modular(1009), 25, 3, seed)
print("elements:", inst.elements)

sol = solve_bruteforce(inst)
print("brute force:", sol.indices if sol else None)
print("sum mod Q:", sum(inst.elements[i] for i in sol.indices) % 1009 if sol else "-")

sol2 = solve_mitm(inst)
print("meet in the middle:", sol2.indices if sol2 else None, verify_ksum(inst, sol2) if sol2 else "")

# interval instances need an exact zero sum
inst = gen_ksum(Interval(500), 40, 4, seed.child(1))
for solver in (solve_bruteforce, solve_mitm):
    t0 = time.perf_counter()
    s = solver(inst)
    dt = time.perf_counter() - t0
    print(f"{solver.__name__:18s} {s.indices if s else None}  {dt * 1e3:.1f} ms")
