"""
Short integer solutions from a k-SUM oracle
===========================================

Each level re-randomizes the current vectors into fresh t-subset sums,
asks the oracle for k-SUMs on one base-q digit, and keeps disjoint unions.
After r levels the surviving combination is an SIS solution with l1 norm
(tk)^r.
"""
from avgksum.gen import Seed, gen_sis
from avgksum.reductions import ReductionConfig, reduce_sis_to_ksum
from avgksum.core import verify_sis
from avgksum.solvers import solve_bruteforce

q, r, t, k, m, m_prime = 17, 2, 2, 2, 8, 256
sis = gen_sis(q, r, m_prime, (t * k) ** r, Seed(11))
cfg = ReductionConfig(q, r, t, k, m)

x, trace = reduce_sis_to_ksum(sis, solve_bruteforce, cfg, Seed(12))
for lv in trace.levels:
    print(f"level {lv.level}: input {lv.input_size}, oracle calls {lv.oracle_calls}, "
          f"found {lv.oracle_found}, kept {lv.successes} (target {lv.target})")
print("status:", trace.status)
if x is not None:
    support = [i for i, v in enumerate(x.x) if v]
    print("support:", support, "l1 =", x.l1, "valid:", verify_sis(sis, x))
    print("sum mod Q:", sum(sis.elements[i] for i in support) % sis.Q)

# with an oracle that never answers the trace still records what happened
_, trace = reduce_sis_to_ksum(sis, lambda inst: None, cfg, Seed(13))
print("failing oracle:", trace.status, "at level", trace.failed_level, "-", trace.reason)
