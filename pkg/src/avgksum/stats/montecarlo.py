"""Monte Carlo estimators: totality rates and general hitting probabilities."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..core import Modular
from ..gen import Seed, gen_ksum
from ..solvers import solve_bruteforce
from .bounds import (binomial_sigma, clamp01, interval_totality_bounds,
                     modular_totality_bounds)
from ._parallel import map_trials
from .exact import subsets_with_sum


@dataclass
class TotalityReport:
    domain: object
    m: int
    k: int
    trials: int
    successes: int
    empirical_rate: Fraction
    lower_bound: object
    upper_bound: object
    raw_lower: object
    raw_upper: object
    sigma_lower: float
    sigma_upper: float
    verdict: bool

    def row(self) -> dict:
        if isinstance(self.domain, Modular):
            dom = f"modular:{self.domain.Q}"
        else:
            dom = f"interval:{self.domain.u}"
        return {
            "domain": dom, "m": self.m, "k": self.k,
            "ratio": float(Fraction(math.comb(self.m, self.k), self.domain.size)),
            "trials": self.trials, "successes": self.successes,
            "empirical_rate": f"{float(self.empirical_rate):.6f}",
            "lower_bound": f"{float(self.lower_bound):.6f}",
            "upper_bound": f"{float(self.upper_bound):.6f}",
            "raw_lower": f"{float(self.raw_lower):.6f}",
            "raw_upper": f"{float(self.raw_upper):.6f}",
            "verdict": "pass" if self.verdict else "fail",
        }


def _has_solution(domain, m, k, seed):
    return solve_bruteforce(gen_ksum(domain, m, k, seed)) is not None


def estimate_totality(domain, m: int, k: int, trials: int, seed: Seed, *, jobs: int = 1) -> TotalityReport:
    """Fraction of random instances that contain a k-SUM, against the totality bounds.

    The verdict accepts ``lower - 3 sigma <= rate <= min(upper, 1) + 3 sigma``,
    each sigma being the binomial standard error at the bound it guards.
    """
    if isinstance(domain, Modular):
        raw_lo, raw_hi = modular_totality_bounds(domain.Q, m, k)
    else:
        raw_lo, raw_hi = interval_totality_bounds(domain.u, m, k)
    lo, hi = clamp01(raw_lo), clamp01(raw_hi)
    if m < k:
        successes = 0
    else:
        hits = map_trials(_has_solution, [(domain, m, k, seed.child(i)) for i in range(trials)], jobs)
        successes = sum(hits)
    rate = Fraction(successes, trials) if trials else Fraction(0)
    s_lo, s_hi = binomial_sigma(lo, trials), binomial_sigma(hi, trials)
    verdict = float(lo) - 3 * s_lo <= rate <= float(hi) + 3 * s_hi
    return TotalityReport(domain, m, k, trials, successes, rate, lo, hi, raw_lo, raw_hi,
                          s_lo, s_hi, verdict)


def estimate_hitting_general(elements, targets, I, J, t: int, trials: int, seed: Seed, Q: int) -> Fraction:
    """Monte Carlo estimate of the t-hitting probability of (elements, targets, I, J).

    Each trial draws, for every ``j`` in ``J``, a uniform t-subset ``S_j``
    with sum ``targets[j]`` mod Q and records whether some ``S_j`` meets
    ``I`` or two different ``S_j`` intersect.  Returns 1 if some target is
    unreachable.
    """
    I = set(I)
    J = sorted(set(J))
    candidates = []
    for j in J:
        subs = subsets_with_sum(elements, t, targets[j], Q)
        if not subs:
            return Fraction(1)
        candidates.append([sum(1 << i for i in s) for s in subs])
    if not J:
        return Fraction(0)
    forbid = sum(1 << i for i in I)
    rng = seed.rng()
    picks = [rng.integers(0, len(c), size=trials) for c in candidates]
    hits = 0
    for n in range(trials):
        seen = forbid
        hit = False
        for c, p in zip(candidates, picks):
            s = c[p[n]]
            if s & seen:
                hit = True
                break
            seen |= s
        hits += hit
    return Fraction(hits, trials)
