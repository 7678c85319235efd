"""Experiment harnesses.

Each harness draws trial ``i`` from ``seed.child(i)`` and folds results in
trial order, so outputs do not depend on ``jobs``.  Rows are plain dicts
ready for CSV/JSON output.
"""
from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from ..core import Interval, KSumInstance, Modular, verify_ksum, verify_sis
from ..gen import Seed, gen_ksum, gen_modular_elements, gen_sis, uniform_below_array
from ..reductions import (ReductionConfig, reduce_integer_to_modular, reduce_modular_to_integer,
                          reduce_sis_to_ksum, totality_size)
from ..solvers import BkwConfig, solve_bkw, solve_bruteforce
from .bounds import (binomial_sigma, clamp01, hitting_exceed_bound, hitting_threshold,
                     lhl_beta)
from .exact import exact_hitting_probability, exact_subset_sum_distance
from ._parallel import map_trials
from .montecarlo import estimate_hitting_general, estimate_totality


# Modular cells with C(m,k)/Q spread over [0.1, 10].
TOTALITY_GRID = [
    (101, 6, 2), (101, 10, 2), (101, 16, 2), (101, 25, 2), (101, 33, 2), (101, 45, 2),
    (1009, 10, 3), (1009, 17, 3), (1009, 25, 3), (1009, 40, 3),
    (10007, 14, 4), (10007, 33, 4),
]


def totality_grid(cells=TOTALITY_GRID, trials: int = 1000, seed: Seed = Seed(0), jobs: int = 1) -> list:
    return [estimate_totality(Modular(Q), m, k, trials, seed.child(n), jobs=jobs)
            for n, (Q, m, k) in enumerate(cells)]


def _lhl_draw(M, t, Q, seed):
    a = gen_modular_elements(Q, M, seed)
    return exact_subset_sum_distance(a, t, Q)


def lhl_validation(M: int, t: int, Q: int, draws: int, seed: Seed, jobs: int = 1) -> dict:
    """Fraction of random vectors whose t-subset sum is at distance >= beta from uniform."""
    beta = lhl_beta(Q, M, t)
    dists = map_trials(_lhl_draw, [(M, t, Q, seed.child(i)) for i in range(draws)], jobs)
    exceed = sum(1 for dd in dists if dd >= beta)
    frac = exceed / draws
    b = clamp01(beta)
    sigma = binomial_sigma(b, draws)
    return {
        "M": M, "t": t, "Q": Q, "draws": draws, "beta": f"{beta:.6f}",
        "exceed": exceed, "fraction": f"{frac:.6f}", "sigma": f"{sigma:.6f}",
        "mean_distance": f"{float(sum(dists) / draws):.6f}",
        "verdict": "pass" if frac <= b + 3 * sigma else "fail",
    }


def _hitting_draw(M, t, Q, seed):
    rng = seed.rng()
    a = [int(v) for v in uniform_below_array(rng, Q, M)]
    c = int(uniform_below_array(rng, Q, 1)[0])
    return exact_hitting_probability(a, c, t, Q)


def hitting_validation(M: int = 14, t: int = 2, Q: int = 5, draws: int = 500,
                       epsilon: float = 0.5, seed: Seed = Seed(0), jobs: int = 1) -> dict:
    """Fraction of random (a, c) whose hitting probability reaches ``(1+eps)/(1-eps) t/M``."""
    threshold = hitting_threshold(M, t, epsilon)
    bound = hitting_exceed_bound(Q, M, t, epsilon)
    ps = map_trials(_hitting_draw, [(M, t, Q, seed.child(i)) for i in range(draws)], jobs)
    exceed = sum(1 for p in ps if p >= threshold)
    frac = exceed / draws
    b = clamp01(bound)
    sigma = binomial_sigma(b, draws)
    return {
        "M": M, "t": t, "Q": Q, "draws": draws, "epsilon": epsilon,
        "threshold": f"{threshold:.6f}", "raw_bound": f"{bound:.6f}", "bound": f"{b:.6f}",
        "exceed": exceed, "fraction": f"{frac:.6f}", "vacuous": bound >= 1,
        "verdict": "pass" if frac <= b + 3 * sigma else "fail",
    }


def hitting_agreement(points: int = 20, M: int = 14, t: int = 2, Q: int = 5,
                      mc_trials: int = 10_000, seed: Seed = Seed(0)) -> list:
    """Exact vs Monte Carlo hitting probability (I = J = {0}) on random points."""
    rows = []
    for n in range(points):
        rng = seed.child(n, 0).rng()
        a = [int(v) for v in uniform_below_array(rng, Q, M)]
        c = int(uniform_below_array(rng, Q, 1)[0])
        exact = exact_hitting_probability(a, c, t, Q)
        est = estimate_hitting_general(a, [c], {0}, {0}, t, mc_trials, seed.child(n, 1), Q)
        sigma = binomial_sigma(exact, mc_trials)
        diff = abs(float(est) - float(exact))
        rows.append({
            "point": n, "elements": " ".join(map(str, a)), "target": c,
            "exact": f"{float(exact):.6f}", "estimate": f"{float(est):.6f}",
            "sigma": f"{sigma:.6f}", "verdict": "pass" if diff <= 3 * sigma + 1e-12 else "fail",
        })
    return rows


def _bkw_trial(q, ell, m, seed):
    cfg = BkwConfig(q, ell)
    a = uniform_below_array(seed.rng(), q ** ell, m)
    sol = solve_bkw(a, cfg)
    if sol is None:
        return None
    idx = np.asarray(sol.indices)
    valid = (len(idx) == 2 ** ell and len(np.unique(idx)) == 2 ** ell
             and int(a[idx].astype(object).sum()) % q ** ell == 0)
    return bool(valid)


def bkw_success(q: int, ell: int, trials: int = 100, density_factor=Fraction(1),
                seed: Seed = Seed(0), jobs: int = 1) -> dict:
    m = BkwConfig(q, ell, Fraction(density_factor)).input_size()
    out = map_trials(_bkw_trial, [(q, ell, m, seed.child(i)) for i in range(trials)], jobs)
    found = sum(1 for v in out if v is not None)
    valid = sum(1 for v in out if v)
    return {
        "q": q, "ell": ell, "k": 2 ** ell, "m": m, "trials": trials, "found": found,
        "valid": valid, "invalid": found - valid, "success_rate": found / trials,
        "verdict": "pass" if valid == found and found / trials >= 0.9 else "fail",
    }


def _sis_trial(q, r, t, k, m, m_prime, p_floor, seed, malicious):
    sis = gen_sis(q, r, m_prime, (t * k) ** r, seed.child(0))
    cfg = ReductionConfig(q, r, t, k, m, p_floor=p_floor)
    oracle = (lambda inst: None) if malicious else solve_bruteforce
    x, trace = reduce_sis_to_ksum(sis, oracle, cfg, seed.child(1))
    if x is None:
        complete = (trace.status == "failure" and trace.failed_level is not None
                    and len(trace.levels) == trace.failed_level)
        if malicious:
            complete = complete and trace.levels[0].oracle_calls == cfg.blocks(m_prime, 1)
        return {"ok": False, "valid": None, "trace_complete": complete}
    valid = (verify_sis(sis, x) and all(v >= 0 for v in x.x) and any(x.x)
             and x.l1 <= (t * k) ** r)
    return {"ok": True, "valid": valid, "trace_complete": trace.status == "success"}


def sis_reduction_runs(q, r, t, k, m, m_prime, runs, p_floor=Fraction(1, 2),
                       seed: Seed = Seed(0), malicious: bool = False, jobs: int = 1) -> dict:
    out = map_trials(_sis_trial, [(q, r, t, k, m, m_prime, p_floor, seed.child(i), malicious)
                                  for i in range(runs)], jobs)
    succ = sum(o["ok"] for o in out)
    invalid = sum(1 for o in out if o["ok"] and not o["valid"])
    traced = sum(1 for o in out if not o["ok"] and o["trace_complete"])
    return {
        "q": q, "r": r, "t": t, "k": k, "m": m, "m_prime": m_prime, "runs": runs,
        "malicious": malicious, "successes": succ, "invalid": invalid,
        "failures_with_trace": traced, "success_rate": succ / runs,
    }


def _modular_to_integer_trial(u, k, m, seed):
    inst = gen_ksum(Interval(u), 2 * m, k, seed)
    Q = 2 * u + 1
    a = inst.elements
    first = KSumInstance(Modular(Q), k, tuple(x % Q for x in a[:m]))
    second = KSumInstance(Modular(Q), k, tuple((-x) % Q for x in a[m:]))
    eligible = solve_bruteforce(first) is not None and solve_bruteforce(second) is not None
    sol = reduce_modular_to_integer(inst, solve_bruteforce)
    if sol is None:
        return eligible, False, True
    full = KSumInstance(Interval(u), 2 * k, a)
    halves = sum(1 for i in sol.indices if i < m) == k
    return eligible, True, verify_ksum(full, sol) and halves


def modular_to_integer_harness(u: int = 50, k: int = 2, m: int = 200, trials: int = 10_000,
                    seed: Seed = Seed(0), jobs: int = 1) -> dict:
    out = map_trials(_modular_to_integer_trial, [(u, k, m, seed.child(i)) for i in range(trials)], jobs)
    eligible = sum(1 for e, _, _ in out if e)
    succ = sum(1 for e, s, _ in out if e and s)
    invalid = sum(1 for _, s, v in out if s and not v)
    rate = succ / eligible if eligible else 0.0
    return {
        "u": u, "k": k, "m": m, "trials": trials, "eligible": eligible, "successes": succ,
        "invalid": invalid, "success_rate": rate, "threshold": 1 / (2 * k),
        "verdict": "pass" if invalid == 0 and rate >= 1 / (2 * k) else "fail",
    }


def _integer_to_modular_trial(u, k, m, seed):
    inst = gen_ksum(Modular(2 * u + 1), m, k, seed)
    sol = reduce_integer_to_modular(inst, solve_bruteforce)
    if sol is None:
        return False, True
    return True, verify_ksum(inst, sol)


def integer_to_modular_harness(u: int, k: int, trials: int = 1000, seed: Seed = Seed(0), jobs: int = 1) -> dict:
    m = totality_size(u, k)
    out = map_trials(_integer_to_modular_trial, [(u, k, m, seed.child(i)) for i in range(trials)], jobs)
    succ = sum(1 for s, _ in out if s)
    invalid = sum(1 for s, v in out if s and not v)
    rate = succ / trials
    return {
        "u": u, "k": k, "m": m, "trials": trials, "successes": succ, "invalid": invalid,
        "success_rate": rate, "verdict": "pass" if invalid == 0 and rate >= 0.99 else "fail",
    }


def random_param_inputs(count: int, seed: Seed) -> list:
    """Random valid inputs for the parameter calculator (r >= 1 guaranteed)."""
    rng = random.Random(int(seed.rng().integers(0, 2**63)))
    out = []
    while len(out) < count:
        n = rng.randint(2, 40)
        k = rng.randint(2, 8)
        eps1 = Fraction(rng.randint(1, 16), rng.randint(1, 4))
        eps = eps1 * Fraction(rng.randint(1, 9), 10)
        c = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        if k ** (2 * eps1.denominator) > n ** eps1.numerator:
            continue
        if c * n > 60:
            continue
        out.append((n, k, eps, eps1, c))
    return out


__all__ = [
    "map_trials", "TOTALITY_GRID", "totality_grid", "lhl_validation", "hitting_validation",
    "hitting_agreement", "bkw_success", "sis_reduction_runs", "modular_to_integer_harness",
    "integer_to_modular_harness", "random_param_inputs",
]
