import itertools
import math
from collections import Counter
from fractions import Fraction

import pytest
from sympy import isprime, prevprime

from avgksum.core import CapacityError, Interval, Modular, ParameterError
from avgksum.gen import Seed
from avgksum.stats import (estimate_hitting_general, estimate_totality,
                           exact_hitting_probability, exact_subset_sum_distance,
                           hitting_exceed_bound, interval_alpha, interval_totality_bounds,
                           lhl_beta, modular_totality_bounds, subset_sum_counts,
                           theorem51_params)
from avgksum.stats import experiments as E


def enum_distance(elements, t, Q):
    subs = list(itertools.combinations(elements, t))
    c = Counter(sum(s) % Q for s in subs)
    return sum(abs(Fraction(c.get(z, 0), len(subs)) - Fraction(1, Q)) for z in range(Q))


def enum_hitting(elements, c, t, Q, index=0):
    hits = [s for s in itertools.combinations(range(len(elements)), t)
            if sum(elements[i] for i in s) % Q == c % Q]
    if not hits:
        return Fraction(1)
    return Fraction(sum(index in s for s in hits), len(hits))


class TestExact:
    def test_distance_examples(self):
        assert exact_subset_sum_distance([0, 1, 2, 0], 2, 3) == 0
        for t in (1, 2, 3):
            assert exact_subset_sum_distance([0] * 5, t, 3) == Fraction(4, 3)
        Q = 5
        assert exact_subset_sum_distance([1, 2, 3], 3, Q) == (1 - Fraction(1, Q)) + Fraction(Q - 1, Q)

    def test_distance_matches_enumeration(self):
        for s in range(30):
            rng = Seed(s).rng()
            M = int(rng.integers(3, 9))
            Q = int(rng.integers(2, 13))
            t = int(rng.integers(1, M + 1))
            a = [int(v) for v in rng.integers(0, Q, size=M)]
            assert exact_subset_sum_distance(a, t, Q) == enum_distance(a, t, Q)

    def test_counts_total(self):
        c = subset_sum_counts(list(range(10)), 4, 7)
        assert sum(c) == math.comb(10, 4)

    def test_work_limit(self):
        with pytest.raises(CapacityError):
            subset_sum_counts(list(range(100)), 50, 10**6)

    def test_hitting_examples(self):
        assert exact_hitting_probability([1, 1, 2], 1, 1, 3) == Fraction(1, 2)
        assert exact_hitting_probability([3, 4], 7, 2, 11) == 1
        assert exact_hitting_probability([0, 0, 0], 1, 2, 3) == 1  # unreachable target

    def test_hitting_matches_enumeration(self):
        for s in range(30):
            rng = Seed(s, 1).rng()
            M = int(rng.integers(2, 9))
            Q = int(rng.integers(2, 9))
            t = int(rng.integers(1, M + 1))
            a = [int(v) for v in rng.integers(0, Q, size=M)]
            c = int(rng.integers(0, Q))
            idx = int(rng.integers(0, M))
            assert exact_hitting_probability(a, c, t, Q, idx) == enum_hitting(a, c, t, Q, idx)


class TestMonteCarlo:
    def test_totality_pigeonhole(self, seed):
        rep = estimate_totality(Modular(2), 3, 2, 100, seed)
        assert rep.empirical_rate == 1

    def test_totality_bounds_example(self, seed):
        lo, hi = modular_totality_bounds(1009, 30, 3)
        assert lo == 1 - Fraction(1009, 4060) and hi > 1
        rep = estimate_totality(Modular(1009), 30, 3, 1000, seed)
        assert abs(float(rep.lower_bound) - 0.7515) < 1e-4 and rep.upper_bound == 1
        assert rep.verdict

    def test_totality_too_few_elements(self, seed):
        rep = estimate_totality(Interval(5), 1, 2, 10, seed)
        assert rep.empirical_rate == 0

    def test_totality_jobs_invariant(self, seed):
        a = estimate_totality(Modular(101), 10, 2, 40, seed, jobs=1)
        b = estimate_totality(Modular(101), 10, 2, 40, seed, jobs=2)
        assert a.successes == b.successes

    def test_hitting_general_edge_cases(self, seed):
        a = [1, 2, 3, 4]
        assert estimate_hitting_general(a, [3], set(), {0}, 2, 100, seed, 5) == 0
        assert estimate_hitting_general(a, [3], set(range(4)), {0}, 2, 100, seed, 5) == 1
        assert estimate_hitting_general(a, [3], set(), set(), 2, 100, seed, 5) == 0

    def test_hitting_general_converges(self, seed):
        est = estimate_hitting_general([1, 1, 2], [1], {0}, {0}, 1, 10_000, seed, 3)
        assert abs(float(est) - 0.5) <= 3 * math.sqrt(0.25 / 10_000)

    def test_pairwise_intersections_count(self, seed):
        # two targets, both only reachable through index 0
        est = estimate_hitting_general([1, 0, 0], [1, 1], set(), {0, 1}, 1, 200, seed, 5)
        assert est == 1


class TestBounds:
    def test_lhl_beta(self):
        assert lhl_beta(5, 16, 2) == pytest.approx((5 / 120) ** 0.25)

    def test_hitting_bound_at_acceptance_point(self):
        assert hitting_exceed_bound(5, 14, 2, 0.5) == pytest.approx(4 * 5 ** 0.25 / (0.5 * 13 ** 0.25))

    def test_interval_alpha_floor(self):
        for u, m, k in [(5, 30, 2), (50, 200, 2), (100, 65, 3), (3, 4, 2)]:
            f = interval_alpha(u, m, k) * (4 * k + 2)
            assert f == math.floor(m / (k * (20 * u + 10) ** (1 / k)) + 1e-12)
        lo, hi = interval_totality_bounds(5, 30, 2)
        assert 0 <= lo <= 1 and hi == Fraction(435, 11)


class TestParams:
    def test_example(self):
        p = theorem51_params(16, 4, 1, 2, 1)
        assert p.r == 2 and p.beta == 256
        assert isprime(p.q) and p.Q == p.q ** 2 and p.meets_modulus_target()
        assert p.u == 4 ** 48  # k^(2 (1+2) 16 / 2)

    def test_epsilon_order(self):
        with pytest.raises(ParameterError):
            theorem51_params(16, 4, 2, 2, 1)

    def test_r_zero_rejected(self):
        with pytest.raises(ParameterError):
            theorem51_params(3, 4, Fraction(1, 2), 1, 1)

    def test_u_monotone_in_n(self):
        us = [theorem51_params(n, 2, Fraction(1, 2), 1, 1).u for n in range(4, 30)]
        assert us == sorted(us)

    def test_q_is_least_prime_meeting_target(self):
        p = theorem51_params(16, 4, 1, 2, 1)
        target = (p.beta * p.n) ** p.n
        assert p.q ** p.r >= target
        # every smaller prime misses the target
        assert prevprime(p.q) ** p.r < target

    def test_m_for_non_power_of_two(self):
        p = theorem51_params(30, 3, Fraction(1, 3), 1, Fraction(1, 2))
        # m = floor(u^(eps / (2 log2 k)))
        x = math.exp(math.log(p.u) * (1 / 3) / (2 * math.log2(3)))
        assert abs(p.m - x) <= 1

    def test_random_inputs_valid(self):
        for args in E.random_param_inputs(10, Seed(3)):
            theorem51_params(*args)
