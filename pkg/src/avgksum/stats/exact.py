"""Exact distributions of t-subset sums mod Q.

Counts are computed by a size-indexed convolution over ``Z_Q`` rather
than by listing subsets, so they stay exact and cheap for moderate M.
Statistical distance uses the sum convention
``sum_z |Pr[X=z] - Pr[Y=z]|``, i.e. twice the total variation distance.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

from ..core import CapacityError, ParameterError

WORK_LIMIT = 10**8
ENUM_LIMIT = 10**6


def subset_sum_counts(elements, t: int, Q: int, limit: int = WORK_LIMIT) -> list:
    """``counts[s]`` = number of t-subsets of ``elements`` with sum ``s`` mod Q."""
    M = len(elements)
    if not 0 <= t <= M:
        raise ParameterError(f"need 0 <= t <= M, got t={t}, M={M}")
    if M * (t + 1) * Q > limit:
        raise CapacityError(f"M*t*Q = {M * (t + 1) * Q} exceeds work limit {limit}")
    # table[j][s]: j-subsets of the prefix processed so far summing to s
    table = [[0] * Q for _ in range(t + 1)]
    table[0][0] = 1
    for a in elements:
        a %= Q
        for j in range(min(t, M), 0, -1):
            prev, cur = table[j - 1], table[j]
            for s in range(Q):
                c = prev[s]
                if c:
                    cur[(s + a) % Q] += c
    return table[t]


def exact_subset_sum_distance(elements, t: int, Q: int) -> Fraction:
    """Distance of the uniform t-subset sum from uniform on ``Z_Q`` (sum convention)."""
    counts = subset_sum_counts(elements, t, Q)
    total = math.comb(len(elements), t)
    return sum((abs(Fraction(c, total) - Fraction(1, Q)) for c in counts), Fraction(0))


def exact_hitting_probability(elements, c: int, t: int, Q: int, index: int = 0) -> Fraction:
    """``Pr[index in S]`` for S uniform among t-subsets with sum ``c`` mod Q.

    Returns 1 when no t-subset reaches ``c``.
    """
    M = len(elements)
    if not 1 <= t <= M:
        raise ParameterError(f"need 1 <= t <= M, got t={t}, M={M}")
    total = subset_sum_counts(elements, t, Q)[c % Q]
    if total == 0:
        return Fraction(1)
    rest = [a for i, a in enumerate(elements) if i != index]
    with_index = subset_sum_counts(rest, t - 1, Q)[(c - elements[index]) % Q]
    return Fraction(with_index, total)


def subsets_with_sum(elements, t: int, target: int, Q: int, limit: int = ENUM_LIMIT) -> list:
    """All t-subsets (sorted index tuples) with sum ``target`` mod Q."""
    M = len(elements)
    if math.comb(M, t) > limit:
        raise CapacityError(f"C({M},{t}) exceeds enumeration limit {limit}")
    target %= Q
    return [s for s in combinations(range(M), t) if sum(elements[i] for i in s) % Q == target]
