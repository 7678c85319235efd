"""Reductions between integer k-SUM over [-u, u] and modular k-SUM over Z_{2u+1}."""
from __future__ import annotations

import warnings
from typing import Optional

from ..core import (Interval, KSumInstance, KSumSolution, Modular, ParameterError,
                    center_representative, verify_ksum)
from ..solvers import KSumOracle


def reduce_modular_to_integer(instance: KSumInstance, oracle: KSumOracle) -> Optional[KSumSolution]:
    """Solve integer 2k-SUM on 2m elements with a modular k-SUM oracle mod ``2u+1``.

    ``instance.k`` is the oracle arity k; the returned solution has 2k
    indices, k from each half.  The oracle runs on the first half and on
    the negated second half; the two k-sets combine only when their
    integer sums cancel exactly.
    """
    if not isinstance(instance.domain, Interval):
        raise ParameterError("expected an integer (interval) instance")
    if instance.m % 2:
        raise ParameterError(f"expected an even number of elements, got {instance.m}")
    u, k = instance.domain.u, instance.k
    half = instance.m // 2
    if half < k:
        raise ParameterError(f"each half needs at least k={k} elements")
    Q = 2 * u + 1
    a = instance.elements
    first = KSumInstance(Modular(Q), k, tuple(x % Q for x in a[:half]))
    second = KSumInstance(Modular(Q), k, tuple((-x) % Q for x in a[half:]))

    s1 = oracle(first)
    if s1 is None:
        return None
    s2 = oracle(second)
    if s2 is None:
        return None
    if not (verify_ksum(first, s1) and verify_ksum(second, s2)):
        return None
    total1 = sum(a[i] for i in s1.indices)
    total2 = sum(a[half + i] for i in s2.indices)
    if total1 != -total2:
        return None
    return KSumSolution(s1.indices + tuple(half + i for i in s2.indices))


def totality_size(u: int, k: int) -> int:
    """Smallest integer m with ``m >= k * u^(2/k)``."""
    target = k ** k * u * u  # m^k >= k^k u^2
    lo, hi = 1, k * (u + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def reduce_integer_to_modular(instance: KSumInstance, oracle: KSumOracle) -> Optional[KSumSolution]:
    """Solve modular k-SUM over ``Z_{2u+1}`` with an integer k-SUM oracle on ``[-u, u]``.

    Warns (but still runs) when ``m < k u^(2/k)``: soundness holds
    regardless, only the existence guarantee is lost.
    """
    if not isinstance(instance.domain, Modular):
        raise ParameterError("expected a modular instance")
    Q, k = instance.domain.Q, instance.k
    if Q % 2 == 0 or Q < 3:
        raise ParameterError(f"modulus must be odd and >= 3, got {Q}")
    u = (Q - 1) // 2
    if instance.m < totality_size(u, k):
        warnings.warn(f"m={instance.m} < k*u^(2/k); a solution is no longer guaranteed",
                      stacklevel=2)
    centered = KSumInstance(Interval(u), k, tuple(center_representative(a, Q) for a in instance.elements))
    sol = oracle(centered)
    if sol is None or not verify_ksum(centered, sol):
        return None
    return sol
