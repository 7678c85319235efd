"""k-SUM oracles.

Every solver takes a :class:`~avgksum.core.KSumInstance` and returns a
:class:`~avgksum.core.KSumSolution` or ``None`` when it finds nothing.
The BKW/Wagner solver additionally needs a :class:`BkwConfig`;
:func:`bkw_oracle` adapts it to the common calling convention.
"""
from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional

import numpy as np
from sympy import isprime, perfect_power

from .core import (CapacityError, KSumInstance, KSumSolution, Modular, ParameterError,
                   verify_ksum)

BRUTE_FORCE_LIMIT = 10**9

KSumOracle = Callable[[KSumInstance], Optional[KSumSolution]]


def _guard(m: int, k: int, limit: int) -> None:
    if math.comb(m, k) > limit:
        raise CapacityError(f"C({m},{k}) = {math.comb(m, k)} exceeds enumeration limit {limit}")


def _needed(instance: KSumInstance, partial: int) -> int:
    if isinstance(instance.domain, Modular):
        return (-partial) % instance.domain.Q
    return -partial


def solve_bruteforce(instance: KSumInstance, limit: int = BRUTE_FORCE_LIMIT) -> Optional[KSumSolution]:
    """Return the lexicographically smallest zero-sum k-subset, or ``None``.

    Prefixes of ``k-1`` indices are enumerated in lexicographic order and
    the last index is the smallest later position holding the required
    value, so the first hit is the lexicographic minimum.
    """
    m, k = instance.m, instance.k
    _guard(m, k, limit)
    vals = instance.elements
    positions: dict = {}
    for i, a in enumerate(vals):
        positions.setdefault(a, []).append(i)
    for prefix in combinations(range(m - 1), k - 1):
        need = _needed(instance, sum(vals[i] for i in prefix))
        where = positions.get(need)
        if where is None:
            continue
        j = bisect_right(where, prefix[-1])
        if j < len(where):
            return KSumSolution(prefix + (where[j],))
    return None


def solve_mitm(instance: KSumInstance, limit: int = BRUTE_FORCE_LIMIT) -> Optional[KSumSolution]:
    """Meet-in-the-middle search in time about ``C(m, ceil(k/2))``.

    A sorted k-subset splits into its first ``ceil(k/2)`` indices (the left
    half) and the remaining ones; matching only left halves whose largest
    index precedes the right half's smallest index keeps the halves
    disjoint without losing any solution.
    """
    m, k = instance.m, instance.k
    k1 = (k + 1) // 2
    k2 = k - k1
    _guard(m, k1, limit)
    _guard(m, k2, limit)
    vals = instance.elements
    modular = isinstance(instance.domain, Modular)
    Q = instance.domain.Q if modular else None

    left = []
    for idx in combinations(range(m), k1):
        s = sum(vals[i] for i in idx)
        left.append((s % Q if modular else s, idx[-1], idx))
    left.sort()
    keys = [(s, last) for s, last, _ in left]

    for right in combinations(range(m), k2):
        need = _needed(instance, sum(vals[i] for i in right))
        lo = bisect_left(keys, (need, -1))
        if lo < len(keys) and keys[lo][0] == need and keys[lo][1] < right[0]:
            return KSumSolution(left[lo][2] + right)
    return None


@dataclass(frozen=True)
class BkwConfig:
    """Parameters of the iterated-pairing solver for ``2**ell``-SUM mod ``q**ell``.

    ``density_factor`` scales the list size ``1000 ell^2 q^2 2^ell log2 q``
    prescribed by the analysis; 1 means the formula as stated.
    """
    q: int
    ell: int
    density_factor: Fraction = Fraction(1)

    def __post_init__(self):
        if not isprime(self.q):
            raise ParameterError(f"q={self.q} is not prime")
        if self.ell < 1:
            raise ParameterError(f"ell must be >= 1, got {self.ell}")
        if self.density_factor <= 0:
            raise ParameterError("density_factor must be positive")

    @property
    def k(self) -> int:
        return 2 ** self.ell

    @property
    def modulus(self) -> int:
        return self.q ** self.ell

    def input_size(self) -> int:
        e = self.ell
        return math.ceil(float(self.density_factor) * 1000 * e * e * self.q ** 2 * 2 ** e
                         * math.log2(self.q))


def bkw_level_target(m: int, ell: int, level: int) -> int:
    """Minimum size of the list produced by pairing level ``level`` (1-based).

    Uses ``(ell^2 - level^2)/ell^2 * m / 2^level`` and never less than one
    element, since the final level must leave a solution behind.
    """
    return max(1, math.ceil(Fraction(ell * ell - level * level, ell * ell) * m / 2 ** level))


def _pair_by_digit(digits: np.ndarray, q: int):
    """Greedy pairing of positions whose digits are additive inverses mod q.

    Class j is matched against class q-j front to front; a self-inverse
    class (0, and 1 when q == 2) pairs consecutive members.  Members of a
    class are taken in ascending position order.
    """
    order = np.argsort(digits, kind="stable")
    counts = np.bincount(digits, minlength=q)
    starts = np.concatenate(([0], np.cumsum(counts)))
    left, right = [], []
    for j in range(q):
        inv = (-j) % q
        cls = order[starts[j]:starts[j + 1]]
        if j == inv:
            n = len(cls) // 2
            left.append(cls[0:2 * n:2])
            right.append(cls[1:2 * n:2])
        elif j < inv:
            other = order[starts[inv]:starts[inv + 1]]
            n = min(len(cls), len(other))
            left.append(cls[:n])
            right.append(other[:n])
    if not left:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(left), np.concatenate(right)


def solve_bkw(elements, config: BkwConfig) -> Optional[KSumSolution]:
    """Find ``2**ell`` distinct indices whose elements sum to 0 mod ``q**ell``.

    Level i pairs list entries whose base-q digit ``i-1`` are inverses, so
    each pair sum is divisible by ``q**i``.  Only parent pointers are kept;
    the index set is unwound after the last level.  Returns ``None`` when a
    level produces fewer entries than :func:`bkw_level_target`.
    """
    q, ell = config.q, config.ell
    Q = config.modulus
    m = len(elements)
    if m < 2 ** ell:
        raise ParameterError(f"need at least 2^ell = {2 ** ell} elements, got {m}")
    if isinstance(elements, np.ndarray) and elements.dtype.kind in "iu" and Q < 2**62:
        vals = (elements % Q).astype(np.int64)
    elif Q < 2**62:
        vals = np.asarray([int(a) % Q for a in elements], dtype=np.int64)
    else:
        vals = np.asarray([int(a) % Q for a in elements], dtype=object)
    parents = []
    scale = 1
    for level in range(1, ell + 1):
        digits = np.asarray((vals // scale) % q, dtype=np.int64)
        L, R = _pair_by_digit(digits, q)
        if len(L) < bkw_level_target(m, ell, level):
            return None
        vals = (vals[L] + vals[R]) % Q
        parents.append((L, R))
        scale *= q
    # vals[0] is now 0 mod q**ell; unwind its index set.
    idx = np.array([0], dtype=np.int64)
    for L, R in reversed(parents):
        idx = np.concatenate((L[idx], R[idx]))
    return KSumSolution(tuple(int(i) for i in idx))


def bkw_oracle(instance: KSumInstance, density_factor: Fraction = Fraction(1)) -> Optional[KSumSolution]:
    """Adapter: run :func:`solve_bkw` on an instance over ``Z_{q^ell}`` with ``k = 2^ell``."""
    if not isinstance(instance.domain, Modular):
        raise ParameterError("BKW solves modular instances only")
    k = instance.k
    ell = k.bit_length() - 1
    if k != 2 ** ell:
        raise ParameterError(f"BKW needs k a power of two, got {k}")
    Q = instance.domain.Q
    if isprime(Q):
        q, e = Q, 1
    else:
        pp = perfect_power(Q)
        if not pp or not isprime(pp[0]):
            raise ParameterError(f"BKW needs a prime-power modulus, got {Q}")
        q, e = pp
    if e != ell:
        raise ParameterError(f"BKW with k={k} needs modulus q^{ell}, got {q}^{e}")
    cfg = BkwConfig(q, ell, density_factor)
    sol = solve_bkw(instance.elements, cfg)
    if sol is not None and not verify_ksum(instance, sol):
        raise AssertionError("BKW produced an invalid solution")
    return sol


SOLVERS = {
    "brute": solve_bruteforce,
    "mitm": solve_mitm,
    "bkw": bkw_oracle,
}
