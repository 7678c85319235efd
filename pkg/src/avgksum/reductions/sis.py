"""SIS over Z_{q^r} reduced to repeated modular k-SUM over Z_q.

Level ``i`` keeps a list of values divisible by ``q^(i-1)``.  The list is
re-randomized into random ``t``-subset sums, each sum is scaled down to
its ``(i-1)``-th base-q digit, and consecutive blocks of ``m`` digits go
to the k-SUM oracle.  A returned k-set is accepted only if its
``t``-subsets are pairwise disjoint and disjoint from everything accepted
earlier in the level; accepted unions become the next level's values.
After ``r`` levels any surviving value is 0 mod ``q^r`` and its support
is a 0/1 SIS solution of weight at most ``(tk)^r``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from sympy import isprime

from ..core import (KSumInstance, KSumSolution, Modular, ParameterError, SisInstance,
                    SisSolution, verify_ksum)
from ..gen import Seed, sample_subsets
from ..solvers import KSumOracle


def rerandomize(elements, t: int, count: int, seed: Seed, Q: int):
    """Return ``count`` random ``t``-subset sums of ``elements`` mod ``Q`` and their subsets."""
    if t > len(elements):
        raise ParameterError(f"t={t} exceeds the number of elements {len(elements)}")
    subsets = sample_subsets(len(elements), t, count, seed.rng())
    sums = [sum(elements[j] for j in s) % Q for s in subsets]
    return sums, subsets


@dataclass(frozen=True)
class ReductionConfig:
    """Schedule for :func:`reduce_sis_to_ksum`.

    ``p_floor`` is the assumed oracle success probability; it sizes the
    number of oracle calls per level, ``10 * ceil(m_{i+1} / p_floor)``,
    unless ``attempt_cap`` overrides it.  With ``cap_to_schedule`` a level
    keeps exactly ``m_{i+1}`` accepted unions and stops calling the oracle
    once it has them; otherwise every budgeted block is tried and all
    accepted unions are kept.
    """
    q: int
    r: int
    t: int
    k: int
    m: int
    p_floor: Fraction = Fraction(1, 2)
    attempt_cap: Optional[int] = None
    cap_to_schedule: bool = False

    def __post_init__(self):
        if not isprime(self.q):
            raise ParameterError(f"q={self.q} is not prime")
        if self.r < 1 or self.t < 1:
            raise ParameterError("r and t must be >= 1")
        if self.k < 2 or self.m < self.k:
            raise ParameterError(f"need m >= k >= 2, got m={self.m}, k={self.k}")
        if self.q <= (self.t * self.k) ** self.r:
            raise ParameterError(f"need q > (tk)^r = {(self.t * self.k) ** self.r}, got q={self.q}")
        if not 0 < self.p_floor <= 1:
            raise ParameterError(f"p_floor must lie in (0, 1], got {self.p_floor}")

    def level_size(self, m_prime: int, i: int) -> int:
        """``m_i = ceil(m' / (10 t^2 k^2)^(i-1))``."""
        return -(-m_prime // (10 * self.t ** 2 * self.k ** 2) ** (i - 1))

    def blocks(self, m_prime: int, i: int) -> int:
        if self.attempt_cap is not None:
            return self.attempt_cap
        return 10 * math.ceil(Fraction(self.level_size(m_prime, i + 1)) / Fraction(self.p_floor))


@dataclass
class LevelTrace:
    level: int
    input_size: int
    target: int
    oracle_calls: int = 0
    oracle_found: int = 0
    invalid_outputs: int = 0
    disjointness_rejections: int = 0
    successes: int = 0
    elements_produced: int = 0


@dataclass
class TraceRecord:
    q: int
    r: int
    t: int
    k: int
    m: int
    m_prime: int
    levels: list = field(default_factory=list)
    status: str = "running"
    failed_level: Optional[int] = None
    reason: Optional[str] = None

    def to_json(self) -> dict:
        d = asdict(self)
        d["q"] = str(self.q)
        return d


def reduce_sis_to_ksum(sis: SisInstance, oracle: KSumOracle, config: ReductionConfig,
                       seed: Seed):
    """Return ``(solution, trace)``; ``solution`` is ``None`` on failure."""
    q, r, t, k, m = config.q, config.r, config.t, config.k, config.m
    if sis.q != q or sis.r != r:
        raise ParameterError(f"SIS instance is over {sis.q}^{sis.r}, config expects {q}^{r}")
    Q = sis.Q
    m_prime = sis.m_prime
    trace = TraceRecord(q, r, t, k, m, m_prime)

    values = list(sis.elements)
    supports = [(j,) for j in range(m_prime)]
    scale = 1  # q^(i-1)
    for i in range(1, r + 1):
        assert all(v % scale == 0 for v in values), "level invariant broken"
        target = config.level_size(m_prime, i + 1)
        lt = LevelTrace(level=i, input_size=len(values), target=target)
        trace.levels.append(lt)
        if len(values) < t:
            return _fail(trace, i, f"only {len(values)} values left, need t={t}")

        blocks = config.blocks(m_prime, i)
        sums, subsets = rerandomize(values, t, blocks * m, seed.child(i), Q)
        digits = []
        for c in sums:
            assert c % scale == 0, "re-randomized sum lost divisibility"
            digits.append((c // scale) % q)

        used: set = set()
        accepted = []
        for b in range(blocks):
            if config.cap_to_schedule and len(accepted) >= target:
                break
            lo = b * m
            block = KSumInstance(Modular(q), k, tuple(digits[lo:lo + m]))
            lt.oracle_calls += 1
            sol = oracle(block)
            if sol is None:
                continue
            lt.oracle_found += 1
            if not _valid(block, sol):
                lt.invalid_outputs += 1
                continue
            chosen = [subsets[lo + j] for j in sol.indices]
            union = set().union(*chosen)
            if len(union) != t * k or not union.isdisjoint(used):
                lt.disjointness_rejections += 1
                continue
            used |= union
            accepted.append(sorted(union))
            lt.successes += 1

        if len(accepted) < target:
            return _fail(trace, i, f"accepted {len(accepted)} unions, needed {target}")
        if config.cap_to_schedule:
            accepted = accepted[:target]

        scale *= q
        values = [sum(values[j] for j in u) % Q for u in accepted]
        supports = [tuple(x for j in u for x in supports[j]) for u in accepted]
        lt.elements_produced = len(values)

    assert values[0] % Q == 0
    x = [0] * m_prime
    for j in supports[0]:
        x[j] += 1
    trace.status = "success"
    return SisSolution(tuple(x)), trace


def _valid(block: KSumInstance, sol: KSumSolution) -> bool:
    try:
        return len(sol.indices) == block.k and verify_ksum(block, sol)
    except ParameterError:
        return False


def _fail(trace: TraceRecord, level: int, reason: str):
    trace.status = "failure"
    trace.failed_level = level
    trace.reason = reason
    return None, trace
