"""Seeded generation of random instances.

Every random quantity in the package is drawn from a ``Seed``: a
``(master, stream)`` pair plus an optional path of sub-stream indices.
Each path names an independent PCG64 stream, so parallel trials never
share generator state.

Uniform values are produced by rejection sampling on raw 64-bit words:
an attempt for a bound ``n`` consumes ``ceil(bits(n-1) / 64)`` words,
masks them to ``bits(n-1)`` bits and is rejected when ``>= n``.  The
single-word vectorized path and the multi-word integer path follow the
same word schedule and therefore return identical values.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sympy import isprime

from .core import Interval, KSumInstance, Modular, ParameterError, SisInstance

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Seed:
    master: int
    stream: int = 0
    path: tuple = ()

    def __post_init__(self):
        for v in (self.master, self.stream, *self.path):
            if not 0 <= v <= _MASK64:
                raise ParameterError(f"seed components must be 64-bit unsigned, got {v}")

    def child(self, *path: int) -> "Seed":
        return Seed(self.master, self.stream, self.path + tuple(path))

    def rng(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.master, spawn_key=(self.stream, *self.path))
        return np.random.Generator(np.random.PCG64(ss))


def uniform_below(rng: np.random.Generator, n: int, size: int, *, force_big: bool = False) -> list:
    """Return ``size`` i.i.d. uniform integers in ``[0, n)``."""
    if n < 1:
        raise ParameterError(f"bound must be >= 1, got {n}")
    if n == 1:
        return [0] * size
    bits = (n - 1).bit_length()
    words = -(-bits // 64)
    if words == 1 and not force_big:
        return uniform_below_array(rng, n, size).tolist()
    out: list = []
    mask = (1 << bits) - 1
    while len(out) < size:
        need = size - len(out)
        raw = rng.bit_generator.random_raw((2 * need + 16) * words).tolist()
        for j in range(0, len(raw), words):
            v = 0
            for w in range(words):
                v |= raw[j + w] << (64 * w)
            v &= mask
            if v < n:
                out.append(v)
                if len(out) == size:
                    break
    return out


def uniform_below_array(rng: np.random.Generator, n: int, size: int) -> np.ndarray:
    """Array version of :func:`uniform_below` for ``n <= 2**64``; same word schedule."""
    if not 1 <= n <= 2**64:
        raise ParameterError(f"array sampling needs 1 <= n <= 2^64, got {n}")
    if n == 1:
        return np.zeros(size, dtype=np.uint64)
    bits = (n - 1).bit_length()
    mask = np.uint64((1 << bits) - 1)
    bound = n
    chunks = []
    have = 0
    while have < size:
        need = size - have
        # acceptance probability is > 1/2, so 2*need + slack almost always suffices
        raw = rng.bit_generator.random_raw(2 * need + 16) & mask
        raw = raw[raw < np.uint64(bound)] if bound < 2**64 else raw
        raw = raw[:need]
        chunks.append(raw)
        have += len(raw)
    return np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.uint64)


def sample_subsets(n: int, t: int, count: int, rng: np.random.Generator) -> list:
    """Draw ``count`` independent uniform ``t``-subsets of ``range(n)`` as sorted tuples."""
    if t > n:
        raise ParameterError(f"subset size t={t} exceeds population {n}")
    if t < 1:
        raise ParameterError(f"subset size must be >= 1, got {t}")
    out = []
    for _ in range(count):
        # uniform ordered t-tuples with distinct entries, i.e. uniform t-subsets
        while True:
            draw = uniform_below(rng, n, t)
            if len(set(draw)) == t:
                break
        out.append(tuple(sorted(draw)))
    return out


def gen_ksum(domain, m: int, k: int, seed: Seed) -> KSumInstance:
    if k < 2 or m < k:
        raise ParameterError(f"need m >= k >= 2, got m={m}, k={k}")
    rng = seed.rng()
    raw = uniform_below(rng, domain.size, m)
    if isinstance(domain, Interval):
        raw = [v - domain.u for v in raw]
    return KSumInstance(domain, k, tuple(raw))


def gen_sis(q: int, r: int, m_prime: int, beta: int, seed: Seed) -> SisInstance:
    if not isprime(q):
        raise ParameterError(f"q={q} is not prime")
    if r < 1 or m_prime < 1:
        raise ParameterError(f"need r >= 1 and m' >= 1, got r={r}, m'={m_prime}")
    elements = uniform_below(seed.rng(), q ** r, m_prime)
    return SisInstance(q, r, beta, tuple(elements))


def gen_modular_elements(Q: int, m: int, seed: Seed) -> list:
    return uniform_below(seed.rng(), Q, m)


__all__ = ["Seed", "uniform_below", "uniform_below_array", "sample_subsets", "gen_ksum", "gen_sis",
           "gen_modular_elements", "Modular", "Interval"]
