"""Analytic probability bounds used as experiment oracles.

Bounds are returned raw; callers clamp to ``[0, 1]`` where a probability
is expected and keep the raw value alongside.
"""
from __future__ import annotations

import math
from fractions import Fraction


def clamp01(x):
    return min(max(x, 0), 1)


def modular_totality_bounds(Q: int, m: int, k: int):
    """``(1 - Q/C(m,k), C(m,k)/Q)`` for a uniform modular instance, as exact rationals."""
    n = math.comb(m, k)
    if n == 0:
        return Fraction(0), Fraction(0)
    return 1 - Fraction(Q, n), Fraction(n, Q)


def interval_alpha(u: int, m: int, k: int) -> Fraction:
    """``floor(m / (k (20u+10)^(1/k))) / (4k+2)``, with the floor evaluated exactly."""
    # largest f with (f k)^k (20u + 10) <= m^k
    lo, hi = 0, m // k + 1
    while lo < hi:
        f = (lo + hi + 1) // 2
        if (f * k) ** k * (20 * u + 10) <= m ** k:
            lo = f
        else:
            hi = f - 1
    return Fraction(lo, 4 * k + 2)


def interval_totality_bounds(u: int, m: int, k: int):
    """``(1 - e^(-alpha), C(m,k)/(2u+1))``; the lower bound is a float."""
    alpha = interval_alpha(u, m, k)
    return 1 - math.exp(-float(alpha)), Fraction(math.comb(m, k), 2 * u + 1)


def lhl_beta(Q: int, M: int, t: int) -> float:
    """Distance threshold ``(Q / C(M,t))^(1/4)`` for t-subset sums."""
    return (Q / math.comb(M, t)) ** 0.25


def rerandomization_delta(Q: int, M: int, M_out: int, t: int) -> float:
    """``(M'+1) Q^(1/4) C(M,t)^(-1/4)``: distance of ``(a, c)`` from uniform."""
    return (M_out + 1) * Q ** 0.25 * math.comb(M, t) ** -0.25


def hitting_threshold(M: int, t: int, epsilon: float) -> float:
    return (1 + epsilon) / (1 - epsilon) * t / M


def hitting_exceed_bound(Q: int, M: int, t: int, epsilon: float) -> float:
    """Bound on ``Pr[hitting probability >= hitting_threshold]`` over random (a, c)."""
    return 4 * Q ** 0.25 / (epsilon * math.comb(M - 1, t - 1) ** 0.25)


def multi_hitting_bound(v: int, v_out: int, M: int, t: int, epsilon: float) -> float:
    """``(v + t v') v' (1+eps)/(1-eps) t/M`` for |I| <= v, |J| <= v'."""
    return (v + t * v_out) * v_out * hitting_threshold(M, t, epsilon)


def multi_hitting_failure(Q: int, M: int, M_out: int, t: int, epsilon: float) -> float:
    return 4 * M * M_out * Q ** 0.25 / (epsilon * math.comb(M - 1, t - 1) ** 0.25)


def binomial_sigma(p, n: int) -> float:
    p = float(clamp01(p))
    return math.sqrt(p * (1 - p) / n) if n else 0.0
