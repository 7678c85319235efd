"""Parameter calculator for the SIVP -> SIS -> k-SUM chain.

All derived quantities are exact integers.  Rational exponents are
handled with integer roots; the only floating step is ``m`` when ``k``
is not a power of two, where the exponent ``eps / (2 log2 k)`` is
irrational and mpmath is used at a precision well beyond the size of
the result.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from sympy import integer_nthroot, nextprime

from ..core import ParameterError


def _root_floor(x: int, n: int) -> int:
    return integer_nthroot(x, n)[0]


def _root_ceil(x: int, n: int) -> int:
    r, exact = integer_nthroot(x, n)
    return r if exact else r + 1


def _pow_frac_floor(base: int, e: Fraction) -> int:
    """``floor(base^e)`` for integer base >= 1 and rational e >= 0."""
    return _root_floor(base ** e.numerator, e.denominator)


@dataclass(frozen=True)
class ParamSet:
    n: int
    k: int
    epsilon: Fraction
    epsilon_prime: Fraction
    c: Fraction
    u: int
    m: int
    r: int
    beta: int
    q: int
    Q: int
    m_prime: int

    def q_target_exponent(self) -> Fraction:
        return self.c * self.n

    def meets_modulus_target(self) -> bool:
        """Exact check of ``Q >= (beta n)^(c n)``."""
        e = self.q_target_exponent()
        return self.Q ** e.denominator >= (self.beta * self.n) ** e.numerator

    def as_dict(self) -> dict:
        return {name: str(getattr(self, name)) for name in self.__dataclass_fields__}


def theorem51_params(n, k, epsilon, epsilon_prime, c) -> ParamSet:
    n, k = int(n), int(k)
    eps, eps1, c = Fraction(epsilon), Fraction(epsilon_prime), Fraction(c)
    if n < 2 or k < 2:
        raise ParameterError(f"need n, k >= 2, got n={n}, k={k}")
    if not 0 < eps < eps1:
        raise ParameterError(f"need 0 < epsilon < epsilon', got {eps}, {eps1}")
    if c <= 0:
        raise ParameterError(f"c must be positive, got {c}")

    u = _pow_frac_floor(k, 2 * (1 + eps1) * c * n / eps1)

    # r = floor(eps' log n / (2 log k)): largest r with k^(2r) <= n^eps'
    a, b = eps1.numerator, eps1.denominator
    nb = n ** a
    r = 0
    while k ** (2 * (r + 1) * b) <= nb:
        r += 1
    if r < 1:
        raise ParameterError(f"r = floor(eps' log n / (2 log k)) = 0 for n={n}, k={k}, eps'={eps1}")

    beta = _pow_frac_floor(n, eps1)

    e = c * n
    q0 = _root_ceil((beta * n) ** e.numerator, r * e.denominator)
    q = nextprime(q0 - 1) if q0 > 2 else 2
    Q = q ** r

    f = 10 * c * n / (k * eps1)
    m_prime = _root_ceil(k ** f.numerator * n ** (10 * f.denominator), f.denominator)

    m = _m_from_u(u, k, eps)
    return ParamSet(n, k, eps, eps1, c, u, m, r, beta, q, Q, m_prime)


def _m_from_u(u: int, k: int, eps: Fraction) -> int:
    """``floor(u^(eps / (2 log2 k)))``."""
    j = k.bit_length() - 1
    if k == 1 << j:
        return _pow_frac_floor(u, eps / (2 * j))
    digits = len(str(u)) + 40
    with mpmath.workdps(digits):
        x = mpmath.power(u, mpmath.mpf(eps.numerator) / eps.denominator / (2 * mpmath.log(k, 2)))
        return int(mpmath.floor(x))
