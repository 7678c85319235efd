"""Modular (d+2)-SUM reduced to affine degeneracy of points in Z_Q^(d+1).

Each element ``a`` is placed on the curve ``(a, a^2, ..., a^d, a^(d+2))``.
For such points the matrix of differences to the last point has
determinant ``(-1)^(d+1) * (b_1 + ... + b_{d+2}) * prod_{i<j} (b_j - b_i)``
mod Q, so distinct elements are affinely degenerate exactly when they
sum to zero.
"""
from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations
from typing import Callable, Optional, Sequence

from sympy import isprime

from ..core import (CapacityError, KSumInstance, KSumSolution, Modular, OracleContractError,
                    ParameterError, PlaneInstance, verify_ksum)

PLANE_LIMIT = 10**7

PlaneOracle = Callable[[PlaneInstance], Optional[tuple]]


@lru_cache(maxsize=256)
def _check_prime(Q: int) -> None:
    if not isprime(Q):
        raise ParameterError(f"Q={Q} is not prime")


def embed_moment_curve(a: int, d: int, Q: int) -> tuple:
    if d < 1:
        raise ParameterError(f"d must be >= 1, got {d}")
    _check_prime(Q)
    a %= Q
    return tuple(pow(a, j, Q) for j in range(1, d + 1)) + (pow(a, d + 2, Q),)


def det_mod(matrix: Sequence[Sequence[int]], Q: int) -> int:
    """Determinant of a square integer matrix over the field Z_Q (Q prime)."""
    a = [[int(x) % Q for x in row] for row in matrix]
    n = len(a)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det = det * p % Q
        inv = pow(p, -1, Q)
        for r in range(col + 1, n):
            f = a[r][col] * inv % Q
            if f:
                row_r, row_c = a[r], a[col]
                for c in range(col, n):
                    row_r[c] = (row_r[c] - f * row_c[c]) % Q
    return det % Q


def difference_matrix(points: Sequence[Sequence[int]], Q: int) -> list:
    """Columns ``p_j - p_last`` for j < last, as a (d+1) x (d+1) row-major matrix."""
    last = points[-1]
    cols = [[(x - y) % Q for x, y in zip(p, last)] for p in points[:-1]]
    return [list(row) for row in zip(*cols)]


def is_affinely_degenerate(points: Sequence[Sequence[int]], Q: int) -> bool:
    """True iff the d+2 points of Z_Q^(d+1) lie in a common affine hyperplane."""
    _check_prime(Q)
    pts = [tuple(p) for p in points]
    if not pts or len(pts) != len(pts[0]) + 1:
        raise ParameterError(f"need d+2 points in Z_Q^(d+1), got {len(pts)} points")
    return det_mod(difference_matrix(pts, Q), Q) == 0


def moment_determinant(bs: Sequence[int], Q: int) -> int:
    """Determinant of the difference matrix of the curve images of ``bs``."""
    d = len(bs) - 2
    pts = [embed_moment_curve(b, d, Q) for b in bs]
    return det_mod(difference_matrix(pts, Q), Q)


def moment_determinant_closed_form(bs: Sequence[int], Q: int, sign_exponent: Optional[int] = None) -> int:
    """``(-1)^s * sum(bs) * prod_{i<j} (b_j - b_i)`` mod Q, with ``s = d+1`` by default."""
    d = len(bs) - 2
    s = d + 1 if sign_exponent is None else sign_exponent
    prod = 1
    for i, j in combinations(range(len(bs)), 2):
        prod = prod * (bs[j] - bs[i]) % Q
    return (-1) ** s * sum(bs) * prod % Q


def solve_plane_bruteforce(plane: PlaneInstance, limit: int = PLANE_LIMIT) -> Optional[tuple]:
    """Lexicographically smallest d+2 pairwise-distinct points that are affinely degenerate."""
    n = plane.d + 2
    if plane.m < n:
        return None
    if math.comb(plane.m, n) > limit:
        raise CapacityError(f"C({plane.m},{n}) exceeds enumeration limit {limit}")
    pts = plane.points
    for idx in combinations(range(plane.m), n):
        chosen = [pts[i] for i in idx]
        if len(set(chosen)) < n:
            continue
        if is_affinely_degenerate(chosen, plane.Q):
            return idx
    return None


def reduce_ksum_to_plane(instance: KSumInstance,
                         plane_oracle: PlaneOracle = solve_plane_bruteforce) -> Optional[KSumSolution]:
    """Solve modular (d+2)-SUM by asking a plane oracle about curve images.

    Oracle answers that point at repeated element values are treated as
    misses.  An answer of distinct values that is not a k-SUM means the
    oracle broke its contract and raises :class:`OracleContractError`.
    """
    if not isinstance(instance.domain, Modular):
        raise ParameterError("expected a modular instance")
    Q = instance.domain.Q
    _check_prime(Q)
    d = instance.k - 2
    if d < 1:
        raise ParameterError(f"need k = d+2 >= 3, got k={instance.k}")
    plane = PlaneInstance(d, Q, tuple(embed_moment_curve(a, d, Q) for a in instance.elements))
    idx = plane_oracle(plane)
    if idx is None:
        return None
    idx = tuple(idx)
    if len(set(idx)) != instance.k or any(not 0 <= i < instance.m for i in idx):
        raise OracleContractError(f"plane oracle returned malformed indices {idx}")
    values = [instance.elements[i] for i in idx]
    if len(set(values)) != len(values):
        return None
    sol = KSumSolution(idx)
    if not verify_ksum(instance, sol):
        raise OracleContractError(f"plane oracle output {idx} is not a {instance.k}-SUM")
    return sol
