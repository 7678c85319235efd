import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from avgksum.core import (CapacityError, Interval, KSumInstance, KSumSolution, Modular,
                          ParameterError, verify_ksum)
from avgksum.gen import Seed, gen_ksum, uniform_below_array
from avgksum.solvers import (BkwConfig, bkw_level_target, bkw_oracle, solve_bkw,
                             solve_bruteforce, solve_mitm)


def _naive(inst):
    """Reference oracle: first k-subset in lexicographic order."""
    for idx in itertools.combinations(range(inst.m), inst.k):
        if inst.domain.is_zero_sum(sum(inst.elements[i] for i in idx)):
            return KSumSolution(idx)
    return None


@pytest.mark.parametrize("solver", [solve_bruteforce, solve_mitm])
@pytest.mark.parametrize("domain,k,elements,expected", [
    (Modular(7), 3, [1, 2, 4], (0, 1, 2)),
    (Modular(7), 2, [1, 2, 3], None),
    (Interval(3), 2, [1, 2, -2, 3], (1, 2)),
    (Modular(10), 2, [1, 9, 3, 5], (0, 1)),
    (Modular(7), 4, [1, 1, 2, 3], (0, 1, 2, 3)),
])
def test_examples(solver, domain, k, elements, expected):
    sol = solver(KSumInstance(domain, k, elements))
    if expected is None:
        assert sol is None
    else:
        assert sol.indices == expected


def test_bruteforce_is_lexicographic():
    inst = KSumInstance(Modular(5), 2, [1, 4, 2, 3, 4])
    assert solve_bruteforce(inst).indices == (0, 1)
    inst = KSumInstance(Modular(5), 2, [2, 1, 4, 3])
    assert solve_bruteforce(inst).indices == (0, 3)


def test_bruteforce_matches_naive_exhaustively():
    for Q in (3, 4, 5):
        for m in range(2, 6):
            for k in range(2, min(m, 4) + 1):
                for elems in itertools.product(range(Q), repeat=m):
                    inst = KSumInstance(Modular(Q), k, elems)
                    assert solve_bruteforce(inst) == _naive(inst)


def test_mitm_agrees_with_bruteforce_on_random_corpus():
    seed = Seed(77)
    n = 0
    for Q in (5, 7, 11):
        for m in range(2, 11):
            for k in range(2, min(m, 4) + 1):
                for rep in range(15):
                    inst = gen_ksum(Modular(Q), m, k, seed.child(Q, m, k, rep))
                    a, b = solve_bruteforce(inst), solve_mitm(inst)
                    assert (a is None) == (b is None)
                    if b is not None:
                        assert verify_ksum(inst, b)
                    n += 1
    assert n > 1000


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 5), st.integers(1, 12), st.data())
def test_mitm_soundness_interval(k, u, data):
    m = data.draw(st.integers(k, 9))
    elems = data.draw(st.lists(st.integers(-u, u), min_size=m, max_size=m))
    inst = KSumInstance(Interval(u), k, elems)
    a, b = solve_bruteforce(inst), solve_mitm(inst)
    assert (a is None) == (b is None)
    for s in (a, b):
        if s is not None:
            assert len(set(s.indices)) == k and verify_ksum(inst, s)


def test_capacity_guard():
    inst = KSumInstance(Modular(7), 3, [1] * 50)
    with pytest.raises(CapacityError):
        solve_bruteforce(inst, limit=100)
    with pytest.raises(CapacityError):
        solve_mitm(inst, limit=100)


def test_bkw_hand_trace():
    sol = solve_bkw([1, 2, 4, 5, 7, 8], BkwConfig(3, 2))
    assert sol is not None and len(sol.indices) == 4
    assert sum([1, 2, 4, 5, 7, 8][i] for i in sol.indices) % 9 == 0


def test_bkw_small_cases():
    assert solve_bkw([1, 2], BkwConfig(3, 1)).indices == (0, 1)
    assert solve_bkw([1, 1, 1, 1], BkwConfig(3, 2)) is None


def test_bkw_requires_enough_elements():
    with pytest.raises(ParameterError):
        solve_bkw([1, 2, 3], BkwConfig(3, 2))


def test_bkw_config():
    cfg = BkwConfig(3, 2)
    assert cfg.k == 4 and cfg.modulus == 9
    assert BkwConfig(3, 2, Fraction(1, 2)).input_size() * 2 >= cfg.input_size() - 1
    with pytest.raises(ParameterError):
        BkwConfig(4, 2)
    with pytest.raises(ParameterError):
        BkwConfig(3, 0)


def test_level_targets_decrease():
    m = BkwConfig(3, 3).input_size()
    targets = [bkw_level_target(m, 3, i) for i in range(1, 4)]
    assert targets == sorted(targets, reverse=True) and targets[-1] >= 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 1), (3, 2), (5, 1), (5, 2), (7, 2)]), st.integers(0, 2**32))
def test_bkw_outputs_always_verify(params, s):
    q, ell = params
    Q, k = q ** ell, 2 ** ell
    a = uniform_below_array(Seed(s).rng(), Q, 40 * k)
    sol = solve_bkw(a, BkwConfig(q, ell))
    if sol is not None:
        assert len(sol.indices) == k
        assert int(a[list(sol.indices)].astype(object).sum()) % Q == 0


def test_bkw_oracle_infers_parameters():
    inst = KSumInstance(Modular(9), 4, [1, 2, 4, 5, 7, 8])
    sol = bkw_oracle(inst)
    assert sol is not None and verify_ksum(inst, sol)
    with pytest.raises(ParameterError):
        bkw_oracle(KSumInstance(Modular(10), 2, [1, 9]))
    with pytest.raises(ParameterError):
        bkw_oracle(KSumInstance(Modular(9), 3, [1, 2, 6]))


def test_bkw_full_density_succeeds():
    cfg = BkwConfig(3, 2)
    a = uniform_below_array(Seed(5).rng(), 9, cfg.input_size())
    sol = solve_bkw(a, cfg)
    assert sol is not None
    assert len(np.unique(sol.indices)) == 4
