import itertools
import warnings

import pytest

from avgksum.core import (Interval, KSumInstance, KSumSolution, Modular, OracleContractError,
                          ParameterError, PlaneInstance, verify_ksum, verify_sis)
from avgksum.gen import Seed, gen_ksum, gen_sis
from avgksum.reductions import (ReductionConfig, det_mod, difference_matrix, embed_moment_curve,
                                is_affinely_degenerate, moment_determinant,
                                moment_determinant_closed_form, reduce_integer_to_modular,
                                reduce_ksum_to_plane, reduce_modular_to_integer,
                                reduce_sis_to_ksum, rerandomize, solve_plane_bruteforce,
                                totality_size)
from avgksum.solvers import solve_bruteforce, solve_mitm


def never(_inst):
    return None


class TestModularToInteger:
    def test_hand_trace(self):
        inst = KSumInstance(Interval(3), 2, [1, -1, 2, -2, 2, 3])
        sol = reduce_modular_to_integer(inst, solve_bruteforce)
        assert sol.indices == (0, 1, 3, 4)
        assert sum(inst.elements[i] for i in sol.indices) == 0

    def test_second_half_is_negated(self):
        seen = []

        def spy(block):
            seen.append(block.elements)
            return solve_bruteforce(block)

        reduce_modular_to_integer(KSumInstance(Interval(3), 2, [1, -1, 2, -2, 2, 3]), spy)
        assert seen[1] == (2, 5, 4)  # [2, -2, -3] mod 7

    def test_failure_propagates(self):
        inst = KSumInstance(Interval(3), 2, [1, -1, 2, -2, 2, 3])
        assert reduce_modular_to_integer(inst, never) is None

    def test_outputs_sum_to_zero(self):
        for s in range(200):
            inst = gen_ksum(Interval(6), 16, 2, Seed(s))
            sol = reduce_modular_to_integer(inst, solve_bruteforce)
            if sol is not None:
                assert sum(inst.elements[i] for i in sol.indices) == 0
                assert sum(1 for i in sol.indices if i < 8) == 2

    def test_odd_length_rejected(self):
        with pytest.raises(ParameterError):
            reduce_modular_to_integer(KSumInstance(Interval(3), 2, [1, 2, 3]), solve_bruteforce)


class TestIntegerToModular:
    def test_hand_trace(self):
        inst = KSumInstance(Modular(7), 2, [5, 2, 3, 4])
        seen = []

        def spy(block):
            seen.append(block.elements)
            return solve_bruteforce(block)

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            sol = reduce_integer_to_modular(inst, spy)
        assert seen == [(-2, 2, 3, -3)]
        assert sol.indices == (0, 1)

    def test_not_found(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            assert reduce_integer_to_modular(KSumInstance(Modular(7), 2, [1, 1]), solve_bruteforce) is None

    def test_warns_below_totality_size(self):
        with pytest.warns(UserWarning):
            reduce_integer_to_modular(KSumInstance(Modular(7), 2, [1, 1]), solve_bruteforce)

    def test_totality_size(self):
        # smallest m with m^k >= k^k u^2
        for u, k in [(100, 3), (1000, 4), (3, 2)]:
            m = totality_size(u, k)
            assert m ** k >= k ** k * u * u > (m - 1) ** k
        assert totality_size(100, 3) == 65 and totality_size(1000, 4) == 127

    def test_outputs_verify(self):
        for s in range(100):
            inst = gen_ksum(Modular(21), totality_size(10, 2), 2, Seed(s))
            sol = reduce_integer_to_modular(inst, solve_mitm)
            assert sol is not None and verify_ksum(inst, sol)


class TestRerandomize:
    def test_t_one_resamples(self, seed):
        elems = [3, 1, 4, 1, 5]
        sums, subsets = rerandomize(elems, 1, 50, seed, 7)
        assert all(s == elems[sub[0]] % 7 for s, sub in zip(sums, subsets))

    def test_exact_uniform_pair_sums(self):
        elems = [0, 1, 2, 0]
        counts = [0, 0, 0]
        for pair in itertools.combinations(range(4), 2):
            counts[sum(elems[i] for i in pair) % 3] += 1
        assert counts == [2, 2, 2]

    def test_determinism(self, seed):
        assert rerandomize(list(range(9)), 3, 20, seed, 11) == rerandomize(list(range(9)), 3, 20, seed, 11)


class TestSisToKsum:
    def test_solves_small_instance(self):
        for s in range(10):
            sis = gen_sis(5, 2, 64, 4, Seed(s, 0))
            cfg = ReductionConfig(5, 2, 1, 2, 4)
            x, trace = reduce_sis_to_ksum(sis, solve_bruteforce, cfg, Seed(s, 1))
            assert x is not None and trace.status == "success"
            assert verify_sis(sis, x) and x.l1 <= 4 and min(x.x) >= 0 and any(x.x)

    def test_precondition(self):
        with pytest.raises(ParameterError):
            ReductionConfig(3, 2, 1, 2, 4)

    def test_always_fail_oracle(self):
        sis = gen_sis(5, 2, 64, 4, Seed(1))
        cfg = ReductionConfig(5, 2, 1, 2, 4, attempt_cap=7)
        x, trace = reduce_sis_to_ksum(sis, never, cfg, Seed(2))
        assert x is None
        assert trace.status == "failure" and trace.failed_level == 1
        assert trace.levels[0].oracle_calls == 7 and trace.levels[0].oracle_found == 0
        assert trace.reason

    def test_default_budget(self):
        cfg = ReductionConfig(5, 2, 1, 2, 4)
        assert cfg.level_size(64, 1) == 64 and cfg.level_size(64, 2) == 2
        assert cfg.blocks(64, 1) == 10 * 4  # m_2 = 2, p_floor = 1/2

    def test_invalid_oracle_output_is_rejected(self):
        def liar(block):
            return KSumSolution(tuple(range(block.k)))

        sis = gen_sis(5, 2, 64, 4, Seed(3))
        x, trace = reduce_sis_to_ksum(sis, liar, ReductionConfig(5, 2, 1, 2, 4), Seed(4))
        if x is not None:
            assert verify_sis(sis, x)
        assert trace.levels[0].invalid_outputs > 0

    def test_cap_to_schedule_limits_elements(self):
        sis = gen_sis(5, 2, 64, 4, Seed(5))
        cfg = ReductionConfig(5, 2, 1, 2, 4, cap_to_schedule=True)
        _, trace = reduce_sis_to_ksum(sis, solve_bruteforce, cfg, Seed(6))
        for lv in trace.levels:
            assert lv.elements_produced <= lv.target

    def test_trace_json(self):
        sis = gen_sis(5, 2, 64, 4, Seed(7))
        _, trace = reduce_sis_to_ksum(sis, solve_bruteforce, ReductionConfig(5, 2, 1, 2, 4), Seed(8))
        obj = trace.to_json()
        assert obj["m_prime"] == 64 and len(obj["levels"]) == len(trace.levels)


class TestPlane:
    def test_embedding(self):
        assert embed_moment_curve(2, 1, 7) == (2, 1)
        assert embed_moment_curve(2, 2, 7) == (2, 4, 2)
        for d in range(1, 5):
            assert embed_moment_curve(0, d, 7) == (0,) * (d + 1)

    def test_degeneracy_examples(self):
        assert is_affinely_degenerate([(1, 1), (2, 1), (4, 1)], 7)
        assert not is_affinely_degenerate([(0, 0), (1, 1), (2, 4)], 7)
        assert is_affinely_degenerate([(1, 3), (1, 3), (2, 5)], 7)
        assert difference_matrix([(0, 0), (1, 1), (2, 4)], 7) == [[5, 6], [3, 4]]  # columns p_j - p_last

    def test_det_mod_matches_integer_det(self):
        import numpy as np
        rng = np.random.default_rng(1)
        for _ in range(50):
            A = rng.integers(0, 11, size=(4, 4))
            exact = round(np.linalg.det(A.astype(float)))
            assert det_mod(A.tolist(), 11) == exact % 11

    def test_plane_oracle(self):
        pts = tuple(embed_moment_curve(a, 1, 7) for a in (1, 2, 4, 3))
        idx = solve_plane_bruteforce(PlaneInstance(1, 7, pts))
        assert set(idx) == {0, 1, 2}
        assert solve_plane_bruteforce(PlaneInstance(1, 7, pts[:2])) is None

    def test_plane_oracle_output_is_degenerate(self):
        for s in range(30):
            inst = gen_ksum(Modular(11), 6, 4, Seed(s))
            pts = tuple(embed_moment_curve(a, 2, 11) for a in inst.elements)
            idx = solve_plane_bruteforce(PlaneInstance(2, 11, pts))
            if idx is not None:
                assert is_affinely_degenerate([pts[i] for i in idx], 11)

    def test_reduction_examples(self):
        assert reduce_ksum_to_plane(KSumInstance(Modular(7), 3, [1, 2, 4])).indices == (0, 1, 2)
        assert reduce_ksum_to_plane(KSumInstance(Modular(7), 3, [1, 1, 1])) is None
        assert reduce_ksum_to_plane(KSumInstance(Modular(7), 3, [1, 2, 4]), lambda p: None) is None

    def test_contract_violation(self):
        with pytest.raises(OracleContractError):
            reduce_ksum_to_plane(KSumInstance(Modular(7), 3, [1, 2, 3]), lambda p: (0, 1, 2))

    def test_reduction_needs_k_at_least_three(self):
        with pytest.raises(ParameterError):
            reduce_ksum_to_plane(KSumInstance(Modular(7), 2, [1, 6]))

    def test_determinant_identity_small(self):
        for bs in itertools.product(range(5), repeat=4):
            assert moment_determinant(bs, 5) == moment_determinant_closed_form(bs, 5)

    def test_printed_sign_is_off_by_minus_one(self):
        # the identity with sign (-1)^d fails whenever the determinant is nonzero
        for d, Q in [(1, 7), (2, 11), (3, 11)]:
            bs = list(range(1, d + 3))
            lhs = moment_determinant(bs, Q)
            assert lhs != 0
            assert lhs != moment_determinant_closed_form(bs, Q, sign_exponent=d)
            assert lhs == (-moment_determinant_closed_form(bs, Q, sign_exponent=d)) % Q
