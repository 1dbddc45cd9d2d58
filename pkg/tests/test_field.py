import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from c2lab.errors import BudgetExceededError, InputError
from c2lab.field import (all_assignments, assignment_count, check_prime,
                         decode_assignment, det_mod_p, is_prime)


class TestPrimes:
    def test_small_values(self):
        assert [p for p in range(20) if is_prime(p)] \
            == [2, 3, 5, 7, 11, 13, 17, 19]

    def test_check_prime_passes(self):
        assert check_prime(13) == 13

    @pytest.mark.parametrize("bad", [0, 1, 4, 9, -3, 21])
    def test_check_prime_rejects(self, bad):
        with pytest.raises(InputError):
            check_prime(bad)


class TestDeterminant:
    def test_empty_matrix(self):
        assert det_mod_p(np.zeros((0, 0), dtype=np.int64), 5) == 1

    def test_singular(self):
        a = np.array([[1, 2], [2, 4]], dtype=np.int64)
        assert det_mod_p(a, 7) == 0

    @given(st.integers(min_value=1, max_value=5),
           st.sampled_from([2, 3, 5, 7]),
           st.data())
    @settings(max_examples=60, deadline=None)
    def test_matches_exact_determinant(self, n, p, data):
        entries = data.draw(st.lists(
            st.integers(min_value=-9, max_value=9),
            min_size=n * n, max_size=n * n))
        a = np.array(entries, dtype=np.int64).reshape(n, n)
        exact = int(sympy.Matrix(a.tolist()).det())
        assert det_mod_p(a % p, p) == exact % p


class TestAssignments:
    def test_count(self):
        assert assignment_count(4, 3) == 81

    def test_lexicographic_first_var_most_significant(self):
        pts = list(all_assignments(2, 3))
        assert pts[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]
        assert len(pts) == 9

    @given(st.integers(min_value=0, max_value=3),
           st.sampled_from([2, 3, 5]))
    @settings(max_examples=40, deadline=None)
    def test_decode_round_trip(self, num_vars, p):
        for idx, point in enumerate(all_assignments(num_vars, p)):
            assert decode_assignment(idx, num_vars, p) == point

    def test_budget_refusal(self):
        with pytest.raises(BudgetExceededError) as err:
            list(all_assignments(10, 3, budget=100))
        assert err.value.required == 3 ** 10
        assert err.value.budget == 100
