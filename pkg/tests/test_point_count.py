import itertools
import random

import pytest

from c2lab.errors import BudgetExceededError, InputError
from c2lab.field import all_assignments
from c2lab.graph import (circulant, complete_graph, cycle_graph, decomplete,
                         octahedron)
from c2lab.identities import check_chevalley_warning, random_dense_poly
from c2lab.point_count import (DensePoly, c2_denom, c2_direct, c2_partition,
                               compute_routes, count_zeros,
                               cw_coefficient_check,
                               default_denominator_edges)
from c2lab.polynomials import KirchhoffHandle


class TestTriangleGroundTruth:
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_zero_count_is_p_squared(self, p):
        assert count_zeros(KirchhoffHandle(cycle_graph(3)), p) == p * p

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_c2_is_one(self, p):
        assert c2_direct(cycle_graph(3), p) == 1


class TestDivisibility:
    @pytest.mark.parametrize("g", [cycle_graph(4), complete_graph(4),
                                   complete_graph(5),
                                   decomplete(octahedron(), 5).graph])
    @pytest.mark.parametrize("p", [2, 3])
    def test_p_squared_divides(self, g, p):
        total = count_zeros(KirchhoffHandle(g), p)
        assert total % (p * p) == 0


class TestRouteAgreement:
    @pytest.mark.parametrize("g", [complete_graph(5), octahedron()])
    @pytest.mark.parametrize("p", [2, 3])
    def test_all_three_routes(self, g, p):
        for v in range(g.n):
            rep = compute_routes(g, v, p)
            assert rep.agreement, rep.residues
            assert set(rep.residues) == {"direct", "denom", "partition"}

    def test_known_value_k5(self):
        # the 4-point box: c2 = -1 mod p
        for p in (2, 3):
            assert c2_direct(decomplete(complete_graph(5), 4).graph, p) \
                == (p - 1)


class TestDenominatorRoute:
    @pytest.mark.parametrize("p", [2, 3])
    def test_edge_choice_independence(self, p):
        g = decomplete(complete_graph(5), 4).graph
        baseline = c2_denom(g, p)
        for edges in itertools.combinations(range(g.num_edges), 3):
            assert c2_denom(g, p, edges=edges) == baseline

    def test_default_edges_at_3valent_vertex(self):
        g = decomplete(complete_graph(5), 4).graph
        u = next(x for x in range(g.n) if g.degree(x) == 3)
        edges = default_denominator_edges(g)
        assert set(edges) == set(g.edges_at(u))

    def test_too_few_edges(self):
        with pytest.raises(InputError):
            c2_denom(cycle_graph(3).contract_edge(0), 2)


class TestPartitionRoute:
    def test_requires_4_regular(self):
        with pytest.raises(InputError):
            c2_partition(cycle_graph(5), 0, 2)

    @pytest.mark.parametrize("p", [2, 3])
    def test_matches_direct(self, p):
        g = circulant(7, (1, 2))
        assert c2_partition(g, 0, p) == c2_direct(decomplete(g, 0).graph, p)


class TestBudgets:
    def test_direct_refusal(self):
        with pytest.raises(BudgetExceededError):
            c2_direct(decomplete(octahedron(), 5).graph, 3, budget=10)

    def test_report_collects_counts(self):
        rep = compute_routes(complete_graph(5), 0, 2)
        assert rep.counts["direct"] % 4 == 0


class TestDensePoly:
    def test_mul_cap_exact_for_low_exponents(self):
        p = 3
        f = DensePoly(2, {(1, 0): 1, (0, 1): 2, (0, 0): 1}, p)
        g = f.mul(f, cap=p - 1)
        # (x + 2y + 1)^2 has x^2 term capped away; xy term = 2*2 = 4 = 1
        assert g.coeffs.get((1, 1), 0) == (2 + 2) % p

    def test_eval(self):
        f = DensePoly(2, {(1, 1): 1, (0, 0): 4}, 5)
        assert f.eval((2, 3)) == (6 + 4) % 5


class TestChevalleyWarning:
    def test_monomial_form(self):
        # F = x1 x2 x3 over F_2: 7 zeros, coefficient of x1 x2 x3 in F is 1
        f = DensePoly(3, {(1, 1, 1): 1}, 2)
        coeff, zeros, ok = cw_coefficient_check(f)
        assert ok
        assert zeros == 7 and coeff == 1

    def test_product_form_p2(self):
        # F = x1 x2 over F_2 in 2 variables: 3 zeros, coefficient 1
        f = DensePoly(2, {(1, 1): 1}, 2)
        coeff, zeros, ok = cw_coefficient_check(f)
        assert ok and zeros == 3 and coeff == 1

    def test_random_polys(self):
        rng = random.Random(99)
        assert check_chevalley_warning(60, rng) == 0

    def test_degree_matches_variables(self):
        rng = random.Random(7)
        for _ in range(10):
            f = random_dense_poly(3, 3, rng)
            assert f.degree() == 3


class TestInputValidation:
    def test_disconnected_rejected(self):
        from c2lab.graph import Graph
        with pytest.raises(InputError):
            c2_direct(Graph(4, [(0, 1), (2, 3)]), 2)

    def test_non_prime_rejected(self):
        with pytest.raises(InputError):
            c2_direct(cycle_graph(3), 4)
