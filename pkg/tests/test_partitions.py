import itertools

import pytest

from c2lab.errors import BudgetExceededError, InputError
from c2lab.graph import (Graph, circulant, classify_adjacent_pair,
                         complete_graph, cycle_graph, octahedron, remove_pair)
from c2lab.partitions import (EdgeBipartition, count_bipartitions,
                              count_general_partitions,
                              enumerate_bipartitions,
                              enumerate_compatible_forests,
                              enumerate_general_partitions,
                              enumerate_spanning_trees, forest_is_compatible,
                              is_compatible_2forest, is_spanning_tree,
                              part_key, s_case_counts,
                              sweep_bipartitions_by_split, t_case_counts,
                              t_case_partitions)
from c2lab.point_count import c2_partition


def theta_graph():
    # 4 vertices, 5 edges = 2n - 3: cycle 0-1-2-3 plus chord 0-2
    return Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])


class TestSpanningTrees:
    @pytest.mark.parametrize("g,count", [
        (cycle_graph(3), 3),
        (cycle_graph(5), 5),
        (complete_graph(4), 16),
        (theta_graph(), 8),
    ])
    def test_counts(self, g, count):
        trees = list(enumerate_spanning_trees(g))
        assert len(trees) == count
        assert len(set(trees)) == count
        for t in trees:
            assert is_spanning_tree(g, t)

    def test_deterministic_order(self):
        g = complete_graph(4)
        assert list(enumerate_spanning_trees(g)) \
            == list(enumerate_spanning_trees(g))


class TestForests:
    def test_compatible_2forest(self):
        g = cycle_graph(4)
        assert is_compatible_2forest(g, [0, 2], ({0}, {2}))
        assert not is_compatible_2forest(g, [0, 1], ({0}, {2}))

    def test_enumerate_compatible(self):
        g = cycle_graph(4)
        forests = list(enumerate_compatible_forests(g, ({0}, {2})))
        assert len(forests) == 4

    def test_forest_is_compatible_multi_part(self):
        g = complete_graph(4)
        # single edge 0-1 plus isolated 2 and 3: three parts
        eid = g.edges.index((0, 1))
        assert forest_is_compatible(g, [eid], ({0, 1}, {2}, {3}))
        assert not forest_is_compatible(g, [eid], ({0}, {1}, {2, 3}))


class TestBipartitions:
    def test_brute_force_cross_check(self):
        g = theta_graph()
        expected = set()
        all_ids = range(g.num_edges)
        for psi in itertools.combinations(all_ids, g.n - 1):
            if is_spanning_tree(g, psi):
                phi = frozenset(all_ids) - set(psi)
                bip = EdgeBipartition(g, frozenset(psi), phi)
                try:
                    bip.validate()
                except InputError:
                    continue
                expected.add((frozenset(psi), phi))
        got = {(b.psi, b.phi) for b in enumerate_bipartitions(g)}
        assert got == expected
        assert len(got) > 0

    def test_count_matches_split_sweep(self):
        g, lab = _s_instance()
        labels = [lab[k] for k in "abcde"]
        buckets = sweep_bipartitions_by_split(g, labels)
        for key, items in buckets.items():
            if key is None:
                continue
            assert count_bipartitions(g, key) == len(items)

    def test_wrong_edge_count_yields_nothing(self):
        # a bipartition into tree + 2-forest needs exactly 2n - 3 edges
        assert list(enumerate_bipartitions(cycle_graph(4))) == []


def _s_instance():
    g = circulant(7, (1, 2))
    lab = classify_adjacent_pair(g, 0, 2)
    return remove_pair(g, 0, 2, lab.labels)


def _t_instance(g, v, w):
    lab = classify_adjacent_pair(g, v, w)
    return remove_pair(g, v, w, lab.labels)


class TestGeneralPartitions:
    def test_p2_reduces_to_bipartitions(self):
        t_graph, lab = _t_instance(octahedron(), 0, 1)
        P, _, _ = t_case_partitions(lab)
        n_bip = count_bipartitions(t_graph, part_key(*P))
        n_gen = count_general_partitions(t_graph, 2, [P])
        assert n_gen == n_bip

    def test_partition_keys_recorded(self):
        t_graph, lab = _t_instance(octahedron(), 0, 1)
        P, _, Q = t_case_partitions(lab)
        for pi in enumerate_general_partitions(t_graph, 3, [P, Q]):
            pi.validate()
            assert pi.partitions == (part_key(*P), part_key(*Q))

    def test_budget_refusal(self):
        t_graph, lab = _t_instance(octahedron(), 0, 1)
        P, _, Q = t_case_partitions(lab)
        with pytest.raises(BudgetExceededError):
            count_general_partitions(t_graph, 3, [P, Q], budget=3)


class TestCaseCounts:
    def test_s_case_parities(self):
        s_graph, lab = _s_instance()
        rep = s_case_counts(s_graph, lab)
        assert rep.sums["difference_total"] % 2 == 0
        assert rep.sums["c2_v"] % 2 == rep.sums["c2_w"] % 2

    @pytest.mark.parametrize("p", [2, 3])
    def test_t_case_sums_match_partition_route(self, p):
        g = octahedron()
        t_graph, lab = _t_instance(g, 0, 1)
        rep = t_case_counts(t_graph, lab, p)
        assert rep.sums["c2_v"] % p == c2_partition(g, 0, p)
        assert rep.sums["c2_w"] % p == c2_partition(g, 1, p)
        assert rep.sums["weighted_difference"] % p == 0

    @pytest.mark.parametrize("p", [2, 3])
    def test_t_higher_swap_equalities(self, p):
        t_graph, lab = _t_instance(circulant(7, (1, 2)), 0, 1)
        rep = t_case_counts(t_graph, lab, p)
        for ell in range(p):
            assert rep.counts[("P", ell)] == rep.counts[("P'", ell)]
