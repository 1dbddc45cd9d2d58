from collections import Counter

import pytest

from c2lab.case_sweeps import r_case_suite, s_case_suite, t_orbit_suite
from c2lab.errors import StructuralAssumptionError
from c2lab.graph import (Graph, circulant, classify_adjacent_pair,
                         octahedron, remove_pair)
from c2lab.involutions import (ControlSpec, IN_TWO_PART, SELF_OR_SINGLETON,
                               find_control_vertex,
                               find_two_control_vertices, orbit_of,
                               r_case_involution, s_case_involution,
                               swap_at_2valent, swap_two_valent)
from c2lab.partitions import (EdgeBipartition, enumerate_general_partitions,
                              sweep_bipartitions_by_split, t_case_partitions)


def cube_complement():
    return Graph(8, [(i, j) for i in range(8) for j in range(i + 1, 8)
                     if bin(i ^ j).count("1") >= 2])


def star_completed(phi_edges, n):
    """An EdgeBipartition whose phi is as given and psi is a star at n-1.

    The last vertex is an extra hub adjacent to everything, so psi is a
    spanning star and the graph has exactly 2n - 3 edges as required.
    """
    hub = n - 1
    psi_edges = [(v, hub) for v in range(hub)]
    g = Graph(n, phi_edges + psi_edges)
    m = len(phi_edges)
    bip = EdgeBipartition(g, frozenset(range(m, m + hub)),
                          frozenset(range(m)))
    bip.validate()
    return bip


class TestControlVertex:
    # the hand tree: marked p4 = {x, q, r, s}, edges x-v, q-v, v-w, r-w, s-w
    # with x=0, q=1, v=2, r=3, s=4, w=5 and hub 6
    def hand_tree(self):
        return star_completed(
            [(0, 2), (1, 2), (2, 5), (3, 5), (4, 5)], 7)

    def test_in_two_part_picks_w(self):
        bip = self.hand_tree()
        assert find_control_vertex(bip, {0, 1, 3, 4},
                                   ControlSpec(0, IN_TWO_PART)) == 5

    def test_self_or_singleton_picks_v(self):
        bip = self.hand_tree()
        assert find_control_vertex(bip, {0, 1, 3, 4},
                                   ControlSpec(0, SELF_OR_SINGLETON)) == 2

    def test_contracted_path_x_equals_v(self):
        # x = v: marked {x, q, r, s} with edges q-x, x-w, r-w, s-w
        bip = star_completed([(1, 0), (0, 4), (2, 4), (3, 4)], 6)
        assert find_control_vertex(bip, {0, 1, 2, 3},
                                   ControlSpec(0, SELF_OR_SINGLETON)) == 0


class TestTwoControlVertices:
    def test_hand_tree_path_shape(self):
        # path v-m-w: two marked leaves at v, marked x' at m, two at w
        # v=0, m=1, w=2, leaves 3,4 at v, x'=5 at m, leaves 6,7 at w, hub 8
        bip = star_completed(
            [(3, 0), (4, 0), (0, 1), (5, 1), (1, 2), (6, 2), (7, 2)], 9)
        assert set(find_two_control_vertices(bip, {3, 4, 5, 6, 7})) == {0, 2}

    def test_illegal_star_tree(self):
        # a 5-valent centre violates the valency bound of a legal partition
        bip = star_completed([(0, i) for i in range(1, 6)], 7)
        with pytest.raises(StructuralAssumptionError):
            find_two_control_vertices(bip, {1, 2, 3, 4, 5})


def _instance(g, v, w, letters):
    lab = classify_adjacent_pair(g, v, w)
    rg, marks = remove_pair(g, v, w, lab.labels)
    return rg, marks, [marks[k] for k in letters]


class TestSwapAt2Valent:
    def test_involution(self):
        rg, marks, labv = _instance(circulant(7, (1, 2)), 0, 2, "abcde")
        c = marks["c"]
        assert rg.degree(c) == 2
        c_edges = set(rg.edges_at(c))
        buckets = sweep_bipartitions_by_split(rg, labv)
        checked = 0
        for items in buckets.values():
            for bip in items:
                if len(c_edges & bip.psi) != 1:
                    continue
                again = swap_at_2valent(swap_at_2valent(bip, c), c)
                assert again.psi == bip.psi and again.phi == bip.phi
                checked += 1
        assert checked > 0


class TestSCase:
    def test_suite_passes(self):
        rep = s_case_suite(circulant(7, (1, 2)), 0, 2)
        assert rep.ok
        assert rep.sweeps["S-bijection"].domain_size == 8
        assert rep.sweeps["S-bij-cor"].domain_size == 4
        assert rep.sweeps["S-swapc"].domain_size == 2
        assert all(v == 0 for v in rep.parities.values())

    def test_trace_symmetry_and_control_stability(self):
        rg, marks, labv = _instance(circulant(7, (1, 2)), 0, 2, "abcde")
        c = marks["c"]
        buckets = sweep_bipartitions_by_split(rg, labv)
        dom = [b for key, items in buckets.items() for b in items
               if key is not None and (
                   (len(key[0]) == 1 and c in key[1])
                   or (len(key[1]) == 1 and c in key[0]))]
        assert dom
        for bip in dom:
            out, trace = s_case_involution(bip, marks)
            back, trace2 = s_case_involution(out, marks)
            assert back.psi == bip.psi and back.phi == bip.phi
            assert trace2.control == trace.control
            if trace.case == trace2.case:
                assert set(trace2.psi_out) == set(trace.phi_out)
                assert set(trace2.phi_out) == set(trace.psi_out)


class TestRCase:
    def test_suite_passes_on_cube_complement(self):
        rep = r_case_suite(cube_complement(), 0, 7)
        assert rep.ok
        assert rep.sweeps["R-control-bij"].domain_size == 12
        assert rep.sweeps["R-bijection"].domain_size == 36

    def test_control_pair_stability(self):
        rg, marks, labv = _instance(cube_complement(), 0, 7, "abcdef")
        buckets = sweep_bipartitions_by_split(rg, labv)
        dom = [b for key, items in buckets.items() for b in items
               if key is not None
               and {len(key[0]), len(key[1])} == {1, 5}]
        for bip in dom:
            out, trace = r_case_involution(bip, marks)
            _, trace2 = r_case_involution(out, marks)
            assert set(trace.control) == set(trace2.control)

    def test_crossing_configuration_handled(self):
        # the K3,3 reduction: every 1|5 element has interacting stay-in
        # swaps, which must fall back to the single-vertex swap
        g = Graph(8, [(0, 4), (0, 5), (0, 6), (0, 7), (1, 4), (1, 5),
                      (1, 6), (1, 7), (2, 4), (2, 5), (2, 6), (2, 7),
                      (3, 4), (3, 5), (3, 6), (3, 7)])
        # K4,4's reduction is K3,3
        rep = r_case_suite(g, 0, 4)
        assert rep.ok
        rg, marks, labv = _instance(g, 0, 4, "abcdef")
        buckets = sweep_bipartitions_by_split(rg, labv)
        dom = [b for key, items in buckets.items() for b in items
               if key is not None
               and {len(key[0]), len(key[1])} == {1, 5}]
        tags = Counter(r_case_involution(b, marks)[1].case for b in dom)
        assert set(tags) == {"R-1x"}


class TestOrbits:
    def test_p2_orbit_size_two(self):
        t_graph, lab = remove_pair(octahedron(), 0, 1,
                                   classify_adjacent_pair(
                                       octahedron(), 0, 1).labels)
        P, _, _ = t_case_partitions(lab)
        marked = [lab[k] for k in "abcd"]
        b = lab["b"]
        for pi in enumerate_general_partitions(t_graph, 2, [P]):
            orbit = orbit_of(pi, 0, b, marked)
            assert len(orbit) == 2

    def test_p3_suite(self):
        rep = t_orbit_suite(circulant(7, (1, 2)), 0, 1, 3)
        assert rep.ok
        assert set(rep.orbit_sizes) == {3}
        # swap-out orbits split 1/2 across the two classes
        for (size, in_a, in_b), _ in rep.orbit_splits.items():
            assert size == 3
            assert (in_a, in_b) in ((1, 2), (0, 3), (3, 0), (2, 1))

    def test_swap_two_valent_is_involution(self):
        t_graph, lab = remove_pair(octahedron(), 0, 1,
                                   classify_adjacent_pair(
                                       octahedron(), 0, 1).labels)
        P, _, Q = t_case_partitions(lab)
        marked = [lab[k] for k in "abcd"]
        b = lab["b"]
        for pi in enumerate_general_partitions(t_graph, 3, [P, Q]):
            c_edges = t_graph.edges_at(b)
            e0 = next(e for e in c_edges if e in pi.forests[0])
            e1 = next(e for e in c_edges if e in pi.trees[0])
            if e0 == e1:
                continue
            twice = swap_two_valent(
                swap_two_valent(pi, b, 0, 0, marked), b, 0, 0, marked)
            assert twice.key() == pi.key()
