"""Spanning trees, spanning 2-forests, and the counted edge-partition sets.

The counting objects: a bipartition (psi, phi) of the edges of a graph where
psi is a spanning tree and phi a spanning 2-forest compatible with a vertex
bipartition, and, for a general prime p, ordered partitions of p-1 copies of
every edge into p-1 spanning trees and p-1 compatible spanning 2-forests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .errors import BudgetExceededError, InputError
from .graph import Graph

#: default refusal threshold for tuple enumerations
DEFAULT_ENUM_BUDGET = 10 ** 7


class DSU:
    """Union-find with rollback (union by size, no path compression)."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n
        self.trail = []

    def find(self, x):
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        self.trail.append(rb)
        return True

    def snapshot(self):
        return len(self.trail)

    def rollback(self, mark):
        while len(self.trail) > mark:
            rb = self.trail.pop()
            ra = self.parent[rb]
            self.parent[rb] = rb
            self.size[ra] -= self.size[rb]
            self.count += 1


def components_of_edges(n: int, edge_pairs):
    """Component label per vertex for the subgraph on the given (u, v) pairs."""
    dsu = DSU(n)
    for u, v in edge_pairs:
        dsu.union(u, v)
    roots = {}
    labels = []
    for x in range(n):
        r = dsu.find(x)
        labels.append(roots.setdefault(r, len(roots)))
    return labels


def is_acyclic(g: Graph, edge_ids) -> bool:
    dsu = DSU(g.n)
    for eid in edge_ids:
        u, v = g.edges[eid]
        if u == v or not dsu.union(u, v):
            return False
    return True


def is_spanning_tree(g: Graph, edge_ids) -> bool:
    return len(set(edge_ids)) == g.n - 1 and is_acyclic(g, edge_ids)


def enumerate_spanning_trees(g: Graph):
    """Yield every spanning tree (frozenset of edge ids) exactly once.

    Backtracking over edges in id order: each edge is either contracted into
    the partial tree or deleted, with a connectivity (bridge) check pruning
    the deletion branch.  The order of emission is deterministic.
    """
    if not g.is_connected():
        raise InputError("spanning tree enumeration requires a connected graph")
    m = g.num_edges
    dsu = DSU(g.n)
    chosen = []

    def still_connectable(start):
        probe = DSU(g.n)
        for eid in chosen:
            probe.union(*g.edges[eid])
        for eid in range(start, m):
            probe.union(*g.edges[eid])
        return probe.count == 1

    def rec(i):
        if dsu.count == 1:
            yield frozenset(chosen)
            return
        if i == m:
            return
        u, v = g.edges[i]
        if dsu.find(u) != dsu.find(v):
            mark = dsu.snapshot()
            dsu.union(u, v)
            chosen.append(i)
            yield from rec(i + 1)
            chosen.pop()
            dsu.rollback(mark)
        # deletion branch: only if the rest can still connect everything
        if still_connectable(i + 1):
            yield from rec(i + 1)

    yield from rec(0)


def _check_disjoint_parts(parts):
    seen = set()
    for part in parts:
        part = set(part)
        if part & seen:
            raise InputError("partition parts are not disjoint")
        if not part:
            raise InputError("partition parts must be non-empty")
        seen |= part
    return [frozenset(p) for p in parts]


def forest_is_compatible(g: Graph, edge_ids, parts) -> bool:
    """Acyclic, exactly len(parts) components, each part confined to its own tree."""
    parts = [frozenset(p) for p in parts]
    edge_ids = set(edge_ids)
    if len(edge_ids) != g.n - len(parts):
        return False
    if not is_acyclic(g, edge_ids):
        return False
    labels = components_of_edges(g.n, [g.edges[e] for e in edge_ids])
    comp_of_part = []
    for part in parts:
        comps = {labels[v] for v in part}
        if len(comps) != 1:
            return False
        comp_of_part.append(comps.pop())
    return len(set(comp_of_part)) == len(parts)


def is_compatible_2forest(g: Graph, edge_ids, parts) -> bool:
    parts = _check_disjoint_parts(parts)
    if len(parts) != 2:
        raise InputError("expected a 2-part vertex partition")
    return forest_is_compatible(g, edge_ids, parts)


def enumerate_compatible_forests(g: Graph, parts):
    """All spanning forests (edge-id frozensets) compatible with the partition."""
    parts = _check_disjoint_parts(parts)
    k = len(parts)
    size = g.n - k
    if size < 0:
        return
    for combo in itertools.combinations(range(g.num_edges), size):
        if forest_is_compatible(g, combo, parts):
            yield frozenset(combo)


# ---------------------------------------------------------------------------
# edge bipartitions (the p = 2 objects)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeBipartition:
    """Edges split into a spanning tree psi and a spanning 2-forest phi."""

    graph: Graph
    psi: frozenset
    phi: frozenset

    def validate(self):
        m = self.graph.num_edges
        if self.psi | self.phi != frozenset(range(m)) or self.psi & self.phi:
            raise InputError("psi and phi must partition the edge set")
        if not is_spanning_tree(self.graph, self.psi):
            raise InputError("psi is not a spanning tree")
        if len(self.phi) != self.graph.n - 2 or not is_acyclic(self.graph, self.phi):
            raise InputError("phi is not a spanning 2-forest")

    def phi_components(self):
        return components_of_edges(self.graph.n,
                                   [self.graph.edges[e] for e in self.phi])

    def label_split(self, labels):
        """Split of the marked vertices across phi's two components.

        Returns a canonical pair of frozensets, or None if some component
        holds no marked vertex (then the bipartition is compatible with no
        bipartition of the full label set).
        """
        comp = self.phi_components()
        side0 = frozenset(v for v in labels if comp[v] == 0)
        side1 = frozenset(v for v in labels if comp[v] == 1)
        if not side0 or not side1:
            return None
        return part_key(side0, side1)


def part_key(p1, p2):
    """Canonical order-free key for a 2-part vertex partition."""
    a = tuple(sorted(p1))
    b = tuple(sorted(p2))
    return (a, b) if a <= b else (b, a)


def enumerate_bipartitions(g: Graph):
    """Yield every (psi, phi) with psi a spanning tree and phi a 2-forest."""
    if g.num_edges != 2 * g.n - 3:
        return
    full = frozenset(range(g.num_edges))
    for psi in enumerate_spanning_trees(g):
        phi = full - psi
        if is_acyclic(g, phi):
            yield EdgeBipartition(g, psi, phi)


def count_bipartitions(g: Graph, parts, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """|{(psi, phi)}| with phi compatible with the given 2-part partition.

    The parts may mark only a subset of the vertices; unmarked vertices can
    sit in either tree of phi.
    """
    parts = _check_disjoint_parts(parts)
    if len(parts) != 2:
        raise InputError("expected a 2-part vertex partition")
    count = 0
    steps = 0
    for bip in enumerate_bipartitions(g):
        steps += 1
        if steps > budget:
            raise BudgetExceededError(steps, budget)
        if forest_is_compatible(g, bip.phi, parts):
            count += 1
    return count


def sweep_bipartitions_by_split(g: Graph, labels):
    """Bucket all edge bipartitions by the split of `labels` across phi.

    Returns dict: canonical full-label bipartition -> list of EdgeBipartition.
    One sweep therefore yields every s_P / r_P at once; partitions of label
    subsets are sums over the full splits refining them.
    """
    buckets = {}
    for bip in enumerate_bipartitions(g):
        key = bip.label_split(labels)
        if key is not None:
            buckets.setdefault(key, []).append(bip)
    return buckets


def subset_count(buckets, p1, p2) -> int:
    """Count of bipartitions compatible with a partition of a label subset."""
    p1, p2 = frozenset(p1), frozenset(p2)
    total = 0
    for (a, b), items in buckets.items():
        a, b = frozenset(a), frozenset(b)
        if (p1 <= a and p2 <= b) or (p1 <= b and p2 <= a):
            total += len(items)
    return total


# ---------------------------------------------------------------------------
# general (p - 1)-copy edge partitions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneralEdgePartition:
    """Ordered partition of p-1 copies of every edge into trees and 2-forests."""

    graph: Graph
    p: int
    trees: tuple      # p-1 frozensets, each a spanning tree
    forests: tuple    # p-1 frozensets, each a spanning 2-forest
    partitions: tuple  # per-forest compatible 2-part partition (pair of frozensets)

    def validate(self):
        g = self.graph
        if len(self.trees) != self.p - 1 or len(self.forests) != self.p - 1:
            raise InputError("need p-1 trees and p-1 forests")
        mult = [0] * g.num_edges
        for part in self.trees + self.forests:
            for e in part:
                mult[e] += 1
        if any(c != self.p - 1 for c in mult):
            raise InputError("edge multiplicities must all equal p-1")
        for t in self.trees:
            if not is_spanning_tree(g, t):
                raise InputError("tree part is not a spanning tree")
        for f, parts in zip(self.forests, self.partitions):
            if not forest_is_compatible(g, f, parts):
                raise InputError("forest part is not compatible with its partition")

    def key(self):
        return (self.trees, self.forests)


def _forest_pool(g: Graph, partitions):
    pool = {}
    for parts in partitions:
        key = part_key(*parts)
        if key not in pool:
            pool[key] = [frozenset(f) for f in enumerate_compatible_forests(g, parts)]
    return pool


def _iter_general_partitions(g: Graph, p: int, partitions, budget: int):
    """DFS over slots with per-edge remaining-multiplicity pruning."""
    if len(partitions) != p - 1:
        raise InputError("need one forest partition per forest slot")
    m = g.num_edges
    if m != 2 * g.n - 3:
        return
    trees = [frozenset(t) for t in enumerate_spanning_trees(g)]
    pool = _forest_pool(g, partitions)
    forest_lists = [pool[part_key(*parts)] for parts in partitions]
    slots = [trees] * (p - 1) + forest_lists
    remaining = [p - 1] * m
    picked = []
    steps = 0

    def rec(s):
        nonlocal steps
        if s == len(slots):
            yield tuple(picked[:p - 1]), tuple(picked[p - 1:])
            return
        last = s == len(slots) - 1
        for cand in slots[s]:
            steps += 1
            if steps > budget:
                raise BudgetExceededError(steps, budget)
            ok = all(remaining[e] > 0 for e in cand)
            if ok and last:
                # the final slot must consume every remaining copy
                ok = len(cand) == sum(remaining)
            if not ok:
                continue
            for e in cand:
                remaining[e] -= 1
            picked.append(cand)
            yield from rec(s + 1)
            picked.pop()
            for e in cand:
                remaining[e] += 1

    yield from rec(0)


def count_general_partitions(g: Graph, p: int, partitions,
                             budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """Number of ordered (psi_1..psi_{p-1}, phi_1..phi_{p-1}) partitions."""
    return sum(1 for _ in _iter_general_partitions(g, p, partitions, budget))


def enumerate_general_partitions(g: Graph, p: int, partitions,
                                 budget: int = DEFAULT_ENUM_BUDGET):
    for trees, forests in _iter_general_partitions(g, p, partitions, budget):
        yield GeneralEdgePartition(g, p, trees, forests,
                                   tuple(part_key(*pp) for pp in partitions))


# ---------------------------------------------------------------------------
# case count reports
# ---------------------------------------------------------------------------

@dataclass
class CountReport:
    """Named partition counts with their derived mod-p sums."""

    counts: dict
    sums: dict
    p: int = 2


def _all_bipartitions(labels):
    """All 2-part set partitions of the label vertex set."""
    labels = sorted(labels)
    first = labels[0]
    rest = labels[1:]
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            p1 = frozenset((first,) + combo)
            p2 = frozenset(labels) - p1
            if p2:
                yield part_key(p1, p2)


def s_case_counts(s_graph: Graph, labels: dict,
                  budget: int = DEFAULT_ENUM_BUDGET) -> CountReport:
    """All s_P counts for an S-case graph with marked vertices a..e.

    labels maps the letters a..e to vertices of s_graph; c is the one shared
    neighbour.  Also reports the six-term difference total whose parity must
    vanish, and the two counts equal (mod 2) to the c2 of each decompletion.
    """
    need = {"a", "b", "c", "d", "e"}
    if set(labels) != need:
        raise InputError(f"labels must be exactly {sorted(need)}")
    a, b, c, d, e = (labels[k] for k in "abcde")
    buckets = sweep_bipartitions_by_split(s_graph, [a, b, c, d, e])
    counts = {}
    for key in _all_bipartitions([a, b, c, d, e]):
        counts[key] = len(buckets.get(key, []))
    six_terms = [
        ({c, d}, {a, b, e}), ({c, e}, {a, b, d}), ({a, b}, {c, d, e}),
        ({a, c}, {b, d, e}), ({b, c}, {a, d, e}), ({d, e}, {a, b, c}),
    ]
    diff_total = sum(counts[part_key(p1, p2)] for p1, p2 in six_terms)
    sums = {
        "c2_v": subset_count(buckets, {c}, {a, b}) % 2,
        "c2_w": subset_count(buckets, {c}, {d, e}) % 2,
        "difference_total": diff_total % 2,
        "swap_c_pair": (counts[part_key({a, b, c}, {d, e})]
                        + counts[part_key({a, b}, {c, d, e})]) % 2,
        "one_four_total": sum(
            counts[part_key({x}, frozenset((a, b, c, d, e)) - {x})]
            for x in (a, b, d, e)) % 2,
        "two_three_with_c_total": sum(
            counts[part_key({c, x}, frozenset((a, b, c, d, e)) - {c, x})]
            for x in (a, b, d, e)) % 2,
    }
    return CountReport(counts=counts, sums=sums, p=2)


def r_case_counts(r_graph: Graph, labels: dict,
                  budget: int = DEFAULT_ENUM_BUDGET) -> CountReport:
    """All r_P counts for an R-case graph with marked vertices a..f."""
    need = {"a", "b", "c", "d", "e", "f"}
    if set(labels) != need:
        raise InputError(f"labels must be exactly {sorted(need)}")
    a, b, c, d, e, f = (labels[k] for k in "abcdef")
    lab = [a, b, c, d, e, f]
    buckets = sweep_bipartitions_by_split(r_graph, lab)
    counts = {}
    for key in _all_bipartitions(lab):
        counts[key] = len(buckets.get(key, []))
    twelve = [
        ({a}, {b, c, d, e, f}), ({b, c}, {a, d, e, f}),
        ({b}, {a, c, d, e, f}), ({a, c}, {b, d, e, f}),
        ({c}, {a, b, d, e, f}), ({a, b}, {c, d, e, f}),
        ({d}, {a, b, c, e, f}), ({e, f}, {a, b, c, d}),
        ({e}, {a, b, c, d, f}), ({d, f}, {a, b, c, e}),
        ({f}, {a, b, c, d, e}), ({d, e}, {a, b, c, f}),
    ]
    diff_total = sum(counts[part_key(p1, p2)] for p1, p2 in twelve)
    two_four = [({a, b}, {c, d, e, f}), ({a, c}, {b, d, e, f}),
                ({b, c}, {a, d, e, f}), ({d, e}, {a, b, c, f}),
                ({d, f}, {a, b, c, e}), ({e, f}, {a, b, c, d})]
    one_five = [({x}, frozenset(lab) - {x}) for x in lab]
    sums = {
        "c2_v": (subset_count(buckets, {a}, {b, c})
                 + subset_count(buckets, {b}, {a, c})
                 + subset_count(buckets, {c}, {a, b})) % 2,
        "c2_w": (subset_count(buckets, {d}, {e, f})
                 + subset_count(buckets, {e}, {d, f})
                 + subset_count(buckets, {f}, {d, e})) % 2,
        "difference_total": diff_total % 2,
        "two_four_total": sum(counts[part_key(p1, p2)] for p1, p2 in two_four) % 2,
        "one_five_total": sum(counts[part_key(p1, p2)] for p1, p2 in one_five) % 2,
    }
    return CountReport(counts=counts, sums=sums, p=2)


def t_case_partitions(labels: dict):
    """The three distinguished partitions of {a,b,c,d} for the T-case counts."""
    a, b, c, d = (labels[k] for k in "abcd")
    P = (frozenset({a}), frozenset({b, c, d}))
    Pp = (frozenset({d}), frozenset({a, b, c}))
    Q = (frozenset({a, d}), frozenset({b, c}))
    return P, Pp, Q


def t_case_counts(t_graph: Graph, labels: dict, p: int,
                  budget: int = DEFAULT_ENUM_BUDGET) -> CountReport:
    """t-counts over (p-1)-copy partitions for a T-case graph.

    For every l = 0..p-1 computes the counts for the tuples (P,..,P,Q,..,Q)
    and (P',..,P',Q,..,Q) with l leading parts, plus the binomial-weighted
    totals that reproduce the two c2 values and their difference mod p.
    """
    need = {"a", "b", "c", "d"}
    if set(labels) != need:
        raise InputError(f"labels must be exactly {sorted(need)}")
    P, Pp, Q = t_case_partitions(labels)
    counts = {}
    for ell in range(p):
        tup_p = [P] * ell + [Q] * (p - 1 - ell)
        tup_pp = [Pp] * ell + [Q] * (p - 1 - ell)
        counts[("P", ell)] = count_general_partitions(t_graph, p, tup_p, budget)
        counts[("P'", ell)] = count_general_partitions(t_graph, p, tup_pp, budget)
    c2_v = -sum(comb(p - 1, ell) * counts[("P", ell)] for ell in range(p)) % p
    c2_w = -sum(comb(p - 1, ell) * counts[("P'", ell)] for ell in range(p)) % p
    diff = sum(comb(p - 1, ell) * (counts[("P", ell)] - counts[("P'", ell)])
               for ell in range(1, p)) % p
    sums = {"c2_v": c2_v, "c2_w": c2_w, "weighted_difference": diff}
    return CountReport(counts=counts, sums=sums, p=p)
