"""Ready-made exhaustive sweeps of the case theorems on concrete instances.

Given a 4-regular graph and an adjacent classified pair, these helpers build
the exact domains of each involution, run it over every element, and check
fixed-point freeness, involutivity, set membership, and the parity
congruences.  Shared by the test suite and the CLI.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import InputError
from .graph import Graph, classify_adjacent_pair, remove_pair, S_CASE, R_CASE, T_CASE
from .involutions import (InvolutionSweep, orbit_of, r_case_involution,
                          r_case_single_control_involution, s_case_involution,
                          s_case_involution_variant, swap_at_2valent,
                          sweep_involution)
from .partitions import (DEFAULT_ENUM_BUDGET, enumerate_general_partitions,
                         part_key, sweep_bipartitions_by_split,
                         t_case_partitions)


@dataclass
class CaseSweepReport:
    """Per-theorem sweep results and parity sums for one classified pair."""

    kind: str
    sweeps: dict = field(default_factory=dict)   # name -> InvolutionSweep
    parities: dict = field(default_factory=dict)  # name -> residue
    orbit_sizes: Counter = field(default_factory=Counter)
    orbit_splits: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return (all(s.ok for s in self.sweeps.values())
                and all(v == 0 for v in self.parities.values()))


def _pair_instance(g: Graph, v: int, w: int, kind):
    label = classify_adjacent_pair(g, v, w)
    if label.kind != kind:
        raise InputError(f"pair ({v},{w}) is {label.kind}, expected {kind}")
    return remove_pair(g, v, w, label.labels)


def s_case_suite(g: Graph, v: int, w: int) -> CaseSweepReport:
    """All three S-case involution sweeps for an adjacent S-pair of g."""
    s_graph, lab = _pair_instance(g, v, w, S_CASE)
    labv = [lab[k] for k in "abcde"]
    c = lab["c"]
    buckets = sweep_bipartitions_by_split(s_graph, labv)
    report = CaseSweepReport(kind=S_CASE)

    def split_of(b):
        return b.label_split(labv)

    def one_four(key):
        return key is not None and (
            (len(key[0]) == 1 and c in key[1])
            or (len(key[1]) == 1 and c in key[0]))

    def two_three_with_c(key):
        return key is not None and (
            (len(key[0]) == 2 and c in key[0])
            or (len(key[1]) == 2 and c in key[1]))

    dom = [b for key, items in buckets.items() for b in items if one_four(key)]
    report.sweeps["S-bijection"] = sweep_involution(
        dom, lambda b: s_case_involution(b, lab),
        lambda y: one_four(split_of(y)))
    report.parities["S-bijection"] = len(dom) % 2

    dom = [b for key, items in buckets.items() for b in items
           if two_three_with_c(key)]
    report.sweeps["S-bij-cor"] = sweep_involution(
        dom, lambda b: s_case_involution_variant(b, lab),
        lambda y: two_three_with_c(split_of(y)))
    report.parities["S-bij-cor"] = len(dom) % 2

    a, b_, d, e = lab["a"], lab["b"], lab["d"], lab["e"]
    k1 = part_key({a, b_, c}, {d, e})
    k2 = part_key({a, b_}, {c, d, e})
    dom = buckets.get(k1, []) + buckets.get(k2, [])
    report.sweeps["S-swapc"] = sweep_involution(
        dom, lambda b: (swap_at_2valent(b, c), None),
        lambda y: split_of(y) in (k1, k2))
    report.parities["S-swapc"] = len(dom) % 2
    return report


def r_case_suite(g: Graph, v: int, w: int) -> CaseSweepReport:
    """Both R-case involution sweeps for an adjacent R-pair of g."""
    r_graph, lab = _pair_instance(g, v, w, R_CASE)
    labv = [lab[k] for k in "abcdef"]
    abc = {lab[k] for k in "abc"}
    deff = {lab[k] for k in "def"}
    buckets = sweep_bipartitions_by_split(r_graph, labv)
    report = CaseSweepReport(kind=R_CASE)

    def split_of(b):
        return b.label_split(labv)

    def two_four_triple(key):
        if key is None or {len(key[0]), len(key[1])} != {2, 4}:
            return False
        two = set(key[0]) if len(key[0]) == 2 else set(key[1])
        return two <= abc or two <= deff

    def one_five(key):
        return key is not None and {len(key[0]), len(key[1])} == {1, 5}

    dom = [b for key, items in buckets.items() for b in items
           if two_four_triple(key)]
    report.sweeps["R-control-bij"] = sweep_involution(
        dom, lambda b: r_case_single_control_involution(b, lab),
        lambda y: two_four_triple(split_of(y)))
    report.parities["R-control-bij"] = len(dom) % 2

    dom = [b for key, items in buckets.items() for b in items
           if one_five(key)]
    report.sweeps["R-bijection"] = sweep_involution(
        dom, lambda b: r_case_involution(b, lab),
        lambda y: one_five(split_of(y)))
    report.parities["R-bijection"] = len(dom) % 2
    return report


def t_orbit_suite(g: Graph, v: int, w: int, p: int,
                  budget: int = DEFAULT_ENUM_BUDGET) -> CaseSweepReport:
    """Orbit decomposition of the c-swap action for an adjacent T-pair.

    For each l = 1..p-1, sweeps the union of the classes with l leading P's
    and the class with the l-th P replaced by P^b, acting at forest index
    l-1 around the 2-valent shared neighbour b.  Records every orbit size
    (all must be binomial(p, k), hence divisible by p) and the cross-class
    splits of swap-out orbits.
    """
    t_graph, lab = _pair_instance(g, v, w, T_CASE)
    P, _, Q = t_case_partitions(lab)
    b = lab["b"]
    pb = (frozenset({lab["a"], lab["b"]}), frozenset({lab["c"], lab["d"]}))
    marked = [lab[k] for k in "abcd"]
    report = CaseSweepReport(kind=T_CASE)
    escapes = 0
    for ell in range(1, p):
        idx = ell - 1
        parts_a = [P] * ell + [Q] * (p - 1 - ell)
        parts_b = list(parts_a)
        parts_b[idx] = pb
        elems = {}
        for parts in (parts_a, parts_b):
            for pi in enumerate_general_partitions(t_graph, p, parts, budget):
                elems[pi.key()] = pi
        k_a = part_key(*parts_a[idx])
        k_b = part_key(*parts_b[idx])
        seen = set()
        for key in sorted(elems):
            if key in seen:
                continue
            orbit = orbit_of(elems[key], idx, b, marked)
            for o in orbit:
                if o.key() not in elems:
                    escapes += 1
                seen.add(o.key())
            report.orbit_sizes[len(orbit)] += 1
            in_a = sum(1 for o in orbit if o.partitions[idx] == k_a)
            in_b = sum(1 for o in orbit if o.partitions[idx] == k_b)
            report.orbit_splits[(len(orbit), in_a, in_b)] += 1
        report.parities[f"union l={ell} size mod p"] = len(elems) % p
    sweep = InvolutionSweep(domain_size=sum(
        size * mult for size, mult in report.orbit_sizes.items()))
    sweep.membership_violations = escapes
    if any(size % p for size in report.orbit_sizes):
        sweep.failures = ("orbit size not divisible by p",)
    report.sweeps["higher-swap"] = sweep
    return report
