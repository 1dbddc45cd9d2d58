"""Zero counting over F_p^n and the three c2 computation routes.

c2 of a decompletion G - v of a connected 4-regular graph is computed by

* direct:     [Psi_{G-v}]_p / p^2 mod p (exhaustive zero count),
* denom:      -[Psi^{13,23} Psi^{1,2}_3]_p mod p (3-edge denominator
              reduction; any three distinct edges),
* partition:  -(number of ordered partitions of p-1 copies of each edge of
              G - {u,v} into p-1 spanning trees and p-1 compatible spanning
              2-forests) mod p, with u a 3-valent vertex of G - v.

The three are provably equal; a disagreement is an implementation bug and is
reported as such.  A standalone Chevalley-Warning coefficient checker on
small dense polynomials backs the coefficient formula behind the partition
route.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InputError, InternalInconsistencyError
from .field import DEFAULT_EVAL_BUDGET, all_assignments, check_prime
from .graph import Graph, decomplete
from .kernels import count_product_zeros
from .partitions import (DEFAULT_ENUM_BUDGET, count_bipartitions,
                         count_general_partitions)
from .polynomials import (KirchhoffHandle, PolyHandle, denominator_D3,
                          reduce_at_3valent)


def count_zeros(handle: PolyHandle, p: int,
                budget: int = DEFAULT_EVAL_BUDGET,
                backend: str | None = None) -> int:
    """|{a in F_p^vars : handle(a) = 0}| by exhaustive evaluation."""
    check_prime(p)
    n = len(handle.variables)
    templates = handle.templates(p)
    if templates is not None:
        return count_product_zeros(templates, n, p, budget=budget,
                                   backend=backend)
    count = 0
    for a in all_assignments(n, p, budget):
        if handle.eval(a, p) == 0:
            count += 1
    return count


def c2_direct(g: Graph, p: int, budget: int = DEFAULT_EVAL_BUDGET,
              backend: str | None = None) -> int:
    """([Psi_G]_p / p^2) mod p; the division is checked, not assumed."""
    check_prime(p)
    if not g.is_connected():
        raise InputError("c2 requires a connected graph")
    if g.n < 3:
        raise InputError("c2 requires at least 3 vertices")
    total = count_zeros(KirchhoffHandle(g), p, budget, backend)
    if total % (p * p):
        raise InternalInconsistencyError(
            f"[Psi]_{p} = {total} is not divisible by {p}^2; "
            "this contradicts a proven theorem and signals a bug")
    return (total // (p * p)) % p


def default_denominator_edges(gminus: Graph):
    """The three edges at the smallest 3-valent vertex, else edges (0,1,2)."""
    for u in range(gminus.n):
        if gminus.degree(u) == 3 and len(gminus.neighbors(u)) == 3:
            red = reduce_at_3valent(gminus, u)
            return red.edge_order
    return (0, 1, 2)


def c2_denom(gminus: Graph, p: int, edges=None,
             budget: int = DEFAULT_EVAL_BUDGET,
             backend: str | None = None) -> int:
    """-[D3]_p mod p, zeros of the denominator counted in F_p^(|E|-3)."""
    check_prime(p)
    if not gminus.is_connected():
        raise InputError("denominator reduction requires a connected graph")
    if gminus.num_edges < 3:
        raise InputError("denominator reduction needs at least 3 edges")
    if 2 * gminus.loop_number > gminus.num_edges:
        raise InputError(
            "denominator reduction requires 2*loop_number <= |E|")
    if edges is None:
        edges = default_denominator_edges(gminus)
    e1, e2, e3 = edges
    d3 = denominator_D3(gminus, e1, e2, e3)
    cnt = count_zeros(d3, p, budget, backend)
    return (-cnt) % p


def c2_partition(g: Graph, v: int, p: int,
                 budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """c2 of G - v by edge-partition counting; G must be 4-regular."""
    check_prime(p)
    if not g.is_regular(4):
        raise InputError("partition route requires a 4-regular completion")
    dec = decomplete(g, v)
    gminus = dec.graph
    if not gminus.is_connected():
        raise InputError("decompletion is disconnected")
    if gminus.num_edges != 2 * gminus.loop_number:
        raise InputError("partition route requires |E| = 2*loop_number")
    u = next((x for x in range(gminus.n) if gminus.degree(x) == 3), None)
    if u is None:
        raise InputError("no 3-valent vertex to reduce at")
    red = reduce_at_3valent(gminus, u)
    child = red.child.graph
    if p == 2:
        cnt = count_bipartitions(child, red.partition, budget)
    else:
        cnt = count_general_partitions(child, p, [red.partition] * (p - 1),
                                       budget)
    return (-cnt) % p


@dataclass
class C2Report:
    """Residues and raw counts of the computed routes for one decompletion."""

    graph_id: str
    p: int
    residues: dict = field(default_factory=dict)   # route -> residue in [0,p)
    counts: dict = field(default_factory=dict)     # route -> raw count

    @property
    def agreement(self) -> bool:
        vals = set(self.residues.values())
        return len(vals) <= 1


def compute_routes(g: Graph, v: int, p: int, routes=("direct", "denom", "partition"),
                   eval_budget: int = DEFAULT_EVAL_BUDGET,
                   enum_budget: int = DEFAULT_ENUM_BUDGET,
                   backend: str | None = None,
                   graph_id: str = "") -> C2Report:
    """c2 of the decompletion G - v by every requested route."""
    check_prime(p)
    if not g.is_regular(4):
        raise InputError("decompletion mode requires a 4-regular graph")
    if not g.is_connected():
        raise InputError("decompletion mode requires a connected graph")
    dec = decomplete(g, v)
    report = C2Report(graph_id=graph_id or repr(g), p=p)
    for route in routes:
        if route == "direct":
            total = count_zeros(KirchhoffHandle(dec.graph), p, eval_budget,
                                backend)
            report.counts[route] = total
            if total % (p * p):
                raise InternalInconsistencyError(
                    f"[Psi]_{p} = {total} not divisible by {p}^2")
            report.residues[route] = (total // (p * p)) % p
        elif route == "denom":
            edges = default_denominator_edges(dec.graph)
            d3 = denominator_D3(dec.graph, *edges)
            cnt = count_zeros(d3, p, eval_budget, backend)
            report.counts[route] = cnt
            report.residues[route] = (-cnt) % p
        elif route == "partition":
            residue = c2_partition(g, v, p, enum_budget)
            report.residues[route] = residue
        else:
            raise InputError(f"unknown route {route!r}")
    return report


# ---------------------------------------------------------------------------
# dense polynomials and the Chevalley-Warning coefficient check
# ---------------------------------------------------------------------------

@dataclass
class DensePoly:
    """Small dense polynomial over F_p: exponent-vector -> coefficient."""

    num_vars: int
    coeffs: dict
    p: int

    def __post_init__(self):
        check_prime(self.p)
        clean = {}
        for mono, c in self.coeffs.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != self.num_vars:
                raise InputError("exponent vector has wrong length")
            c = int(c) % self.p
            if c:
                clean[mono] = c
        self.coeffs = clean

    def degree(self) -> int:
        return max((sum(m) for m in self.coeffs), default=0)

    def eval(self, point) -> int:
        total = 0
        for mono, c in self.coeffs.items():
            term = c
            for x, e in zip(point, mono):
                term = term * pow(int(x), e, self.p) % self.p
            total = (total + term) % self.p
        return total

    def mul(self, other: "DensePoly", cap: int | None = None) -> "DensePoly":
        """Product, optionally discarding monomials with any exponent > cap.

        Exponents only grow under multiplication, so capping at p-1 is exact
        for extracting the all-(p-1) coefficient.
        """
        out = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if cap is not None and any(e > cap for e in m):
                    continue
                out[m] = (out.get(m, 0) + c1 * c2) % self.p
        return DensePoly(self.num_vars, out, self.p)

    def pow(self, exponent: int, cap: int | None = None) -> "DensePoly":
        result = DensePoly(self.num_vars,
                           {(0,) * self.num_vars: 1}, self.p)
        for _ in range(exponent):
            result = result.mul(self, cap)
        return result


def cw_coefficient_check(f: DensePoly):
    """Both sides of the Chevalley-Warning coefficient congruence.

    For F of degree N in N variables over F_p: the coefficient of
    x_1^(p-1)...x_N^(p-1) in F^(p-1) is congruent to (-1)^(N-1) [F]_p mod p,
    where [F]_p is the number of zeros of F.  Returns (coefficient,
    zero_count, verdict).
    """
    p = f.p
    n = f.num_vars
    if f.degree() != n:
        raise InputError(
            f"Chevalley-Warning check needs degree {n} = number of variables,"
            f" got degree {f.degree()}")
    power = f.pow(p - 1, cap=p - 1)
    coeff = power.coeffs.get((p - 1,) * n, 0)
    zeros = sum(1 for a in itertools.product(range(p), repeat=n)
                if f.eval(a) == 0)
    predicted = (-1) ** (n - 1) * zeros % p
    return coeff, zeros, coeff % p == predicted
