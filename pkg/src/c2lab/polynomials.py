"""Kirchhoff and Dodgson polynomials via the expanded Laplacian.

For a connected graph G with m edges and n vertices the expanded Laplacian is
the (m + n - 1) x (m + n - 1) block matrix

    L = [ diag(alpha_e)   E^T ]
        [ E               0   ]

where E is the signed incidence matrix with one vertex row removed.  Then
Psi_G = (-1)^(n-1) det L, and the Dodgson polynomial Psi^{I,J}_K is, up to a
single global sign, det of L with edge rows I and edge columns J removed and
alpha_e set to 0 for e in K.  Row/column order is canonical: edges in input
id order, then vertices ascending, with the removed vertex defaulting to the
highest index.

Every handle exposes exact evaluation mod p and, where it is a (product of)
determinant(s), compilation to the matrix templates consumed by the kernels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .field import check_prime, det_mod_p
from .graph import Decompletion, Graph, decomplete
from .kernels import MatrixTemplate
from .partitions import enumerate_compatible_forests, enumerate_spanning_trees


def _incidence_sign(g: Graph, eid: int, vertex: int, orientation=None) -> int:
    """+1 at the tail, -1 at the head; 0 for self-loops or non-incidence."""
    u, v = g.edges[eid]
    if u == v:
        return 0
    tail, head = (u, v) if u < v else (v, u)
    if orientation is not None and orientation[eid] < 0:
        tail, head = head, tail
    if vertex == tail:
        return 1
    if vertex == head:
        return -1
    return 0


def expanded_laplacian_template(g: Graph, removed_vertex: int | None = None,
                                orientation=None):
    """Base matrix and alpha-slot list of the expanded Laplacian.

    Returns (base, slots) where base is (M, M) int64 with M = m + n - 1 and
    slots[i] = (row, col, edge_id) marks the diagonal alpha entries.
    """
    if g.n == 0:
        raise InputError("expanded Laplacian needs at least one vertex")
    if removed_vertex is None:
        removed_vertex = g.n - 1
    if not (0 <= removed_vertex < g.n):
        raise InputError(f"removed vertex {removed_vertex} out of range")
    m = g.num_edges
    kept = [v for v in range(g.n) if v != removed_vertex]
    size = m + len(kept)
    base = np.zeros((size, size), dtype=np.int64)
    for pos, v in enumerate(kept):
        for eid in range(m):
            s = _incidence_sign(g, eid, v, orientation)
            base[eid, m + pos] = s
            base[m + pos, eid] = s
    slots = [(eid, eid, eid) for eid in range(m)]
    return base, slots


def _values_for(variables, values):
    """Normalize values to a list aligned with `variables`.

    Accepts a mapping edge_id -> value or a sequence in variable order.
    """
    if hasattr(values, "keys"):
        try:
            return [int(values[e]) for e in variables]
        except KeyError as exc:
            raise InputError(f"missing value for edge {exc.args[0]}") from exc
    values = list(values)
    if len(values) != len(variables):
        raise InputError(
            f"expected {len(variables)} values, got {len(values)}")
    return [int(x) for x in values]


class PolyHandle:
    """Common interface: .graph, .variables, .eval(values, p), .templates(p)."""

    graph: Graph
    variables: tuple

    def eval(self, values, p: int) -> int:
        raise NotImplementedError

    def templates(self, p: int):
        """Matrix templates whose det product equals the handle up to sign.

        Slot variable indices refer to positions in self.variables.  Returns
        None when the handle has no determinant form.
        """
        return None


class KirchhoffHandle(PolyHandle):
    """Psi_G as a single parametrized determinant."""

    def __init__(self, graph: Graph, removed_vertex: int | None = None,
                 orientation=None):
        self.graph = graph
        self.variables = tuple(range(graph.num_edges))
        self._base, self._slots = expanded_laplacian_template(
            graph, removed_vertex, orientation)
        self._sign = -1 if (graph.n - 1) % 2 else 1

    def templates(self, p: int):
        return [MatrixTemplate(self._base % p,
                               tuple((r, c, v) for r, c, v in self._slots))]

    def eval(self, values, p: int) -> int:
        check_prime(p)
        vals = _values_for(self.variables, values)
        a = self._base.copy()
        for r, c, v in self._slots:
            a[r, c] = vals[v]
        return self._sign * det_mod_p(a, p) % p


class DodgsonHandle(PolyHandle):
    """Psi^{I,J}_K, evaluated up to one global sign fixed per handle.

    The sign convention is (-1)^(n-1) det L(I,J)_K, which agrees exactly with
    Psi_G when I = J = K = {}.  If |I| != |J| the handle is identically zero.
    """

    def __init__(self, graph: Graph, rows_i, cols_j, contracted_k=(),
                 removed_vertex: int | None = None, orientation=None):
        m = graph.num_edges
        self.graph = graph
        self.rows_i = frozenset(rows_i)
        self.cols_j = frozenset(cols_j)
        self.contracted_k = frozenset(contracted_k)
        for e in self.rows_i | self.cols_j | self.contracted_k:
            if not (0 <= e < m):
                raise InputError(f"no edge {e}")
        self.variables = tuple(
            e for e in range(m)
            if e not in self.rows_i | self.cols_j | self.contracted_k)
        self.degenerate = len(self.rows_i) != len(self.cols_j)
        if self.degenerate:
            self._base, self._slots = None, None
            self._sign = 1
            return
        full, slots = expanded_laplacian_template(
            graph, removed_vertex, orientation)
        keep_r = [r for r in range(full.shape[0]) if r not in self.rows_i]
        keep_c = [c for c in range(full.shape[1]) if c not in self.cols_j]
        rpos = {r: i for i, r in enumerate(keep_r)}
        cpos = {c: i for i, c in enumerate(keep_c)}
        self._base = full[np.ix_(keep_r, keep_c)]
        var_pos = {e: i for i, e in enumerate(self.variables)}
        self._slots = tuple(
            (rpos[r], cpos[c], var_pos[e]) for r, c, e in slots
            if e in var_pos)
        self._sign = -1 if (graph.n - 1) % 2 else 1

    def templates(self, p: int):
        if self.degenerate:
            return [MatrixTemplate(np.zeros((1, 1), dtype=np.int64), ())]
        return [MatrixTemplate(self._base % p, self._slots)]

    def eval(self, values, p: int) -> int:
        check_prime(p)
        if self.degenerate:
            return 0
        vals = _values_for(self.variables, values)
        a = self._base.copy()
        for r, c, v in self._slots:
            a[r, c] = vals[v]
        return self._sign * det_mod_p(a, p) % p


class ForestHandle(PolyHandle):
    """Spanning-forest polynomial for a vertex partition P.

    Sum over spanning forests compatible with P of the product of the edge
    variables outside the forest.  Evaluated by direct enumeration (the
    forest list is computed once and cached).
    """

    def __init__(self, graph: Graph, parts):
        self.graph = graph
        self.parts = tuple(frozenset(p) for p in parts)
        self.variables = tuple(range(graph.num_edges))
        self._forests = None

    def forests(self):
        if self._forests is None:
            self._forests = list(
                enumerate_compatible_forests(self.graph, self.parts))
        return self._forests

    def eval(self, values, p: int) -> int:
        check_prime(p)
        vals = _values_for(self.variables, values)
        total = 0
        for forest in self.forests():
            term = 1
            for e in self.variables:
                if e not in forest:
                    term = term * vals[e] % p
            total = (total + term) % p
        return total


class ProductHandle(PolyHandle):
    """Product of handles over the union of their variable sets."""

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise InputError("product needs at least one factor")
        self.graph = factors[0].graph
        self.factors = factors
        self.variables = tuple(sorted(set().union(
            *(f.variables for f in factors))))
        self._pos = {e: i for i, e in enumerate(self.variables)}

    def templates(self, p: int):
        out = []
        for f in self.factors:
            sub = f.templates(p)
            if sub is None:
                return None
            for t in sub:
                remapped = tuple(
                    (r, c, self._pos[f.variables[v]]) for r, c, v in t.slots)
                out.append(MatrixTemplate(t.base, remapped))
        return out

    def eval(self, values, p: int) -> int:
        check_prime(p)
        vals = _values_for(self.variables, values)
        by_edge = dict(zip(self.variables, vals))
        prod = 1
        for f in self.factors:
            prod = prod * f.eval(by_edge, p) % p
        return prod


# ---------------------------------------------------------------------------
# convenience evaluators and the two structural constructions
# ---------------------------------------------------------------------------

def eval_kirchhoff(g: Graph, values, p: int) -> int:
    """Psi_G(values) mod p via the expanded Laplacian determinant."""
    if not g.is_connected():
        raise InputError("Kirchhoff polynomial requires a connected graph")
    return KirchhoffHandle(g).eval(values, p)


def eval_kirchhoff_by_trees(g: Graph, values, p: int) -> int:
    """Psi_G(values) mod p by explicit spanning-tree summation (oracle)."""
    check_prime(p)
    vals = _values_for(tuple(range(g.num_edges)), values)
    total = 0
    for tree in enumerate_spanning_trees(g):
        term = 1
        for e in range(g.num_edges):
            if e not in tree:
                term = term * vals[e] % p
        total = (total + term) % p
    return total


def eval_dodgson(g: Graph, rows_i, cols_j, contracted_k, values, p: int) -> int:
    return DodgsonHandle(g, rows_i, cols_j, contracted_k).eval(values, p)


def eval_forest(g: Graph, parts, values, p: int) -> int:
    return ForestHandle(g, parts).eval(values, p)


def denominator_D3(g: Graph, e1: int, e2: int, e3: int) -> ProductHandle:
    """The 3-edge denominator Psi^{13,23} * Psi^{1,2}_3 as a product handle.

    Its variables are the edges other than e1, e2, e3; each factor is correct
    up to a global sign, which never matters for zero counting.
    """
    if len({e1, e2, e3}) != 3:
        raise InputError("the three denominator edges must be distinct")
    for e in (e1, e2, e3):
        if not (0 <= e < g.num_edges):
            raise InputError(f"no edge {e}")
    return ProductHandle([
        DodgsonHandle(g, {e1, e3}, {e2, e3}),
        DodgsonHandle(g, {e1}, {e2}, {e3}),
    ])


@dataclass(frozen=True)
class ReductionAt3Valent:
    """Reduction data at a 3-valent vertex u of a decompletion G - v.

    child is G - v with u also removed; partition is the 2-part vertex
    partition ({u3}, {u1, u2}) in child labels, where u3 is the smallest
    neighbour of u and u1 < u2 are the other two.
    """

    parent: Graph
    u: int
    neighbour_order: tuple     # (u1, u2, u3) in parent labels
    edge_order: tuple          # parent edge ids (e1, e2, e3) = u-u1, u-u2, u-u3
    child: Decompletion
    partition: tuple           # (frozenset({u3'}), frozenset({u1', u2'}))


def reduce_at_3valent(g: Graph, u: int) -> ReductionAt3Valent:
    """Set up the forest/Kirchhoff pair at a 3-valent vertex u.

    Any neighbour ordering is valid; this picks u3 = smallest neighbour so
    the construction is deterministic.
    """
    if not (0 <= u < g.n):
        raise InputError(f"vertex {u} not in graph")
    nbrs = sorted(g.neighbors(u))
    if g.degree(u) != 3 or len(nbrs) != 3:
        raise InputError(
            f"vertex {u} must be 3-valent with three distinct neighbours")
    u3, u1, u2 = nbrs[0], nbrs[1], nbrs[2]
    edge_to = {}
    for eid in g.edges_at(u):
        edge_to[g.other_end(eid, u)] = eid
    child = decomplete(g, u)
    vm = child.vertex_map
    partition = (frozenset({vm[u3]}), frozenset({vm[u1], vm[u2]}))
    return ReductionAt3Valent(
        parent=g, u=u,
        neighbour_order=(u1, u2, u3),
        edge_order=(edge_to[u1], edge_to[u2], edge_to[u3]),
        child=child, partition=partition)
