"""Graph data model, ingestion, decompletion, and adjacent-pair classification.

Vertices are dense integers 0..n-1.  Edges are (u, v) pairs; the edge id is
the position in the edge tuple, so ids are always contiguous.  Parallel edges
and self-loops are allowed in the core type (parallel edges are needed for the
(p-1)-fold edge-copy enumerations), but graph6 ingestion is simple-graph-only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import GraphParseError, InputError


class Graph:
    """Undirected multigraph with contiguous edge ids."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        edges = tuple((int(u), int(v)) for u, v in edges)
        for eid, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {eid} endpoint out of range: ({u},{v}), n={n}")
        self.n = n
        self.edges = edges

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def loop_number(self) -> int:
        """Cycle-space dimension |E| - |V| + 1 (assumes connected)."""
        return len(self.edges) - self.n + 1

    def degree(self, v: int) -> int:
        d = 0
        for u, w in self.edges:
            if u == v:
                d += 1
            if w == v:
                d += 1
        return d

    def degrees(self):
        d = [0] * self.n
        for u, w in self.edges:
            d[u] += 1
            d[w] += 1
        return d

    def neighbors(self, v: int):
        """Set of neighbours of v (self-loops do not make v its own neighbour)."""
        out = set()
        for u, w in self.edges:
            if u == v and w != v:
                out.add(w)
            elif w == v and u != v:
                out.add(u)
        return out

    def edges_at(self, v: int):
        """Edge ids incident to v, in id order; self-loops listed once."""
        return [eid for eid, (u, w) in enumerate(self.edges) if u == v or w == v]

    def other_end(self, eid: int, v: int) -> int:
        u, w = self.edges[eid]
        if u == v:
            return w
        if w == v:
            return u
        raise InputError(f"edge {eid} not incident to vertex {v}")

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = [False] * self.n
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    count += 1
                    stack.append(y)
        return count == self.n

    def is_regular(self, k: int) -> bool:
        return all(d == k for d in self.degrees())

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v:
                return False
            key = (u, v) if u < v else (v, u)
            if key in seen:
                return False
            seen.add(key)
        return True

    def delete_edge(self, eid: int) -> "Graph":
        """Graph with edge eid removed; surviving edges keep relative order."""
        if not (0 <= eid < len(self.edges)):
            raise InputError(f"no edge {eid}")
        return Graph(self.n, self.edges[:eid] + self.edges[eid + 1:])

    def contract_edge(self, eid: int) -> "Graph":
        """Contract edge eid, merging its endpoints.

        Self-loops produced by the contraction are retained; tree enumeration
        never uses them and the determinant route handles them through a zero
        incidence column.  Contracting a self-loop just deletes it.
        """
        if not (0 <= eid < len(self.edges)):
            raise InputError(f"no edge {eid}")
        u, v = self.edges[eid]
        if u == v:
            return self.delete_edge(eid)
        lo, hi = (u, v) if u < v else (v, u)

        def relabel(x):
            if x == hi:
                x = lo
            return x - 1 if x > hi else x

        edges = [(relabel(a), relabel(b))
                 for i, (a, b) in enumerate(self.edges) if i != eid]
        return Graph(self.n - 1, edges)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"


@dataclass(frozen=True)
class Decompletion:
    """A vertex deletion together with the maps back to the parent graph."""

    graph: Graph
    removed_vertex: int
    vertex_map: dict          # old vertex -> new vertex (removed one absent)
    edge_map: tuple           # new edge id -> old edge id


def remove_pair(g: Graph, v: int, w: int, labels: dict | None = None):
    """Remove two vertices; returns the graph and the relabelled marks.

    labels maps names to vertices of g (e.g. the CaseLabel letters); the
    returned dict maps the same names to vertices of the reduced graph.
    """
    hi, lo = (v, w) if v > w else (w, v)
    d1 = decomplete(g, hi)
    d2 = decomplete(d1.graph, d1.vertex_map[lo])
    mapped = {}
    if labels:
        mapped = {k: d2.vertex_map[d1.vertex_map[x]] for k, x in labels.items()}
    return d2.graph, mapped


def decomplete(g: Graph, v: int) -> Decompletion:
    """Remove vertex v and all incident edges, renumbering to stay dense."""
    if not (0 <= v < g.n):
        raise InputError(f"vertex {v} not in graph with n={g.n}")
    vmap = {}
    k = 0
    for x in range(g.n):
        if x != v:
            vmap[x] = k
            k += 1
    edges = []
    emap = []
    for eid, (u, w) in enumerate(g.edges):
        if u == v or w == v:
            continue
        edges.append((vmap[u], vmap[w]))
        emap.append(eid)
    return Decompletion(Graph(g.n - 1, edges), v, vmap, tuple(emap))


# ---------------------------------------------------------------------------
# T / S / R classification of adjacent vertex pairs
# ---------------------------------------------------------------------------

ALL_SHARED = "AllShared"
T_CASE = "TCase"
S_CASE = "SCase"
R_CASE = "RCase"


@dataclass(frozen=True)
class CaseLabel:
    """Classification of an adjacent pair (v, w) in a 4-regular graph.

    The marked neighbour labels follow the convention that w's private
    neighbours come first: T-case w~{a,b,c,v}, v~{b,c,d,w} with {b,c} shared;
    S-case w~{a,b,c,v}, v~{c,d,e,w} with c shared; R-case w~{a,b,c,v},
    v~{d,e,f,w}.  Interchangeable labels are assigned in ascending vertex
    index, so the labelling is deterministic.
    """

    kind: str
    labels: dict  # letter -> vertex of G

    def label_tuple(self):
        return tuple(self.labels[k] for k in sorted(self.labels))


def classify_adjacent_pair(g: Graph, v: int, w: int) -> CaseLabel:
    if not g.is_regular(4):
        raise InputError("classification requires a 4-regular graph")
    if not g.is_simple():
        raise InputError("classification requires a simple graph")
    if not g.has_edge(v, w):
        raise InputError(f"vertices {v} and {w} are not adjacent")
    nv = g.neighbors(v) - {w}
    nw = g.neighbors(w) - {v}
    shared = sorted(nv & nw)
    v_only = sorted(nv - nw)
    w_only = sorted(nw - nv)
    if len(shared) == 3:
        return CaseLabel(ALL_SHARED, {})
    if len(shared) == 2:
        return CaseLabel(T_CASE, {
            "a": w_only[0], "b": shared[0], "c": shared[1], "d": v_only[0]})
    if len(shared) == 1:
        return CaseLabel(S_CASE, {
            "a": w_only[0], "b": w_only[1], "c": shared[0],
            "d": v_only[0], "e": v_only[1]})
    return CaseLabel(R_CASE, {
        "a": w_only[0], "b": w_only[1], "c": w_only[2],
        "d": v_only[0], "e": v_only[1], "f": v_only[2]})


# ---------------------------------------------------------------------------
# graph6 (McKay short form, n <= 62) and JSON edge-list formats
# ---------------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def parse_graph6(text: str) -> Graph:
    """Parse one line of graph6 (simple graph, short form)."""
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise GraphParseError("empty graph6 string")
    data = s.encode("ascii", errors="replace")
    if data[0] == 126:  # '~' long form
        raise GraphParseError("graph6 long form (n > 62) not supported, byte 0")
    n = data[0] - 63
    if not (0 <= n <= 62):
        raise GraphParseError(f"invalid graph6 size byte at offset 0: {data[0]}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - 1 != need:
        raise GraphParseError(
            f"graph6 body length {len(data) - 1} != expected {need} "
            f"(offset {min(len(data), need + 1)})")
    bits = []
    for off, byte in enumerate(data[1:], start=1):
        x = byte - 63
        if not (0 <= x < 64):
            raise GraphParseError(f"invalid graph6 byte at offset {off}: {byte}")
        bits.extend((x >> (5 - k)) & 1 for k in range(6))
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    # ids in lexicographic endpoint order
    edges.sort()
    return Graph(n, edges)


def emit_graph6(g: Graph) -> str:
    if not g.is_simple():
        raise InputError("graph6 emission requires a simple graph")
    if g.n > 62:
        raise InputError("graph6 short form supports at most 62 vertices")
    present = {(min(u, v), max(u, v)) for u, v in g.edges}
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if (i, j) in present else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        out.append(chr(x + 63))
    return "".join(out)


def parse_edge_list(document) -> Graph:
    """Build a Graph from {"n": int, "edges": [[u,v],...]} (dict or JSON text).

    Edge multiplicity and input order of edge ids are preserved.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise GraphParseError(f"bad JSON edge list: {exc}") from exc
    try:
        n = int(document["n"])
        edges = [(int(u), int(v)) for u, v in document["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphParseError(f"bad edge-list document: {exc}") from exc
    if n < 0:
        raise GraphParseError(f"negative vertex count {n}")
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"edge endpoint out of range: ({u},{v}), n={n}")
    return Graph(n, edges)


def emit_edge_list(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges]}


# ---------------------------------------------------------------------------
# small named graphs used throughout the tests and docs
# ---------------------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def octahedron() -> Graph:
    """K_{2,2,2}: vertices i and i+3 are the non-adjacent antipodes."""
    edges = [(i, j) for i in range(6) for j in range(i + 1, 6) if j != i + 3]
    return Graph(6, edges)


def circulant(n: int, jumps) -> Graph:
    edges = set()
    for i in range(n):
        for j in jumps:
            a, b = i, (i + j) % n
            edges.add((min(a, b), max(a, b)))
    return Graph(n, sorted(edges))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def hypercube(d: int) -> Graph:
    n = 1 << d
    edges = [(x, x ^ (1 << k)) for x in range(n) for k in range(d) if x < (x ^ (1 << k))]
    return Graph(n, sorted(edges))
