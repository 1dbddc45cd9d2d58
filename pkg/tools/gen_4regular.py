"""One-off generator for the bundled corpus of connected 4-regular graphs.

Enumerates all connected simple 4-regular graphs on 5..8 vertices by
backtracking over the upper-triangular adjacency entries with degree
pruning, dedupes up to isomorphism with networkx, and writes one graph6
line per graph to src/c2lab/data/connected_4regular_le8.g6.

Run from the repository root:  python3 tools/gen_4regular.py
"""

import pathlib
import sys

import networkx as nx

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from c2lab.graph import Graph, emit_graph6  # noqa: E402

EXPECTED = {5: 1, 6: 1, 7: 2, 8: 6}


def four_regular_graphs(n):
    """All 4-regular graphs on n labelled vertices, up to isomorphism."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found = []
    deg = [0] * n
    chosen = []

    def rec(k):
        if k == len(pairs):
            if all(d == 4 for d in deg):
                g = nx.Graph(chosen)
                g.add_nodes_from(range(n))
                if nx.is_connected(g) and not any(
                        nx.is_isomorphic(g, h) for h in found):
                    found.append(g)
            return
        # every vertex must still be able to reach degree 4
        for v in range(n):
            remaining = sum(1 for (a, b) in pairs[k:] if v in (a, b))
            if deg[v] + remaining < 4:
                return
        i, j = pairs[k]
        if deg[i] < 4 and deg[j] < 4:
            deg[i] += 1
            deg[j] += 1
            chosen.append((i, j))
            rec(k + 1)
            chosen.pop()
            deg[i] -= 1
            deg[j] -= 1
        rec(k + 1)

    rec(0)
    return found


def main():
    out = pathlib.Path(__file__).resolve().parents[1] / "src" / "c2lab" / "data"
    out.mkdir(parents=True, exist_ok=True)
    lines = []
    for n in range(5, 9):
        graphs = four_regular_graphs(n)
        print(f"n={n}: {len(graphs)} graphs (expected {EXPECTED[n]})")
        assert len(graphs) == EXPECTED[n], "corpus count mismatch"
        for g in graphs:
            edges = sorted(tuple(sorted(e)) for e in g.edges())
            lines.append(emit_graph6(Graph(n, edges)))
    path = out / "connected_4regular_le8.g6"
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} graphs to {path}")


if __name__ == "__main__":
    main()
