"""Compare the numba and numpy point-counting backends.

Counts the zeros of the Kirchhoff polynomial of decompletions of small
4-regular graphs over F_p with both backends and prints a timing table.
The counts must agree exactly; a mismatch aborts the run.

Run from the repository root:  python3 bench/benchmark_backends.py
"""

import time

from c2lab.field import DEFAULT_EVAL_BUDGET
from c2lab.graph import circulant, complete_graph, decomplete, octahedron
from c2lab.kernels import count_product_zeros
from c2lab.polynomials import KirchhoffHandle

CASES = [
    ("K5 - v, p=2", decomplete(complete_graph(5), 4).graph, 2),
    ("K5 - v, p=3", decomplete(complete_graph(5), 4).graph, 3),
    ("octahedron - v, p=2", decomplete(octahedron(), 5).graph, 2),
    ("octahedron - v, p=3", decomplete(octahedron(), 5).graph, 3),
    ("C7(1,2) - v, p=3", decomplete(circulant(7, (1, 2)), 6).graph, 3),
    ("C8(1,3) - v, p=2", decomplete(circulant(8, (1, 3)), 7).graph, 2),
]


def run_case(g, p, backend):
    handle = KirchhoffHandle(g)
    templates = handle.templates(p)
    start = time.perf_counter()
    count = count_product_zeros(templates, len(handle.variables), p,
                                DEFAULT_EVAL_BUDGET, backend)
    return count, time.perf_counter() - start


def main():
    # warm up the JIT so compilation time is not billed to the first case
    run_case(CASES[0][1], 2, "numba")
    print(f"{'case':<22} {'points':>10} {'numba':>10} {'numpy':>10} "
          f"{'speedup':>8}")
    for name, g, p in CASES:
        points = p ** g.num_edges
        c1, t1 = run_case(g, p, "numba")
        c2, t2 = run_case(g, p, "numpy")
        if c1 != c2:
            raise SystemExit(
                f"backend mismatch on {name}: numba {c1} != numpy {c2}")
        print(f"{name:<22} {points:>10} {t1:>9.3f}s {t2:>9.3f}s "
              f"{t2 / t1:>7.1f}x")


if __name__ == "__main__":
    main()
