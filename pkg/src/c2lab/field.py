"""Arithmetic and dense linear algebra over the prime field F_p.

Everything here is exact integer arithmetic.  p is capped at 2^31 so all
intermediate products fit in 64 bits; there is no numerical tolerance
anywhere in the package.
"""

from __future__ import annotations

import numpy as np

from .errors import BudgetExceededError, InputError

P_MAX = 1 << 31

#: default ceiling on exhaustive point enumerations (p ** num_vars)
DEFAULT_EVAL_BUDGET = 1 << 28


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise InputError(f"{p!r} is not prime")
    if p > P_MAX:
        raise InputError(f"prime {p} exceeds the 2^31 cap")
    return p


def det_mod_p(matrix, p: int) -> int:
    """Determinant of a square integer matrix mod p by pivoted elimination.

    The 0x0 determinant is 1.
    """
    check_prime(p)
    a = np.array(matrix, dtype=np.int64) % p
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"matrix is not square: shape {a.shape}")
    m = a.shape[0]
    det = 1
    for col in range(m):
        pivot_row = -1
        for r in range(col, m):
            if a[r, col] % p:
                pivot_row = r
                break
        if pivot_row < 0:
            return 0
        if pivot_row != col:
            a[[col, pivot_row]] = a[[pivot_row, col]]
            det = (-det) % p
        pivot = int(a[col, col]) % p
        det = det * pivot % p
        inv = pow(pivot, p - 2, p)
        for r in range(col + 1, m):
            f = int(a[r, col]) * inv % p
            if f:
                a[r, col:] = (a[r, col:] - f * a[col, col:]) % p
    return det % p


def assignment_count(num_vars: int, p: int) -> int:
    return p ** num_vars


def all_assignments(num_vars: int, p: int, budget: int = DEFAULT_EVAL_BUDGET):
    """Yield every tuple in F_p^num_vars once, in lexicographic order.

    The stream is plain counting in base p with the first variable most
    significant, so it can be split into disjoint contiguous index chunks
    (see decode_assignment) for parallel consumption.
    """
    check_prime(p)
    total = assignment_count(num_vars, p)
    if total > budget:
        raise BudgetExceededError(total, budget)
    cur = [0] * num_vars
    while True:
        yield tuple(cur)
        i = num_vars - 1
        while i >= 0 and cur[i] == p - 1:
            cur[i] = 0
            i -= 1
        if i < 0:
            return
        cur[i] += 1


def decode_assignment(index: int, num_vars: int, p: int):
    """Assignment at a lexicographic position (first variable most significant)."""
    out = [0] * num_vars
    for i in range(num_vars - 1, -1, -1):
        index, out[i] = divmod(index, p)
    return tuple(out)
