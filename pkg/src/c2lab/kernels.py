"""Hot kernels: exhaustive zero counting of products of parametrized determinants.

A polynomial of interest is always evaluated as a product of determinants of
small integer matrices in which some entries are the enumerated variables.
`count_product_zeros` runs the full sweep over F_p^num_vars and counts the
assignments where the product vanishes.

Two backends produce identical counts:

* ``numba``  -- @njit kernel looping over assignment indices (default),
* ``numpy``  -- batched Gaussian elimination over chunks of assignments.

Select with the environment variable ``C2LAB_BACKEND=numba|numpy`` or the
``backend=`` argument.  ``bench/benchmark_backends.py`` compares the two.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceededError, InputError
from .field import DEFAULT_EVAL_BUDGET, check_prime

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dep, but stay usable
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f
        return wrap if not (args and callable(args[0])) else args[0]


CHUNK = 1 << 13


@dataclass(frozen=True)
class MatrixTemplate:
    """Square integer matrix with variable slots.

    base: (m, m) int64 array, constant entries already reduced mod p.
    slots: sequence of (row, col, var_index); the slot entry is replaced by
    the value of that variable at evaluation time.
    """

    base: np.ndarray
    slots: tuple

    @property
    def size(self):
        return self.base.shape[0]


def active_backend(override: str | None = None) -> str:
    name = override or os.environ.get("C2LAB_BACKEND", "")
    if name:
        if name not in ("numba", "numpy"):
            raise InputError(f"unknown backend {name!r}; use 'numba' or 'numpy'")
        if name == "numba" and not HAVE_NUMBA:
            raise InputError("numba backend requested but numba is not importable")
        return name
    return "numba" if HAVE_NUMBA else "numpy"


def _pack(templates, p):
    """Pad all templates to a common size (identity padding keeps the det)."""
    m = max(1, max(t.size for t in templates))
    n_t = len(templates)
    bases = np.zeros((n_t, m, m), dtype=np.int64)
    slot_rows = []
    for ti, t in enumerate(templates):
        k = t.size
        bases[ti, :k, :k] = np.asarray(t.base, dtype=np.int64) % p
        for i in range(k, m):
            bases[ti, i, i] = 1
        for (r, c, v) in t.slots:
            slot_rows.append((ti, r, c, v))
    if slot_rows:
        slots = np.array(slot_rows, dtype=np.int64)
    else:
        slots = np.zeros((0, 4), dtype=np.int64)
    return bases, slots


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

@njit(cache=True)
def _det_mod_p_jit(a, m, p):
    det = 1
    for col in range(m):
        piv = -1
        for r in range(col, m):
            if a[r, col] % p != 0:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != col:
            for c in range(col, m):
                tmp = a[col, c]
                a[col, c] = a[piv, c]
                a[piv, c] = tmp
            det = (p - det) % p
        pivot = a[col, col] % p
        det = det * pivot % p
        # modular inverse by Fermat
        inv = 1
        b = pivot
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * b % p
            b = b * b % p
            e >>= 1
        for r in range(col + 1, m):
            f = (a[r, col] % p) * inv % p
            if f:
                for c in range(col, m):
                    a[r, c] = (a[r, c] - f * a[col, c]) % p
    return det % p


@njit(cache=True)
def _count_zeros_jit(bases, slots, num_vars, p, start, end):
    n_t = bases.shape[0]
    m = bases.shape[1]
    work = np.empty((m, m), dtype=np.int64)
    digits = np.empty(num_vars, dtype=np.int64)
    count = 0
    for idx in range(start, end):
        x = idx
        for i in range(num_vars - 1, -1, -1):
            digits[i] = x % p
            x //= p
        prod = 1
        for ti in range(n_t):
            for r in range(m):
                for c in range(m):
                    work[r, c] = bases[ti, r, c]
            for s in range(slots.shape[0]):
                if slots[s, 0] == ti:
                    work[slots[s, 1], slots[s, 2]] = digits[slots[s, 3]]
            prod = prod * _det_mod_p_jit(work, m, p) % p
            if prod == 0:
                break
        if prod == 0:
            count += 1
    return count


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

def _pow_mod_vec(base, exp, p):
    out = np.ones_like(base)
    b = base % p
    e = exp
    while e > 0:
        if e & 1:
            out = out * b % p
        b = b * b % p
        e >>= 1
    return out


def _batch_det(a, p):
    """Determinants mod p of a (B, m, m) int64 batch; a is clobbered."""
    batch, m, _ = a.shape
    det = np.ones(batch, dtype=np.int64)
    bidx = np.arange(batch)
    for col in range(m):
        nz = a[:, col:, col] % p != 0
        has = nz.any(axis=1)
        piv_off = nz.argmax(axis=1)
        det[~has] = 0
        rows = col + np.where(has, piv_off, 0)
        tmp = a[bidx, rows, :].copy()
        a[bidx, rows, :] = a[bidx, col, :]
        a[bidx, col, :] = tmp
        swapped = has & (piv_off > 0)
        det[swapped] = (-det[swapped]) % p
        pivot = np.where(has, a[:, col, col] % p, 1)
        det = det * pivot % p
        inv = _pow_mod_vec(pivot, p - 2, p)
        factor = (a[:, col + 1:, col] % p) * inv[:, None] % p
        a[:, col + 1:, col:] = (
            a[:, col + 1:, col:] - factor[:, :, None] * a[:, col, col:][:, None, :]
        ) % p
    return det % p


def _count_zeros_numpy(bases, slots, num_vars, p, start, end):
    n_t = bases.shape[0]
    m = bases.shape[1]
    count = 0
    for lo in range(start, end, CHUNK):
        hi = min(lo + CHUNK, end)
        idx = np.arange(lo, hi, dtype=np.int64)
        digits = np.empty((hi - lo, num_vars), dtype=np.int64)
        x = idx.copy()
        for i in range(num_vars - 1, -1, -1):
            digits[:, i] = x % p
            x //= p
        prod = np.ones(hi - lo, dtype=np.int64)
        for ti in range(n_t):
            a = np.broadcast_to(bases[ti], (hi - lo, m, m)).copy()
            mask = slots[:, 0] == ti
            for (_, r, c, v) in slots[mask]:
                a[:, r, c] = digits[:, v]
            prod = prod * _batch_det(a, p) % p
        count += int(np.count_nonzero(prod == 0))
    return count


# ---------------------------------------------------------------------------
# public entry point
# ---------------------------------------------------------------------------

def count_product_zeros(templates, num_vars: int, p: int,
                        budget: int = DEFAULT_EVAL_BUDGET,
                        backend: str | None = None) -> int:
    """Count assignments in F_p^num_vars where the product of dets vanishes."""
    check_prime(p)
    total = p ** num_vars
    if total > budget:
        raise BudgetExceededError(total, budget)
    bases, slots = _pack(templates, p)
    name = active_backend(backend)
    if name == "numba":
        return int(_count_zeros_jit(bases, slots, num_vars, p, 0, total))
    return _count_zeros_numpy(bases, slots, num_vars, p, 0, total)


def product_values(templates, assignments, p: int) -> np.ndarray:
    """Product of dets at each given assignment (small helper for tests/CLI)."""
    check_prime(p)
    bases, slots = _pack(templates, p)
    rows = np.array([list(a) for a in assignments], dtype=np.int64) % p
    if rows.ndim == 1:
        rows = rows.reshape(len(rows), 0)
    n_t = bases.shape[0]
    m = bases.shape[1]
    prod = np.ones(rows.shape[0], dtype=np.int64)
    for ti in range(n_t):
        a = np.broadcast_to(bases[ti], (rows.shape[0], m, m)).copy()
        for (_, r, c, v) in slots[slots[:, 0] == ti]:
            a[:, r, c] = rows[:, v]
        prod = prod * _batch_det(a, p) % p
    return prod
